"""Agreement statistics between two annotations of the same dialog.

Records pair up by exact label text.  Each of the ten slots is scored
separately: observed agreement is the fraction of aligned pairs whose
(qualifiers, value) match exactly, with null equal to null, and Cohen's
kappa corrects that for chance using both coders' marginal frequencies.
Kappa is omitted for a slot when either coder used a single category
throughout, where chance correction is undefined.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .fileformat import AnnotationFile
from .model import QualifiedField, SLOT_NAMES


class DateMismatchError(ValueError):
    """The two files do not annotate the same dialog date."""


@dataclass(frozen=True)
class SlotAgreement:
    observed: float
    kappa: float | None

    def to_json(self) -> dict:
        return {"observedAgreement": self.observed, "kappa": self.kappa}


@dataclass(frozen=True)
class AgreementReport:
    per_field: dict[str, SlotAgreement]
    per_record_exact: float | None
    aligned_count: int
    unaligned_labels: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "perField": {slot: sa.to_json() for slot, sa in self.per_field.items()},
            "perRecordExact": self.per_record_exact,
            "alignedCount": self.aligned_count,
            "unalignedLabels": list(self.unaligned_labels),
        }


@dataclass(frozen=True)
class GoldScore:
    true_positives: int
    false_positives: int
    false_negatives: int

    @property
    def precision(self) -> float | None:
        denom = self.true_positives + self.false_positives
        return self.true_positives / denom if denom else None

    @property
    def recall(self) -> float | None:
        denom = self.true_positives + self.false_negatives
        return self.true_positives / denom if denom else None

    @property
    def f1(self) -> float | None:
        p, r = self.precision, self.recall
        if p is None or r is None or p + r == 0:
            return None
        return 2 * p * r / (p + r)

    def to_json(self) -> dict:
        return {
            "truePositives": self.true_positives,
            "falsePositives": self.false_positives,
            "falseNegatives": self.false_negatives,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


def _category(f: QualifiedField) -> str:
    # Qualifier order is significant: "(late, afternoon)" is one spelling.
    return f.text


def cohens_kappa(pairs: list[tuple[str, str]]) -> float | None:
    """Chance-corrected agreement over category pairs; None when either
    side is constant (no chance model) or chance agreement is total."""
    if not pairs:
        return None
    a_counts = Counter(a for a, _ in pairs)
    b_counts = Counter(b for _, b in pairs)
    if len(a_counts) < 2 or len(b_counts) < 2:
        return None
    n = len(pairs)
    po = sum(1 for a, b in pairs if a == b) / n
    pe = sum((a_counts[c] / n) * (b_counts[c] / n) for c in a_counts)
    if pe == 1.0:
        return None
    return (po - pe) / (1.0 - pe)


def _aligned(a: AnnotationFile, b: AnnotationFile):
    by_label_b = {r.label.text: r for r in b.records}
    pairs = [(ra, by_label_b[ra.label.text])
             for ra in a.records if ra.label.text in by_label_b]
    a_labels = {r.label.text for r in a.records}
    unaligned = [r.label.text for r in a.records if r.label.text not in by_label_b]
    unaligned += [r.label.text for r in b.records if r.label.text not in a_labels]
    return pairs, tuple(unaligned)


def compare_files(a: AnnotationFile, b: AnnotationFile) -> AgreementReport:
    """Inter-coder agreement between two files for the same dialog."""
    if a.dialog_date != b.dialog_date:
        raise DateMismatchError(
            f"dialog dates differ: {a.dialog_date.iso} vs {b.dialog_date.iso}")
    pairs, unaligned = _aligned(a, b)
    if not pairs:
        return AgreementReport({}, None, 0, unaligned)

    per_field: dict[str, SlotAgreement] = {}
    for i, slot in enumerate(SLOT_NAMES):
        cat_pairs = [(_category(ra.slots()[i]), _category(rb.slots()[i]))
                     for ra, rb in pairs]
        observed = sum(1 for x, y in cat_pairs if x == y) / len(cat_pairs)
        per_field[slot] = SlotAgreement(observed, cohens_kappa(cat_pairs))

    exact = sum(1 for ra, rb in pairs
                if all(x == y for x, y in zip(ra.slots(), rb.slots())))
    return AgreementReport(per_field, exact / len(pairs), len(pairs), unaligned)


def score_against_gold(pred: AnnotationFile, gold: AnnotationFile) -> GoldScore:
    """Precision/recall of predicted non-null slots against a reference.

    A non-null predicted slot is correct only when the gold slot is
    non-null and identical, qualifiers included.  Records without a
    counterpart contribute all their non-null slots as misses."""
    if pred.dialog_date != gold.dialog_date:
        raise DateMismatchError(
            f"dialog dates differ: {pred.dialog_date.iso} vs {gold.dialog_date.iso}")
    gold_by_label = {r.label.text: r for r in gold.records}
    pred_by_label = {r.label.text: r for r in pred.records}

    tp = fp = fn = 0
    for rp in pred.records:
        rg = gold_by_label.get(rp.label.text)
        for i, fpred in enumerate(rp.slots()):
            if fpred.value is None:
                continue
            fgold = rg.slots()[i] if rg is not None else None
            if fgold is not None and fgold.value is not None and fgold == fpred:
                tp += 1
            else:
                fp += 1
    for rg in gold.records:
        rp = pred_by_label.get(rg.label.text)
        for i, fgold in enumerate(rg.slots()):
            if fgold.value is None:
                continue
            fpred = rp.slots()[i] if rp is not None else None
            if not (fpred is not None and fpred.value is not None and fpred == fgold):
                fn += 1
    return GoldScore(tp, fp, fn)


def _fmt(x: float | None) -> str:
    return f"{x:.3f}" if x is not None else "-"


def format_report(report: AgreementReport) -> str:
    """Aligned-column text rendering of an AgreementReport."""
    width = max(len(s) for s in SLOT_NAMES)
    lines = [f"{'slot'.ljust(width)}  observed  kappa"]
    for slot in SLOT_NAMES:
        sa = report.per_field.get(slot)
        if sa is None:
            lines.append(f"{slot.ljust(width)}  {'-':>8}  {'-':>5}")
        else:
            lines.append(f"{slot.ljust(width)}  {_fmt(sa.observed):>8}"
                         f"  {_fmt(sa.kappa):>5}")
    lines.append(f"aligned records: {report.aligned_count}")
    lines.append(f"exact record agreement: {_fmt(report.per_record_exact)}")
    if report.unaligned_labels:
        lines.append("unaligned labels: " + ", ".join(report.unaligned_labels))
    return "\n".join(lines)


def format_gold_score(score: GoldScore) -> str:
    return "\n".join([
        f"true positives:  {score.true_positives}",
        f"false positives: {score.false_positives}",
        f"false negatives: {score.false_negatives}",
        f"precision: {_fmt(score.precision)}",
        f"recall:    {_fmt(score.recall)}",
        f"f1:        {_fmt(score.f1)}",
    ])
