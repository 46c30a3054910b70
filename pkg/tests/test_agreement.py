import pytest
from hypothesis import given, strategies as st

from tca.agreement import (
    AgreementReport,
    DateMismatchError,
    GoldScore,
    cohens_kappa,
    compare_files,
    format_gold_score,
    format_report,
    score_against_gold,
)
from tca.fileformat import AnnotationFile
from tca.model import (
    DialogDate,
    Month,
    SLOT_NAMES,
    TemporalRecord,
    TimePoint,
    parse_label,
)

from conftest import weekday_split_files
from _oracles import cohens_kappa_oracle

MARCH_1993 = DialogDate(1993, Month.MARCH, 5)


def coding(*starts, date=MARCH_1993, first_label=1):
    records = tuple(
        TemporalRecord(parse_label(str(first_label + i)), point or TimePoint())
        for i, point in enumerate(starts))
    return AnnotationFile(date, records)


class TestCohensKappa:
    def test_worked_example(self):
        pairs = ([("monday", "monday")] * 8 + [("monday", "tuesday")] * 2
                 + [("tuesday", "monday")] + [("tuesday", "tuesday")] * 9)
        assert cohens_kappa(pairs) == pytest.approx(0.7, abs=1e-12)

    def test_matches_brute_force_recomputation(self):
        pairs = ([("a", "a")] * 5 + [("a", "b")] * 3 + [("b", "a")] * 2
                 + [("b", "b")] * 7 + [("c", "c")] * 2 + [("c", "a")])
        assert cohens_kappa(pairs) == pytest.approx(
            cohens_kappa_oracle(pairs), abs=1e-12)

    def test_empty_input(self):
        assert cohens_kappa([]) is None

    def test_single_category_on_either_side(self):
        assert cohens_kappa([("x", "x"), ("x", "x")]) is None
        assert cohens_kappa([("x", "x"), ("x", "y")]) is None
        assert cohens_kappa([("x", "x"), ("y", "x")]) is None

    def test_perfect_agreement_over_two_categories(self):
        assert cohens_kappa([("x", "x"), ("y", "y")]) == pytest.approx(1.0)

    def test_systematic_disagreement_goes_negative(self):
        assert cohens_kappa([("x", "y"), ("y", "x")]) == pytest.approx(-1.0)

    @given(st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from("abc")),
                    min_size=1, max_size=60))
    def test_never_exceeds_one_and_matches_the_oracle(self, pairs):
        k = cohens_kappa(pairs)
        oracle = cohens_kappa_oracle(pairs)
        if k is None:
            assert oracle is None
        else:
            assert k == pytest.approx(oracle, abs=1e-12)
            assert k <= 1.0 + 1e-12


class TestCompareFiles:
    def test_weekday_split_fixture(self):
        a, b = weekday_split_files()
        report = compare_files(a, b)
        slot = report.per_field["SWeekDay"]
        assert slot.observed == pytest.approx(0.85, abs=1e-9)
        assert slot.kappa == pytest.approx(0.7, abs=1e-9)
        assert report.aligned_count == 20
        assert report.unaligned_labels == ()
        assert report.per_record_exact == pytest.approx(0.85, abs=1e-9)

    def test_constant_slots_have_no_kappa(self):
        a, b = weekday_split_files()
        report = compare_files(a, b)
        for slot in SLOT_NAMES:
            if slot == "SWeekDay":
                continue
            assert report.per_field[slot].observed == 1.0
            assert report.per_field[slot].kappa is None

    def test_self_comparison_is_perfect(self, appendix_file):
        report = compare_files(appendix_file, appendix_file)
        assert report.aligned_count == 41
        assert report.per_record_exact == 1.0
        for slot in SLOT_NAMES:
            assert report.per_field[slot].observed == 1.0
            # Every slot of this file uses at least two categories.
            assert report.per_field[slot].kappa == pytest.approx(1.0)

    def test_statistics_are_symmetric(self):
        a, b = weekday_split_files()
        ab, ba = compare_files(a, b), compare_files(b, a)
        for slot in SLOT_NAMES:
            assert ab.per_field[slot].observed == ba.per_field[slot].observed
            assert ab.per_field[slot].kappa == ba.per_field[slot].kappa
        assert ab.per_record_exact == ba.per_record_exact

    def test_qualifier_spelling_is_part_of_the_category(self):
        a = coding(TimePoint.of(time_of_day=("late", "afternoon")))
        b = coding(TimePoint.of(time_of_day="afternoon"))
        report = compare_files(a, b)
        assert report.per_field["STimeOfDay"].observed == 0.0

    def test_alignment_is_by_label_not_position(self):
        a = coding(TimePoint.of(weekday="monday"), TimePoint.of(weekday="friday"))
        b = AnnotationFile(MARCH_1993, tuple(reversed(
            coding(TimePoint.of(weekday="friday"), TimePoint.of(weekday="monday")).records)))
        # b lists record 2 first, but label "1" still pairs with label "1".
        report = compare_files(a, b)
        assert report.per_field["SWeekDay"].observed == 0.0

    def test_unaligned_labels_are_reported_from_both_sides(self):
        a = coding(None, None, None)                      # labels 1, 2, 3
        b = coding(None, None, None, first_label=2)       # labels 2, 3, 4
        report = compare_files(a, b)
        assert report.aligned_count == 2
        assert report.unaligned_labels == ("1", "4")

    def test_no_overlap_at_all(self):
        report = compare_files(coding(None), coding(None, first_label=9))
        assert report == AgreementReport({}, None, 0, ("1", "9"))

    def test_dialog_dates_must_match(self):
        with pytest.raises(DateMismatchError):
            compare_files(coding(None),
                          coding(None, date=DialogDate(1993, Month.MARCH, 6)))


class TestGoldScoring:
    def test_self_score_is_perfect(self, appendix_file):
        filled = sum(1 for r in appendix_file.records
                     for f in r.slots() if f.value is not None)
        score = score_against_gold(appendix_file, appendix_file)
        assert (score.true_positives, score.false_positives,
                score.false_negatives) == (filled, 0, 0)
        assert score.precision == score.recall == score.f1 == 1.0

    def test_all_null_prediction(self, appendix_file):
        blank = AnnotationFile(
            appendix_file.dialog_date,
            tuple(TemporalRecord(r.label) for r in appendix_file.records))
        score = score_against_gold(blank, appendix_file)
        assert score.true_positives == 0
        assert score.false_positives == 0
        assert score.false_negatives > 0
        assert score.precision is None
        assert score.recall == 0.0
        assert score.f1 is None

    def test_partial_credit_is_per_slot(self):
        gold = coding(TimePoint.of(weekday="friday", month="march", date="5"))
        pred = coding(TimePoint.of(weekday="friday", month="march", date="8"))
        score = score_against_gold(pred, gold)
        assert (score.true_positives, score.false_positives,
                score.false_negatives) == (2, 1, 1)
        assert score.precision == pytest.approx(2 / 3)
        assert score.recall == pytest.approx(2 / 3)
        assert score.f1 == pytest.approx(2 / 3)

    def test_qualifiers_must_match_exactly(self):
        gold = coding(TimePoint.of(time_of_day="lunch"))
        pred = coding(TimePoint.of(time_of_day=("after", "lunch")))
        score = score_against_gold(pred, gold)
        assert (score.true_positives, score.false_positives,
                score.false_negatives) == (0, 1, 1)

    def test_missing_and_extra_records(self):
        gold = coding(TimePoint.of(weekday="friday"))
        pred = coding(TimePoint.of(weekday="friday"), first_label=2)
        score = score_against_gold(pred, gold)
        assert (score.true_positives, score.false_positives,
                score.false_negatives) == (0, 1, 1)

    def test_null_prediction_of_a_filled_slot_is_only_a_miss(self):
        gold = coding(TimePoint.of(weekday="friday", month="march"))
        pred = coding(TimePoint.of(weekday="friday"))
        score = score_against_gold(pred, gold)
        assert (score.true_positives, score.false_positives,
                score.false_negatives) == (1, 0, 1)

    def test_empty_score_has_no_ratios(self):
        score = GoldScore(0, 0, 0)
        assert score.precision is None and score.recall is None and score.f1 is None

    def test_dialog_dates_must_match(self):
        with pytest.raises(DateMismatchError):
            score_against_gold(coding(None),
                               coding(None, date=DialogDate(1994, Month.MARCH, 5)))

    def test_json_shape(self):
        data = GoldScore(3, 1, 1).to_json()
        assert data == {"truePositives": 3, "falsePositives": 1,
                        "falseNegatives": 1, "precision": 0.75,
                        "recall": 0.75, "f1": 0.75}


class TestRendering:
    def test_report_lists_every_slot(self):
        a, b = weekday_split_files()
        text = format_report(compare_files(a, b))
        lines = text.splitlines()
        assert lines[0].split() == ["slot", "observed", "kappa"]
        for slot in SLOT_NAMES:
            assert any(line.startswith(slot) for line in lines)
        assert "0.850" in text and "0.700" in text
        assert "aligned records: 20" in text

    def test_absent_kappa_renders_as_dash(self):
        a, b = weekday_split_files()
        text = format_report(compare_files(a, b))
        smonth = next(line for line in text.splitlines() if line.startswith("SMonth"))
        assert smonth.split() == ["SMonth", "1.000", "-"]

    def test_empty_report_renders(self):
        text = format_report(compare_files(coding(None), coding(None, first_label=5)))
        assert "aligned records: 0" in text
        assert "unaligned labels: 1, 5" in text

    def test_gold_score_rendering(self, appendix_file):
        text = format_gold_score(score_against_gold(appendix_file, appendix_file))
        assert "precision: 1.000" in text
        assert "recall:    1.000" in text

    def test_report_json_shape(self):
        a, b = weekday_split_files()
        data = compare_files(a, b).to_json()
        assert set(data) == {"perField", "perRecordExact", "alignedCount",
                             "unalignedLabels"}
        assert data["perField"]["SWeekDay"] == {
            "observedAgreement": pytest.approx(0.85),
            "kappa": pytest.approx(0.7)}
