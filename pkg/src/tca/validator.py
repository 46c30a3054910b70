"""Schema and convention checks over parsed records and files.

Codes starting with E are hard violations and block export; W codes
flag conventions a coder may knowingly depart from.  Output order is
deterministic: per-record findings in slot order, then cross-record
findings in file order.
"""

from __future__ import annotations

import re

from . import calendar as cal
from .diagnostics import (
    Diagnostic,
    E_LABEL,
    E_ORDER,
    E_QUAL_NULL,
    E_VOCAB,
    E_WDAY,
    ERROR,
    W_ALT_BASE,
    W_END_COMPLETE,
    W_HOUR_AMPM,
    W_QUAL_MANY,
    WARNING,
)
from .fileformat import AnnotationFile, try_parse_annotation_file
from .model import (
    COMPONENT_ATTRS,
    DialogDate,
    HourSpec,
    Month,
    QualifiedField,
    SLOT_KINDS,
    SLOT_NAMES,
    TemporalRecord,
    TimePoint,
    Weekday,
    is_valid_token,
)
from .resolver import OPAQUE_QUALIFIERS, complete_end_point, resolve_year

# A clock reading with an am/pm tail, e.g. "9am" or "12:15 p.m.".
_AMPM_RE = re.compile(r"(1[0-2]|[1-9])(:[0-5][0-9])?\s*[ap]\.?m\.?\Z", re.IGNORECASE)

# Time-of-day values that pin a reading to one half of the clock dial.
_CLOCK_WINDOWS = ("morning", "afternoon", "evening")


def _field_diagnostics(slot: str, kind: str, f: QualifiedField,
                       label: str) -> list[Diagnostic]:
    out = []
    for q in f.qualifiers:
        if not is_valid_token("qualifier", q):
            out.append(Diagnostic(E_VOCAB, ERROR, f"{q!r} is not a qualifier",
                                  label=label, field_path=slot))
    if f.value is not None and not is_valid_token(kind, f.value):
        out.append(Diagnostic(E_VOCAB, ERROR,
                              f"{f.value!r} is not a {kind} token",
                              label=label, field_path=slot))
        if kind == "hour" and _AMPM_RE.match(f.value):
            out.append(Diagnostic(W_HOUR_AMPM, WARNING,
                                  "am/pm belongs in the time-of-day field",
                                  label=label, field_path=slot))
    if f.value is None and f.qualifiers:
        out.append(Diagnostic(E_QUAL_NULL, ERROR,
                              "qualifiers on a null field",
                              label=label, field_path=slot))
    if len(f.qualifiers) > 1:
        out.append(Diagnostic(W_QUAL_MANY, WARNING,
                              f"{len(f.qualifiers)} qualifiers on one field",
                              label=label, field_path=slot))
    return out


def _plain(f: QualifiedField, kind: str) -> str | None:
    if f.value is None or f.has_qualifier(*OPAQUE_QUALIFIERS):
        return None
    return f.value if is_valid_token(kind, f.value) else None


def _check_weekday(point: TimePoint, dd: DialogDate, prefix: str,
                   label: str) -> list[Diagnostic]:
    """E-WDAY: the stated date must exist and agree with the stated weekday."""
    month_token = _plain(point.month, "month")
    day_token = _plain(point.date, "date")
    if month_token is None or day_token is None:
        return []
    month, day = Month.from_token(month_token), int(day_token)
    year = resolve_year(dd, month)
    if day > cal.days_in_month(year, month):
        return [Diagnostic(E_WDAY, ERROR,
                           f"there is no {month_token} {day} in {year}",
                           label=label, field_path=f"{prefix}Date")]
    wd_token = _plain(point.weekday, "weekday")
    if wd_token is None:
        return []
    actual = cal.weekday_of(cal.CalendarDate(year, month, day))
    if Weekday.from_token(wd_token) != actual:
        return [Diagnostic(E_WDAY, ERROR,
                           f"{month_token} {day} falls on {actual.token},"
                           f" not {wd_token}",
                           label=label, field_path=f"{prefix}WeekDay")]
    return []


def _minute_of_day(hour: HourSpec, time_of_day: str) -> int:
    base = (hour.hour % 12) * 60 + (hour.minute or 0)
    if time_of_day == "morning":
        return base
    return base + 12 * 60  # afternoon/evening read as PM


def _order_opaque(f: QualifiedField) -> bool:
    return f.has_qualifier(*OPAQUE_QUALIFIERS)


def _check_order(r: TemporalRecord, dd: DialogDate) -> list[Diagnostic]:
    """E-ORDER: compare start and end at the finest level both sides fix.

    Months compare by distance forward from the dialog month, dates by
    day number, clock times by minute of day; morning reads as AM and
    afternoon/evening as PM.  The comparison stops as soon as one side
    is null, hedged, or outside the vocabulary at the current level, and
    the clock level also needs both time-of-day values to name a clock
    window (meals and all-day set no clock bound).
    """
    s, e = r.start, r.end
    label = r.label.text
    diag = [Diagnostic(E_ORDER, ERROR, "start time is after end time",
                       label=label, field_path="record")]

    if any(_order_opaque(f) for f in (s.month, e.month, s.date, e.date)):
        return []
    if not (s.month.is_null and e.month.is_null):
        sm, em = _plain(s.month, "month"), _plain(e.month, "month")
        if sm is None or em is None:
            return []
        s_rank = (Month.from_token(sm) - dd.month) % 12
        e_rank = (Month.from_token(em) - dd.month) % 12
        if s_rank > e_rank:
            return diag
        if s_rank < e_rank:
            return []

    if not (s.date.is_null and e.date.is_null):
        sd, ed = _plain(s.date, "date"), _plain(e.date, "date")
        if sd is None or ed is None:
            return []
        if int(sd) > int(ed):
            return diag
        if int(sd) < int(ed):
            return []

    if any(_order_opaque(f) for f in (s.hour, e.hour, s.time_of_day, e.time_of_day)):
        return []
    sh, eh = _plain(s.hour, "hour"), _plain(e.hour, "hour")
    stod, etod = _plain(s.time_of_day, "timeOfDay"), _plain(e.time_of_day, "timeOfDay")
    if None in (sh, eh) or stod not in _CLOCK_WINDOWS or etod not in _CLOCK_WINDOWS:
        return []
    if _minute_of_day(HourSpec.from_token(sh), stod) > \
            _minute_of_day(HourSpec.from_token(eh), etod):
        return diag
    return []


def _check_end_completion(r: TemporalRecord) -> list[Diagnostic]:
    completed = complete_end_point(r.start, r.end)
    if completed == r.end:
        return []
    slot = next(f"E{n}" for n, attr in
                zip(("WeekDay", "Month", "Date", "HourSpec", "TimeOfDay"),
                    COMPONENT_ATTRS)
                if getattr(completed, attr) != getattr(r.end, attr))
    return [Diagnostic(W_END_COMPLETE, WARNING,
                       "end point reuses less of the start point than it could",
                       label=r.label.text, field_path=slot)]


def validate_record(r: TemporalRecord, dd: DialogDate) -> list[Diagnostic]:
    """All per-record findings, in slot order then record-level order."""
    out: list[Diagnostic] = []
    for slot, kind, f in zip(SLOT_NAMES, SLOT_KINDS, r.slots()):
        out.extend(_field_diagnostics(slot, kind, f, r.label.text))
    out.extend(_check_weekday(r.start, dd, "S", r.label.text))
    out.extend(_check_weekday(r.end, dd, "E", r.label.text))
    out.extend(_check_order(r, dd))
    out.extend(_check_end_completion(r))
    return out


def _conjunct_family_diagnostics(records) -> list[Diagnostic]:
    families: dict[tuple[str, str], list[tuple[int, str]]] = {}
    for r in records:
        label = r.label
        if label.is_well_formed and label.conjunct is not None:
            key = (label.base, label.conjunct.kind)
            families.setdefault(key, []).append((label.conjunct.index, label.text))
    out = []
    for (base, kind), members in families.items():
        indices = sorted(i for i, _ in members)
        if indices == list(range(1, len(indices) + 1)) and len(indices) >= 2:
            continue
        first = min(members)[1]
        out.append(Diagnostic(
            W_ALT_BASE, WARNING,
            f"_{kind} family of {base!r} should number two or more"
            f" records _{kind}1, _{kind}2, ... without gaps",
            label=first))
    return out


def validate_file(f: AnnotationFile) -> list[Diagnostic]:
    """Per-record findings plus label bookkeeping across the file."""
    out: list[Diagnostic] = []
    for r in f.records:
        out.extend(validate_record(r, f.dialog_date))

    seen: set[str] = set()
    for r in f.records:
        if r.label.text in seen:
            out.append(Diagnostic(E_LABEL, ERROR, "duplicate label",
                                  label=r.label.text))
        seen.add(r.label.text)

    for r in f.records:
        if not r.label.is_well_formed:
            out.append(Diagnostic(E_LABEL, ERROR,
                                  "label is not a number, optional letters,"
                                  " and an optional _altN/_andN suffix",
                                  label=r.label.text))
    for prev, cur in zip(f.records, f.records[1:]):
        if not (prev.label.is_well_formed and cur.label.is_well_formed):
            continue
        if prev.label.text != cur.label.text and prev.label.sort_key() > cur.label.sort_key():
            out.append(Diagnostic(E_LABEL, ERROR,
                                  f"label out of order after {prev.label.text!r}",
                                  label=cur.label.text))

    out.extend(_conjunct_family_diagnostics(f.records))
    return out


def check_text(text: str) -> tuple[AnnotationFile | None, list[Diagnostic]]:
    """Parse then validate; parse failures already are diagnostics."""
    parsed, diags = try_parse_annotation_file(text)
    if parsed is None:
        return None, diags
    return parsed, validate_file(parsed)
