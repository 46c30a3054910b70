"""Inference rules that fill null fields from the dialog date and from
records coded earlier in the dialog.

Two kinds of output are distinguished.  Forced completions are plain
calendar arithmetic (a date fixes its weekday); they are applied to the
returned point and also reported as suggestions so a caller can show
what changed.  Contextual suggestions (time-of-day readings, dates
carried forward from recent records) are only reported; a human has to
accept them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from . import calendar as cal
from .model import (
    COMPONENT_ATTRS,
    DialogDate,
    HourSpec,
    Month,
    QualifiedField,
    TemporalRecord,
    TimePoint,
    Weekday,
    is_valid_token,
)

FORCED = "forced"
CONTEXTUAL = "contextual"

RULE_WEEKDAY_FROM_DATE = "weekday-from-date"
RULE_MONTH_NEAREST_FUTURE = "month-nearest-future"
RULE_END_COMPLETION = "end-completion"
RULE_TIME_OF_DAY_DEFAULT = "time-of-day-default"
RULE_TIME_OF_DAY_CONTEXT = "time-of-day-context"
RULE_CARRY_FORWARD = "carry-forward"

# Qualifiers that leave a field deliberately unresolvable ("after the
# 25th" names no single day, so no weekday can be derived from it).
OPAQUE_QUALIFIERS = ("before", "after")

# How far back contextual rules look; dialog focus is local.
CONTEXT_WINDOW = 10

# Hours a clock reading could plausibly name inside each time-of-day
# window (12-hour dial, working day).  Used only for context overrides.
_WINDOW_HOURS = {
    "morning": frozenset({7, 8, 9, 10, 11}),
    "afternoon": frozenset({12, 1, 2, 3, 4, 5, 6}),
    "evening": frozenset({6, 7, 8, 9, 10, 11}),
}


@dataclass(frozen=True)
class Suggestion:
    """A proposed value for one field of one time point."""

    field_path: str
    proposed_value: str
    rule: str
    confidence: str  # forced | contextual

    def to_json(self) -> dict:
        return {
            "fieldPath": self.field_path,
            "proposedValue": self.proposed_value,
            "rule": self.rule,
            "confidence": self.confidence,
        }


@dataclass(frozen=True)
class DialogContext:
    """What the coder may legitimately look at: the dialog date and the
    records already written for earlier utterances, in order."""

    dialog_date: DialogDate
    prior_records: tuple[TemporalRecord, ...] = ()

    @classmethod
    def of(cls, dialog_date: DialogDate, prior_records=()) -> "DialogContext":
        return cls(dialog_date, tuple(prior_records))


class InconsistentTimePointError(ValueError):
    """A stated weekday contradicts the stated month and date."""


# --- small token helpers -------------------------------------------------

def _plain_value(f: QualifiedField, kind: str) -> str | None:
    """The field's value when it is concrete: present, in-vocabulary, and
    not hedged by before/after."""
    if f.value is None or f.has_qualifier(*OPAQUE_QUALIFIERS):
        return None
    if not is_valid_token(kind, f.value):
        return None
    return f.value


def _fillable(f: QualifiedField) -> bool:
    return f.value is None and not f.qualifiers


def resolve_year(dialog_date: DialogDate, month: Month) -> int:
    """Records carry no year; take the dialog year, rolling over when the
    month cyclically precedes the dialog month (scheduling looks ahead)."""
    if month < dialog_date.month:
        return dialog_date.year + 1
    return dialog_date.year


def _real_date(dialog_date: DialogDate, month: Month, day: int) -> cal.CalendarDate | None:
    year = resolve_year(dialog_date, month)
    if day > cal.days_in_month(year, month):
        return None
    return cal.CalendarDate(year, month, day)


def nearest_future_month(dialog_date: DialogDate, day: int,
                         weekday: Weekday | None = None) -> Month | None:
    """First month, starting from the dialog month, where ``day`` lies on
    or after the dialog date (and falls on ``weekday`` when given).

    Only the next twelve months are considered: without a year field a
    month token cannot name anything further out.
    """
    for offset in range(12):
        month = Month((dialog_date.month - 1 + offset) % 12 + 1)
        d = _real_date(dialog_date, month, day)
        if d is None:
            continue
        if offset == 0 and day < dialog_date.day:
            continue
        if weekday is not None and cal.weekday_of(d) != weekday:
            continue
        return month
    return None


# --- forced completion ---------------------------------------------------

def complete_time_point(p: TimePoint, ctx: DialogContext) -> tuple[TimePoint, list[Suggestion]]:
    """Fill the null fields of ``p`` that calendar arithmetic determines.

    Non-null fields are never touched, and a field whose date or month
    carries before/after is left alone entirely.  A stated weekday that
    contradicts the stated month and date raises rather than picking a
    side.
    """
    suggestions: list[Suggestion] = []
    weekday_f, month_f, date_f = p.weekday, p.month, p.date

    blocked = (month_f.has_qualifier(*OPAQUE_QUALIFIERS)
               or date_f.has_qualifier(*OPAQUE_QUALIFIERS))
    day_token = _plain_value(date_f, "date")
    if blocked or day_token is None:
        return p, suggestions
    day = int(day_token)

    stated_weekday: Weekday | None = None
    wd_token = _plain_value(weekday_f, "weekday")
    if wd_token is not None:
        stated_weekday = Weekday.from_token(wd_token)

    month: Month | None = None
    month_token = _plain_value(month_f, "month")
    if month_token is not None:
        month = Month.from_token(month_token)
    elif _fillable(month_f):
        month = nearest_future_month(ctx.dialog_date, day, stated_weekday)
        if month is not None:
            month_f = QualifiedField((), month.token)
            suggestions.append(Suggestion("month", month.token,
                                          RULE_MONTH_NEAREST_FUTURE, FORCED))

    if month is not None:
        d = _real_date(ctx.dialog_date, month, day)
        if d is not None:
            actual = cal.weekday_of(d)
            if stated_weekday is None and _fillable(weekday_f):
                weekday_f = QualifiedField((), actual.token)
                suggestions.append(Suggestion("weekday", actual.token,
                                              RULE_WEEKDAY_FROM_DATE, FORCED))
            elif stated_weekday is not None and stated_weekday != actual:
                raise InconsistentTimePointError(
                    f"{month.token} {day} falls on {actual.token},"
                    f" not {stated_weekday.token}")

    return TimePoint(weekday_f, month_f, date_f, p.hour, p.time_of_day), suggestions


def _date_level_opaque(p: TimePoint) -> bool:
    return (p.weekday.has_qualifier(*OPAQUE_QUALIFIERS)
            or p.month.has_qualifier(*OPAQUE_QUALIFIERS)
            or p.date.has_qualifier(*OPAQUE_QUALIFIERS))


def complete_end_point(start: TimePoint, end: TimePoint) -> TimePoint:
    """Reuse as much of the start point as an unspecified end point allows.

    An all-null end point takes the start's weekday, month, and date; the
    clock fields stay null, except that an all-day start keeps all-day on
    both sides.  A partially filled end point only has its null weekday,
    month, and date filled in.  Hedged (before/after) date fields on
    either side switch completion off: "after the 25th" bounds nothing.
    """
    if start.is_null:
        return end
    if _date_level_opaque(start) or _date_level_opaque(end):
        return end

    if end.is_null:
        new_end = TimePoint(start.weekday, start.month, start.date)
        if start.time_of_day.value == "all-day":
            new_end = new_end.with_field("time_of_day", start.time_of_day)
        return new_end

    filled = end
    for attr in ("weekday", "month", "date"):
        if _fillable(getattr(end, attr)) and not getattr(start, attr).is_null:
            filled = filled.with_field(attr, getattr(start, attr))
    return filled


# --- time-of-day ----------------------------------------------------------

def _parse_tod_key(key: str) -> range:
    lo, sep, hi = key.partition("-")
    first = int(lo)
    last = int(hi) if sep else first
    if not (1 <= first <= 12 and first <= last <= 12):
        raise ValueError(f"hour range outside 1..12: {key!r}")
    return range(first, last + 1)


def load_time_of_day_table(text: str) -> dict[int, str | None]:
    """Parse an hour-range table like {"1-6": "afternoon", "7-11": null}.

    Hours not covered by any key default to null.
    """
    raw = json.loads(text)
    if not isinstance(raw, dict):
        raise ValueError("time-of-day table must be a JSON object")
    table: dict[int, str | None] = {h: None for h in range(1, 13)}
    for key, value in raw.items():
        if value is not None and not is_valid_token("timeOfDay", value):
            raise ValueError(f"not a time-of-day token: {value!r}")
        for hour in _parse_tod_key(str(key)):
            table[hour] = value
    return table


@lru_cache(maxsize=1)
def default_time_of_day_table() -> dict[int, str | None]:
    text = resources.files("tca").joinpath("data/time_of_day_rules.json").read_text("ascii")
    return load_time_of_day_table(text)


def _context_time_of_day(ctx: DialogContext) -> str | None:
    """The single clock window (morning/afternoon/evening) fixed by the
    most recent prior record that names one; None when nothing recent
    does, or the most recent mention is ambiguous."""
    for record in reversed(ctx.prior_records[-CONTEXT_WINDOW:]):
        windows = set()
        for point in (record.start, record.end):
            f = point.time_of_day
            if f.value in _WINDOW_HOURS and not f.has_qualifier(*OPAQUE_QUALIFIERS):
                windows.add(f.value)
        if windows:
            return windows.pop() if len(windows) == 1 else None
    return None


def infer_time_of_day(hour: HourSpec, ctx: DialogContext,
                      table: dict[int, str | None] | None = None) -> str | None:
    """Read a bare clock hour as a time of day.

    A window already under discussion wins when the hour fits it;
    otherwise the configured hour table decides (defaults: 1-6 and 12
    read as afternoon, 7-11 stay null — an unqualified "at eight" could
    go either way).  Minutes never matter.
    """
    context = _context_time_of_day(ctx)
    if context is not None and hour.hour in _WINDOW_HOURS[context]:
        return context
    if table is None:
        table = default_time_of_day_table()
    return table.get(hour.hour)


# --- carry-forward ---------------------------------------------------------

def _concrete_dated(point: TimePoint) -> bool:
    return (_plain_value(point.month, "month") is not None
            and _plain_value(point.date, "date") is not None)


def carry_forward_date(ctx: DialogContext, p: TimePoint) -> list[Suggestion]:
    """Propose the date most recently under negotiation for a point that
    gives a clock time but no date.  Suggestions only; a speaker may well
    have changed the subject, so a human confirms."""
    has_clock = p.hour.value is not None or p.time_of_day.value is not None
    if not has_clock or not _fillable(p.month) or not _fillable(p.date):
        return []

    for record in reversed(ctx.prior_records[-CONTEXT_WINDOW:]):
        for point in (record.start, record.end):
            if not _concrete_dated(point):
                continue
            suggestions = [
                Suggestion("month", point.month.value, RULE_CARRY_FORWARD, CONTEXTUAL),
                Suggestion("date", point.date.value, RULE_CARRY_FORWARD, CONTEXTUAL),
            ]
            if _fillable(p.weekday) and _plain_value(point.weekday, "weekday") is not None:
                suggestions.insert(0, Suggestion("weekday", point.weekday.value,
                                                 RULE_CARRY_FORWARD, CONTEXTUAL))
            return suggestions
    return []


# --- whole-record resolution ------------------------------------------------

_START_SLOTS = {
    "weekday": "SWeekDay", "month": "SMonth", "date": "SDate",
    "hour": "SHourSpec", "time_of_day": "STimeOfDay",
}
_END_SLOTS = {
    "weekday": "EWeekDay", "month": "EMonth", "date": "EDate",
    "hour": "EHourSpec", "time_of_day": "ETimeOfDay",
}


def _rebase(suggestions: list[Suggestion], slots: dict[str, str]) -> list[Suggestion]:
    return [
        Suggestion(slots[s.field_path], s.proposed_value, s.rule, s.confidence)
        for s in suggestions
    ]


def resolve_record(record: TemporalRecord, ctx: DialogContext,
                   table: dict[int, str | None] | None = None,
                   ) -> tuple[TemporalRecord, list[Suggestion]]:
    """Apply every forced rule to one record and gather contextual
    suggestions.  Field paths in the result use the slot names
    SWeekDay..ETimeOfDay.

    A point whose stated weekday contradicts its date is left untouched;
    the validator reports that conflict, this function must not resolve
    it away.
    """
    suggestions: list[Suggestion] = []

    try:
        start, start_sugg = complete_time_point(record.start, ctx)
        suggestions.extend(_rebase(start_sugg, _START_SLOTS))
    except InconsistentTimePointError:
        start = record.start

    end = complete_end_point(start, record.end)
    for attr in COMPONENT_ATTRS:
        before, after = getattr(record.end, attr), getattr(end, attr)
        if before != after:
            suggestions.append(Suggestion(_END_SLOTS[attr], after.text,
                                          RULE_END_COMPLETION, FORCED))

    try:
        end, end_sugg = complete_time_point(end, ctx)
        suggestions.extend(_rebase(end_sugg, _END_SLOTS))
    except InconsistentTimePointError:
        pass

    context_window = _context_time_of_day(ctx)
    for point, slots in ((start, _START_SLOTS), (end, _END_SLOTS)):
        hour_token = _plain_value(point.hour, "hour")
        if hour_token is None or not _fillable(point.time_of_day):
            continue
        hour = HourSpec.from_token(hour_token)
        tod = infer_time_of_day(hour, ctx, table)
        if tod is None:
            continue
        rule = (RULE_TIME_OF_DAY_CONTEXT
                if context_window == tod and hour.hour in _WINDOW_HOURS[context_window]
                else RULE_TIME_OF_DAY_DEFAULT)
        suggestions.append(Suggestion(slots["time_of_day"], tod, rule, CONTEXTUAL))

    for point, slots in ((start, _START_SLOTS), (end, _END_SLOTS)):
        carried = carry_forward_date(ctx, point)
        if carried:
            suggestions.extend(_rebase(carried, slots))
            break

    return TemporalRecord(record.label, start, end), suggestions
