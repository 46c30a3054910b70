"""Core value types for interval-based temporal annotation records.

A coded utterance is a labeled pair of time points; each point has five
optionally-qualified components: weekday, month, day of month, clock hour,
and time of day.  Component values are stored as lowercase string tokens so
that files containing out-of-vocabulary tokens can still be represented and
reported on.  The closed vocabularies defined here are the single source of
truth for every other module.
"""

from __future__ import annotations

import datetime
import enum
import re
from dataclasses import dataclass, field, replace


class Weekday(enum.IntEnum):
    """Days of the week, Sunday-first to match the coding vocabulary."""

    SUNDAY = 0
    MONDAY = 1
    TUESDAY = 2
    WEDNESDAY = 3
    THURSDAY = 4
    FRIDAY = 5
    SATURDAY = 6

    @property
    def token(self) -> str:
        return self.name.lower()

    def successor(self) -> "Weekday":
        return Weekday((self + 1) % 7)

    @classmethod
    def from_token(cls, token: str) -> "Weekday":
        try:
            return cls[token.strip().upper()]
        except KeyError:
            raise ValueError(f"not a weekday token: {token!r}") from None


class Month(enum.IntEnum):
    JANUARY = 1
    FEBRUARY = 2
    MARCH = 3
    APRIL = 4
    MAY = 5
    JUNE = 6
    JULY = 7
    AUGUST = 8
    SEPTEMBER = 9
    OCTOBER = 10
    NOVEMBER = 11
    DECEMBER = 12

    @property
    def token(self) -> str:
        return self.name.lower()

    @property
    def abbreviation(self) -> str:
        return self.name.capitalize()[:3]

    def successor(self) -> "Month":
        return Month(self % 12 + 1)

    @classmethod
    def from_token(cls, token: str) -> "Month":
        try:
            return cls[token.strip().upper()]
        except KeyError:
            raise ValueError(f"not a month token: {token!r}") from None


WEEKDAY_TOKENS = tuple(d.token for d in Weekday)
MONTH_TOKENS = tuple(m.token for m in Month)
DATE_TOKENS = tuple(str(n) for n in range(1, 32))
TIME_OF_DAY_TOKENS = (
    "morning",
    "afternoon",
    "evening",
    "breakfast",
    "lunch",
    "dinner",
    "all-day",
)
QUALIFIER_TOKENS = ("before", "after", "during", "early", "mid", "late")

MEAL_TOKENS = ("breakfast", "lunch", "dinner")

# 12-hour clock, optional 2-digit minutes, no am/pm marker.
_HOUR_RE = re.compile(r"(1[0-2]|[1-9])(?::([0-5][0-9]))?\Z")
_DATE_RE = re.compile(r"(?:[1-9]|[12][0-9]|3[01])\Z")


@dataclass(frozen=True)
class HourSpec:
    """Clock time on a 12-hour dial; minutes stay distinct from their absence
    so that "10" and "10:00" round-trip verbatim."""

    hour: int
    minute: int | None = None

    def __post_init__(self) -> None:
        if not 1 <= self.hour <= 12:
            raise ValueError(f"hour out of 1..12: {self.hour}")
        if self.minute is not None and not 0 <= self.minute <= 59:
            raise ValueError(f"minute out of 0..59: {self.minute}")

    @property
    def token(self) -> str:
        if self.minute is None:
            return str(self.hour)
        return f"{self.hour}:{self.minute:02d}"

    @classmethod
    def from_token(cls, token: str) -> "HourSpec":
        m = _HOUR_RE.match(token.strip())
        if m is None:
            raise ValueError(f"not an hour token: {token!r}")
        return cls(int(m.group(1)), int(m.group(2)) if m.group(2) else None)


#: Recognized component kinds, as used by is_valid_token and diagnostics.
FIELD_KINDS = ("weekday", "month", "date", "hour", "timeOfDay", "qualifier")


def is_valid_token(field_kind: str, token: str) -> bool:
    """True iff ``token`` belongs to the closed vocabulary of ``field_kind``.

    Matching is case-insensitive; dates are the digit strings 1..31 and
    hours must fit the 12-hour HourSpec shape.
    """
    t = token.strip().lower()
    if field_kind == "weekday":
        return t in WEEKDAY_TOKENS
    if field_kind == "month":
        return t in MONTH_TOKENS
    if field_kind == "date":
        return _DATE_RE.match(t) is not None
    if field_kind == "hour":
        return _HOUR_RE.match(t) is not None
    if field_kind == "timeOfDay":
        return t in TIME_OF_DAY_TOKENS
    if field_kind == "qualifier":
        return t in QUALIFIER_TOKENS
    raise ValueError(f"unknown field kind: {field_kind!r}")


@dataclass(frozen=True)
class QualifiedField:
    """One component of a time point: optional qualifiers plus a value token.

    ``value`` None is the explicit null marker.  A null value with
    qualifiers attached is representable (the validator reports it) but is
    not well formed.
    """

    qualifiers: tuple[str, ...] = ()
    value: str | None = None

    @property
    def is_null(self) -> bool:
        return self.value is None

    @property
    def is_well_formed(self) -> bool:
        return self.value is not None or not self.qualifiers

    def has_qualifier(self, *names: str) -> bool:
        return any(q in names for q in self.qualifiers)

    @property
    def text(self) -> str:
        """Canonical inner text, e.g. ``"after, 25"`` or ``"null"``."""
        tokens = list(self.qualifiers) + [self.value if self.value is not None else "null"]
        return ", ".join(tokens)

    @classmethod
    def of(cls, spec: "QualifiedField | str | tuple | None") -> "QualifiedField":
        """Build from shorthand: None, a bare token, an existing field, or a
        tuple of qualifier tokens followed by the value token."""
        if spec is None:
            return NULL_FIELD
        if isinstance(spec, QualifiedField):
            return spec
        if isinstance(spec, tuple):
            *quals, value = spec
            return cls(tuple(q.lower() for q in quals), None if value is None else str(value).lower())
        return cls((), str(spec).lower())


NULL_FIELD = QualifiedField()

#: Attribute names of the five components on a TimePoint, in file order.
COMPONENT_ATTRS = ("weekday", "month", "date", "hour", "time_of_day")

#: Component kind per attribute, for vocabulary checks.
COMPONENT_KINDS = ("weekday", "month", "date", "hour", "timeOfDay")

#: The ten record slots in file order: start fields then end fields.
SLOT_NAMES = (
    "SWeekDay", "SMonth", "SDate", "SHourSpec", "STimeOfDay",
    "EWeekDay", "EMonth", "EDate", "EHourSpec", "ETimeOfDay",
)

SLOT_KINDS = COMPONENT_KINDS * 2


@dataclass(frozen=True)
class TimePoint:
    """One endpoint of an interval; all five components always present,
    null marking what cannot be inferred."""

    weekday: QualifiedField = NULL_FIELD
    month: QualifiedField = NULL_FIELD
    date: QualifiedField = NULL_FIELD
    hour: QualifiedField = NULL_FIELD
    time_of_day: QualifiedField = NULL_FIELD

    @classmethod
    def of(cls, weekday=None, month=None, date=None, hour=None, time_of_day=None) -> "TimePoint":
        return cls(
            QualifiedField.of(weekday),
            QualifiedField.of(month),
            QualifiedField.of(date),
            QualifiedField.of(hour),
            QualifiedField.of(time_of_day),
        )

    def fields(self) -> tuple[QualifiedField, ...]:
        return (self.weekday, self.month, self.date, self.hour, self.time_of_day)

    @property
    def is_null(self) -> bool:
        return all(f.is_null for f in self.fields())

    def with_field(self, attr: str, value: QualifiedField) -> "TimePoint":
        return replace(self, **{attr: value})


@dataclass(frozen=True)
class Conjunct:
    """Suffix marking one branch of a disjunction (alt) or conjunction (and)."""

    kind: str  # "alt" | "and"
    index: int


class MalformedLabelError(ValueError):
    pass


_LABEL_RE = re.compile(r"(?P<base>[0-9]+[a-z]*)(?:_(?P<kind>[a-z]+)(?P<index>[0-9]+))?\Z")


@dataclass(frozen=True)
class RecordLabel:
    """Utterance label: digits plus optional letter suffix, optionally
    extended with an _altN/_andN conjunct marker."""

    base: str
    conjunct: Conjunct | None = None

    @property
    def text(self) -> str:
        if self.conjunct is None:
            return self.base
        return f"{self.base}_{self.conjunct.kind}{self.conjunct.index}"

    @property
    def is_well_formed(self) -> bool:
        m = _LABEL_RE.match(self.base)
        return m is not None and m.group("kind") is None

    def sort_key(self):
        """Total order: numeric part, letter suffix, then conjunct kind/index.
        Malformed labels sort after all well-formed ones, by raw text."""
        m = re.match(r"([0-9]+)([a-z]*)\Z", self.base)
        if m is None:
            return (1, 0, self.base, "", 0)
        num, letters = int(m.group(1)), m.group(2)
        if self.conjunct is None:
            return (0, num, letters, "", 0)
        return (0, num, letters, self.conjunct.kind, self.conjunct.index)

    @classmethod
    def lenient(cls, text: str) -> "RecordLabel":
        """Build from raw text, preserving malformed labels for diagnosis."""
        try:
            return parse_label(text)
        except MalformedLabelError:
            return cls(base=text.strip().lower())


def parse_label(text: str) -> RecordLabel:
    """Decompose a label into base and optional conjunct; inverse of
    format_label.  Raises MalformedLabelError on empty base, a zero
    conjunct index, or an unknown suffix kind."""
    t = text.strip().lower()
    m = _LABEL_RE.match(t)
    if m is None:
        raise MalformedLabelError(f"malformed label: {text!r}")
    if m.group("kind") is None:
        return RecordLabel(base=m.group("base"))
    if m.group("kind") not in ("alt", "and"):
        raise MalformedLabelError(f"unknown label suffix kind in {text!r}")
    index = int(m.group("index"))
    if index < 1:
        raise MalformedLabelError(f"conjunct index must be >= 1 in {text!r}")
    return RecordLabel(base=m.group("base"), conjunct=Conjunct(m.group("kind"), index))


def format_label(label: RecordLabel) -> str:
    return label.text


@dataclass(frozen=True)
class TemporalRecord:
    """The per-utterance unit of annotation: a labeled (start, end) pair.

    Zero-length intervals (identical endpoints) are legal.
    """

    label: RecordLabel
    start: TimePoint = field(default_factory=TimePoint)
    end: TimePoint = field(default_factory=TimePoint)

    def slots(self) -> tuple[QualifiedField, ...]:
        return self.start.fields() + self.end.fields()

    @property
    def is_null(self) -> bool:
        return self.start.is_null and self.end.is_null


@dataclass(frozen=True)
class DialogDate:
    """The real-world date of the conversation; the anchor for resolving
    every relative expression.  Records themselves never carry a year."""

    year: int
    month: Month
    day: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "month", Month(self.month))
        # Delegates the leap-year rule to the standard library.
        datetime.date(self.year, int(self.month), self.day)

    @property
    def text(self) -> str:
        return f"{self.day} {self.month.name.capitalize()} {self.year}"

    @property
    def iso(self) -> str:
        return f"{self.year:04d}-{int(self.month):02d}-{self.day:02d}"

    @classmethod
    def from_iso(cls, text: str) -> "DialogDate":
        d = datetime.date.fromisoformat(text.strip())
        return cls(d.year, Month(d.month), d.day)
