"""Calendar arithmetic under the scheme's workweek conventions.

Weeks are Monday..Friday spans; a week "of" a month only counts when more
than two of its working days fall inside that month, and such edge weeks
are clipped to the month.  Supported range is 1900-2099 (Gregorian).
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass

from .model import Month, Weekday

MIN_YEAR = 1900
MAX_YEAR = 2099

#: Minimum working days a (possibly clipped) workweek must contribute to a
#: month before "first/last/n-th week of the month" counts it.
MIN_WORKWEEK_DAYS = 3


class OutOfRangeError(ValueError):
    pass


class NoSuchWeekError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CalendarDate:
    """A concrete Gregorian date within the supported range."""

    year: int
    month: Month
    day: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "month", Month(self.month))
        if not MIN_YEAR <= self.year <= MAX_YEAR:
            raise OutOfRangeError(f"year {self.year} outside {MIN_YEAR}..{MAX_YEAR}")
        datetime.date(self.year, int(self.month), self.day)

    @classmethod
    def from_date(cls, d: datetime.date) -> "CalendarDate":
        return cls(d.year, Month(d.month), d.day)

    def to_date(self) -> datetime.date:
        return datetime.date(self.year, int(self.month), self.day)

    @property
    def iso(self) -> str:
        return f"{self.year:04d}-{int(self.month):02d}-{self.day:02d}"


@dataclass(frozen=True)
class DateInterval:
    """Inclusive run of days, kept in calendar order."""

    first: CalendarDate
    last: CalendarDate

    def __post_init__(self) -> None:
        if self.first > self.last:
            raise ValueError(f"interval endpoints out of order: {self.first.iso} > {self.last.iso}")

    def __contains__(self, d: CalendarDate) -> bool:
        return self.first <= d <= self.last

    def __len__(self) -> int:
        return (self.last.to_date() - self.first.to_date()).days + 1


def weekday_of(d: CalendarDate) -> Weekday:
    # datetime counts Monday=0; the vocabulary counts Sunday=0.
    return Weekday((d.to_date().weekday() + 1) % 7)


def add_days(d: CalendarDate, n: int) -> CalendarDate:
    """Offset by n days with month/year rollover; raises OutOfRangeError when
    the result leaves the supported years."""
    moved = d.to_date() + datetime.timedelta(days=n)
    if not MIN_YEAR <= moved.year <= MAX_YEAR:
        raise OutOfRangeError(f"{moved.isoformat()} outside supported range")
    return CalendarDate.from_date(moved)


def days_in_month(year: int, month: Month) -> int:
    m = Month(month)
    if m == Month.DECEMBER:
        last = datetime.date(year, 12, 31)
    else:
        last = datetime.date(year, int(m) + 1, 1) - datetime.timedelta(days=1)
    return last.day


def _monday_on_or_before(d: datetime.date) -> datetime.date:
    return d - datetime.timedelta(days=d.weekday())


def this_workweek(d: CalendarDate) -> DateInterval:
    """The Monday..Friday span containing d.  A Saturday or Sunday reference
    date rolls forward to the following week: scheduling talk is
    future-oriented and weeks here omit weekends."""
    day = d.to_date()
    if day.weekday() >= 5:  # Sat/Sun
        monday = _monday_on_or_before(day) + datetime.timedelta(days=7)
    else:
        monday = _monday_on_or_before(day)
    return DateInterval(
        CalendarDate.from_date(monday),
        CalendarDate.from_date(monday + datetime.timedelta(days=4)),
    )


def next_workweek(d: CalendarDate) -> DateInterval:
    """The workweek starting the first Monday strictly after this_workweek(d)."""
    monday = this_workweek(d).first.to_date() + datetime.timedelta(days=7)
    return DateInterval(
        CalendarDate.from_date(monday),
        CalendarDate.from_date(monday + datetime.timedelta(days=4)),
    )


def month_interval(year: int, month: Month) -> DateInterval:
    """First through last day of the month, as one unit."""
    m = Month(month)
    return DateInterval(
        CalendarDate(year, m, 1),
        CalendarDate(year, m, days_in_month(year, m)),
    )


def workweeks_of_month(year: int, month: Month) -> list[DateInterval]:
    """Qualifying workweeks of the month, in order: each Monday..Friday span
    clipped to the month, kept only when the clip holds more than two days."""
    m = Month(month)
    first = datetime.date(year, int(m), 1)
    last = datetime.date(year, int(m), days_in_month(year, m))
    weeks = []
    monday = _monday_on_or_before(first)
    while monday <= last:
        friday = monday + datetime.timedelta(days=4)
        lo, hi = max(monday, first), min(friday, last)
        if lo <= hi and (hi - lo).days + 1 >= MIN_WORKWEEK_DAYS:
            weeks.append(DateInterval(CalendarDate.from_date(lo), CalendarDate.from_date(hi)))
        monday += datetime.timedelta(days=7)
    return weeks


def nth_workweek_of_month(year: int, month: Month, n: int) -> DateInterval:
    weeks = workweeks_of_month(year, month)
    if not 1 <= n <= len(weeks):
        raise NoSuchWeekError(
            f"{Month(month).token} {year} has {len(weeks)} qualifying workweeks, not {n}"
        )
    return weeks[n - 1]


def last_workweek_of_month(year: int, month: Month) -> DateInterval:
    weeks = workweeks_of_month(year, month)
    return weeks[-1]


_GRID_WIDTH = 20  # seven 2-char cells joined by single spaces
_GRID_HEADER = ("S", "M", "Tu", "W", "Th", "F", "S")


def month_grid(year: int, month: Month) -> list[str]:
    """Seven-column text layout of a month, Sunday first, as embedded in
    annotation file headers.  Lines carry no trailing whitespace."""
    m = Month(month)
    title = f"{m.abbreviation} {year}"
    lines = [" " * ((_GRID_WIDTH - len(title)) // 2) + title]
    lines.append(" ".join(c.rjust(2) for c in _GRID_HEADER))
    cells = [""] * ((datetime.date(year, int(m), 1).weekday() + 1) % 7)
    cells += [str(day) for day in range(1, days_in_month(year, m) + 1)]
    while cells:
        row, cells = cells[:7], cells[7:]
        lines.append(" ".join(c.rjust(2) for c in row).rstrip())
    return lines
