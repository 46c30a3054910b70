"""Toolkit for interval-based temporal annotation of scheduling dialogs.

Core layers, bottom up: the value model (closed vocabularies, time
points, records), pure calendar arithmetic, the bracketed file format,
guideline-based resolution, validation diagnostics, agreement scoring,
and a session service with a CLI front door.
"""

from .agreement import (
    AgreementReport,
    DateMismatchError,
    GoldScore,
    compare_files,
    score_against_gold,
)
from .calendar import (
    CalendarDate,
    DateInterval,
    add_days,
    days_in_month,
    month_grid,
    month_interval,
    next_workweek,
    nth_workweek_of_month,
    this_workweek,
    weekday_of,
    workweeks_of_month,
)
from .diagnostics import Diagnostic, ERROR_CODES, has_errors
from .fileformat import (
    AnnotationFile,
    AnnotationSyntaxError,
    parse_annotation_file,
    serialize_annotation_file,
    try_parse_annotation_file,
)
from .model import (
    DialogDate,
    HourSpec,
    Month,
    QualifiedField,
    RecordLabel,
    TemporalRecord,
    TimePoint,
    Weekday,
    format_label,
    is_valid_token,
    parse_label,
)
from .resolver import (
    DialogContext,
    InconsistentTimePointError,
    Suggestion,
    carry_forward_date,
    complete_end_point,
    complete_time_point,
    infer_time_of_day,
    resolve_record,
)
from .session import DialogTranscript, Session, SessionStore
from .validator import check_text, validate_file, validate_record

__version__ = "0.1.0"

__all__ = [
    "AgreementReport",
    "AnnotationFile",
    "AnnotationSyntaxError",
    "CalendarDate",
    "DateInterval",
    "DateMismatchError",
    "Diagnostic",
    "DialogContext",
    "DialogDate",
    "DialogTranscript",
    "ERROR_CODES",
    "GoldScore",
    "HourSpec",
    "InconsistentTimePointError",
    "Month",
    "QualifiedField",
    "RecordLabel",
    "Session",
    "SessionStore",
    "Suggestion",
    "TemporalRecord",
    "TimePoint",
    "Weekday",
    "add_days",
    "carry_forward_date",
    "check_text",
    "compare_files",
    "complete_end_point",
    "complete_time_point",
    "days_in_month",
    "format_label",
    "has_errors",
    "infer_time_of_day",
    "is_valid_token",
    "month_grid",
    "month_interval",
    "next_workweek",
    "nth_workweek_of_month",
    "parse_annotation_file",
    "parse_label",
    "resolve_record",
    "score_against_gold",
    "serialize_annotation_file",
    "this_workweek",
    "try_parse_annotation_file",
    "validate_file",
    "validate_record",
    "weekday_of",
    "workweeks_of_month",
]
