"""Diagnostic records shared by the parser and the validator."""

from __future__ import annotations

from dataclasses import dataclass

ERROR = "error"
WARNING = "warning"
INFO = "info"

# Parser-produced codes.
E_SYNTAX = "E-SYNTAX"
E_HEADER = "E-HEADER"
E_DATE = "E-DATE"

# Validator rule codes (E-ARITY is raised at parse time, where a wrong
# field count is still representable).
E_VOCAB = "E-VOCAB"
E_ARITY = "E-ARITY"
E_LABEL = "E-LABEL"
E_WDAY = "E-WDAY"
E_ORDER = "E-ORDER"
E_QUAL_NULL = "E-QUAL-NULL"
W_ALT_BASE = "W-ALT-BASE"
W_END_COMPLETE = "W-END-COMPLETE"
W_QUAL_MANY = "W-QUAL-MANY"
W_HOUR_AMPM = "W-HOUR-AMPM"

#: Codes whose presence blocks export; warnings never do.
ERROR_CODES = frozenset({
    E_SYNTAX, E_HEADER, E_DATE,
    E_VOCAB, E_ARITY, E_LABEL, E_WDAY, E_ORDER, E_QUAL_NULL,
})


@dataclass(frozen=True)
class Diagnostic:
    """One validator or parser finding, with a stable code."""

    code: str
    severity: str
    message: str
    label: str | None = None
    field_path: str | None = None
    line: int | None = None
    column: int | None = None

    @property
    def is_error(self) -> bool:
        return self.severity == ERROR

    def format_line(self) -> str:
        """Line-oriented text form: ``CODE label fieldPath message``."""
        return " ".join([
            self.code,
            self.label if self.label is not None else "-",
            self.field_path if self.field_path is not None else "-",
            self.message,
        ])

    def to_json(self) -> dict:
        out: dict = {
            "code": self.code,
            "severity": self.severity,
            "message": self.message,
            "label": self.label,
            "fieldPath": self.field_path,
        }
        if self.line is not None:
            out["line"] = self.line
        if self.column is not None:
            out["column"] = self.column
        return out


def has_errors(diagnostics) -> bool:
    return any(d.is_error for d in diagnostics)
