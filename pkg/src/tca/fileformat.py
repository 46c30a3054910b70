"""Reader and writer for the bracketed annotation file format (.tca).

A file is a comment header naming the dialog date, then a bracketed list
of records.  Each record is one label plus ten component fields:

    [28, [friday], [march], [5], ['12:00'], [afternoon],
         [friday], [march], [5], ['2:00'], [afternoon]],

Fields may use () or [] delimiters on input; output always uses [].
Parsing checks structure only (balance, arity, ASCII); vocabulary checks
belong to the validator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import calendar as cal
from .diagnostics import (
    Diagnostic,
    E_ARITY,
    E_DATE,
    E_HEADER,
    E_SYNTAX,
    ERROR,
)
from .model import (
    DialogDate,
    Month,
    QualifiedField,
    RecordLabel,
    SLOT_NAMES,
    TemporalRecord,
    TimePoint,
)

FILE_EXTENSION = ".tca"

_FIELD_COUNT = 10
_MAX_PARSE_ERRORS = 25


@dataclass(frozen=True)
class AnnotationFile:
    """Dialog date plus the ordered record sequence; maps 1:1 to file text."""

    dialog_date: DialogDate
    records: tuple[TemporalRecord, ...] = ()

    def record(self, label_text: str) -> TemporalRecord | None:
        for r in self.records:
            if r.label.text == label_text:
                return r
        return None


class AnnotationSyntaxError(ValueError):
    """Parse failure; carries every diagnostic collected before giving up."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0]
        super().__init__(first.format_line())


# --- tokenizer ---------------------------------------------------------

_OPEN = {"[": "]", "(": ")"}
_CLOSE = {"]", ")"}
_ATOM_CHARS = re.compile(r"[A-Za-z0-9_:\-]")


@dataclass(frozen=True)
class _Token:
    kind: str  # open | close | comma | dot | atom
    text: str
    line: int
    col: int
    quoted: bool = False


def _tokenize(text: str, diags: list[Diagnostic]) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)

    def advance(k: int = 1):
        nonlocal i, line, col
        for _ in range(k):
            if i < n and text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if ord(c) > 127:
            diags.append(Diagnostic(E_SYNTAX, ERROR, f"non-ASCII character {c!r}",
                                    line=line, column=col))
            return tokens
        if c in " \t\r\n":
            advance()
        elif text.startswith("/*", i):
            end = text.find("*/", i + 2)
            if end < 0:
                diags.append(Diagnostic(E_SYNTAX, ERROR, "unterminated comment",
                                        line=line, column=col))
                return tokens
            advance(end + 2 - i)
        elif text.startswith(";;", i):
            end = text.find("\n", i)
            advance((end if end >= 0 else n) - i)
        elif c in _OPEN:
            tokens.append(_Token("open", c, line, col))
            advance()
        elif c in _CLOSE:
            tokens.append(_Token("close", c, line, col))
            advance()
        elif c == ",":
            tokens.append(_Token("comma", c, line, col))
            advance()
        elif c == ".":
            tokens.append(_Token("dot", c, line, col))
            advance()
        elif c == "'":
            end = text.find("'", i + 1)
            if end < 0:
                diags.append(Diagnostic(E_SYNTAX, ERROR, "unterminated quoted token",
                                        line=line, column=col))
                return tokens
            tokens.append(_Token("atom", text[i + 1:end], line, col, quoted=True))
            advance(end + 1 - i)
        elif _ATOM_CHARS.match(c):
            j = i
            while j < n and _ATOM_CHARS.match(text[j]):
                j += 1
            tokens.append(_Token("atom", text[i:j], line, col))
            advance(j - i)
        else:
            diags.append(Diagnostic(E_SYNTAX, ERROR, f"unexpected character {c!r}",
                                    line=line, column=col))
            return tokens
    return tokens


# --- header ------------------------------------------------------------

_HEADER_RE = re.compile(r"dialog\s+date:\s*(\d{1,2})\s+([a-z]+),?\s+(\d{4})", re.IGNORECASE)


def _parse_header(text: str, diags: list[Diagnostic]) -> DialogDate | None:
    m = _HEADER_RE.search(text)
    if m is None:
        diags.append(Diagnostic(E_HEADER, ERROR, "no 'Dialog Date:' header line", line=1, column=1))
        return None
    line = text.count("\n", 0, m.start()) + 1
    col = m.start() - (text.rfind("\n", 0, m.start()) + 1) + 1
    try:
        month = Month.from_token(m.group(2))
        date = DialogDate(int(m.group(3)), month, int(m.group(1)))
    except ValueError:
        diags.append(Diagnostic(E_DATE, ERROR,
                                f"header date {m.group(0)!r} is not a real calendar date",
                                line=line, column=col))
        return None
    if not cal.MIN_YEAR <= date.year <= cal.MAX_YEAR:
        diags.append(Diagnostic(E_DATE, ERROR,
                                f"header year {date.year} outside the supported"
                                f" {cal.MIN_YEAR}-{cal.MAX_YEAR} range",
                                line=line, column=col))
        return None
    return date


# --- parser ------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[_Token], diags: list[Diagnostic]):
        self.tokens = tokens
        self.diags = diags
        self.pos = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> _Token | None:
        t = self.peek()
        if t is not None:
            self.pos += 1
        return t

    def error(self, message: str, tok: _Token | None, code: str = E_SYNTAX,
              label: str | None = None) -> None:
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            line = last.line if last else 1
            col = last.col if last else 1
        else:
            line, col = tok.line, tok.col
        self.diags.append(Diagnostic(code, ERROR, message, label=label, line=line, column=col))

    def parse_file(self) -> list[TemporalRecord]:
        records: list[TemporalRecord] = []
        t = self.take()
        if t is None or t.kind != "open":
            self.error("annotation file must start with '['", t)
            return records
        if self.peek() is not None and self.peek().kind == "close":
            self.take()
        else:
            while True:
                if len(self.diags) >= _MAX_PARSE_ERRORS:
                    return records
                rec = self.parse_record()
                if rec is not None:
                    records.append(rec)
                sep = self.take()
                if sep is None:
                    self.error("unexpected end of file inside record list", sep)
                    return records
                if sep.kind == "comma":
                    continue
                if sep.kind == "close":
                    break
                self.error(f"expected ',' or ']' after record, found {sep.text!r}", sep)
                self.recover_to_separator()
                nxt = self.peek()
                if nxt is None:
                    return records
                if nxt.kind == "close":
                    self.take()
                    break
                self.take()  # comma
        t = self.peek()
        if t is not None and t.kind == "dot":
            self.take()
        t = self.peek()
        if t is not None:
            self.error("trailing content after final ']'", t)
        return records

    def recover_to_separator(self) -> None:
        """Skip tokens until the next top-level comma or closing bracket."""
        depth = 0
        while True:
            t = self.peek()
            if t is None:
                return
            if t.kind == "open":
                depth += 1
            elif t.kind == "close":
                if depth == 0:
                    return
                depth -= 1
            elif t.kind == "comma" and depth == 0:
                return
            self.take()

    def parse_record(self) -> TemporalRecord | None:
        opener = self.take()
        if opener is None or opener.kind != "open":
            self.error("expected '[' to open a record", opener)
            self.recover_to_separator()
            return None
        label_tok = self.take()
        if label_tok is None or label_tok.kind != "atom":
            self.error("record must begin with a label", label_tok)
            self.recover_to_separator()
            return None
        label = RecordLabel.lenient(label_tok.text)
        fields: list[QualifiedField] = []
        ok = True
        while True:
            t = self.take()
            if t is None:
                self.error("unexpected end of file inside record", t, label=label.text)
                return None
            if t.kind == "close":
                if t.text != _OPEN[opener.text]:
                    self.error(f"mismatched record delimiters {opener.text!r}...{t.text!r}",
                               t, label=label.text)
                break
            if t.kind != "comma":
                self.error(f"expected ',' between fields, found {t.text!r}", t, label=label.text)
                ok = False
                self.recover_to_separator()
                closer = self.peek()
                if closer is not None and closer.kind == "close":
                    self.take()
                break
            f = self.parse_field(label.text)
            if f is None:
                ok = False
                self.recover_to_separator()
                continue
            fields.append(f)
        if not ok:
            return None
        if len(fields) != _FIELD_COUNT:
            self.error(f"record has {len(fields)} fields, expected {_FIELD_COUNT}"
                       " (5 start + 5 end)",
                       opener, code=E_ARITY, label=label.text)
            return None
        return TemporalRecord(label, TimePoint(*fields[:5]), TimePoint(*fields[5:]))

    def parse_field(self, label_text: str) -> QualifiedField | None:
        opener = self.take()
        if opener is None or opener.kind != "open":
            self.error("expected '[' or '(' to open a field", opener, label=label_text)
            return None
        items: list[_Token] = []
        while True:
            t = self.take()
            if t is None:
                self.error("unexpected end of file inside field", t, label=label_text)
                return None
            if t.kind == "atom":
                items.append(t)
            elif t.kind == "close":
                if t.text != _OPEN[opener.text]:
                    self.error(f"mismatched field delimiters {opener.text!r}...{t.text!r}",
                               t, label=label_text)
                    return None
                break
            else:
                self.error(f"unexpected {t.text!r} inside field", t, label=label_text)
                return None
            nxt = self.peek()
            if nxt is not None and nxt.kind == "comma":
                self.take()
        if not items:
            self.error("empty field", opener, label=label_text)
            return None
        *quals, value_tok = items
        value = None if value_tok.text.lower() == "null" else value_tok.text.lower()
        return QualifiedField(tuple(q.text.lower() for q in quals), value)


def try_parse_annotation_file(text: str) -> tuple[AnnotationFile | None, list[Diagnostic]]:
    """Parse, collecting diagnostics instead of raising.  Returns the file
    only when no error-level diagnostic was produced."""
    diags: list[Diagnostic] = []
    dialog_date = _parse_header(text, diags)
    tokens = _tokenize(text, diags)
    records = _Parser(tokens, diags).parse_file() if tokens or not diags else []
    if diags or dialog_date is None:
        return None, diags
    return AnnotationFile(dialog_date, tuple(records)), diags


def parse_annotation_file(text: str) -> AnnotationFile:
    parsed, diags = try_parse_annotation_file(text)
    if parsed is None:
        raise AnnotationSyntaxError(diags)
    return parsed


# --- serializer --------------------------------------------------------

_QUOTE_NEEDED = re.compile(r"[:\-]")
_BARE_LABEL = re.compile(r"[0-9a-z_]+\Z")


def _token_text(token: str) -> str:
    if _QUOTE_NEEDED.search(token):
        return f"'{token}'"
    return token


def _field_text(f: QualifiedField) -> str:
    tokens = list(f.qualifiers) + [f.value if f.value is not None else "null"]
    return "[" + ", ".join(_token_text(t) for t in tokens) + "]"


def _label_text(label: RecordLabel) -> str:
    text = label.text
    if _BARE_LABEL.match(text):
        return text
    return f"'{text}'"


def _record_text(r: TemporalRecord) -> str:
    head = f"[{_label_text(r.label)}, "
    start = ", ".join(_field_text(f) for f in r.start.fields())
    end = ", ".join(_field_text(f) for f in r.end.fields())
    return f"{head}{start},\n{' ' * len(head)}{end}]"


def _header_text(dialog_date: DialogDate) -> str:
    lines = ["/*", f"   ;; Dialog Date: {dialog_date.text}", "   ;;"]
    for grid_line in cal.month_grid(dialog_date.year, dialog_date.month):
        lines.append(f"   ;;    {grid_line}".rstrip())
    lines += ["   ;;", "*/"]
    return "\n".join(lines)


def serialize_annotation_file(f: AnnotationFile) -> str:
    """Canonical text: regenerated header comment, two physical lines per
    record, records separated by comma + blank line, all wrapped in [ ].
    Equality is at the parsed-value level, not bytes."""
    body = ",\n\n".join(_record_text(r) for r in f.records)
    if body:
        return f"{_header_text(f.dialog_date)}\n\n\n[\n\n{body}\n\n].\n"
    return f"{_header_text(f.dialog_date)}\n\n\n[\n\n].\n"


# --- JSON projection ----------------------------------------------------

def field_to_json(f: QualifiedField) -> dict:
    return {"qualifiers": list(f.qualifiers), "value": f.value}


def record_to_json(r: TemporalRecord) -> dict:
    out: dict = {"Label": r.label.text}
    for name, f in zip(SLOT_NAMES, r.slots()):
        out[name] = field_to_json(f)
    return out


def file_to_json(f: AnnotationFile) -> dict:
    return {
        "dialogDate": {
            "year": f.dialog_date.year,
            "month": f.dialog_date.month.token,
            "day": f.dialog_date.day,
        },
        "records": [record_to_json(r) for r in f.records],
    }


def field_from_json(data) -> QualifiedField:
    if not isinstance(data, dict) or set(data) - {"qualifiers", "value"}:
        raise ValueError(f"field must be {{qualifiers, value}}, got {data!r}")
    quals = data.get("qualifiers", [])
    value = data.get("value")
    if not isinstance(quals, list) or not all(isinstance(q, str) for q in quals):
        raise ValueError("qualifiers must be a list of strings")
    if value is not None and not isinstance(value, str):
        raise ValueError("value must be a string or null")
    return QualifiedField(tuple(q.lower() for q in quals),
                          value.lower() if value is not None else None)


def record_from_json(data) -> TemporalRecord:
    if not isinstance(data, dict):
        raise ValueError("record must be a JSON object")
    missing = [k for k in ("Label", *SLOT_NAMES) if k not in data]
    if missing:
        raise ValueError(f"record is missing slots: {', '.join(missing)}")
    if not isinstance(data["Label"], str) or not data["Label"].strip():
        raise ValueError("Label must be a nonempty string")
    fields = [field_from_json(data[name]) for name in SLOT_NAMES]
    return TemporalRecord(
        RecordLabel.lenient(data["Label"]),
        TimePoint(*fields[:5]),
        TimePoint(*fields[5:]),
    )
