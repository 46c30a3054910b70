"""Annotation sessions: one coder stepping through one dialog.

A session owns the transcript, the records written so far, and a cursor
marking the first utterance not yet annotated.  Utterance texts past the
cursor are never handed out, so a coder cannot read ahead, and once the
cursor moves past an utterance its record is frozen unless the session
was opened with revisiting allowed (meant for typo repair, not for
reinterpreting on later evidence).

Sessions persist as plain files in one directory per session: the
transcript as JSON, the records in the annotation format, and the cursor
in a small state file.  Everything stays diffable and usable by the CLI.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass
from pathlib import Path

from .diagnostics import Diagnostic, has_errors
from .fileformat import (
    AnnotationFile,
    parse_annotation_file,
    serialize_annotation_file,
)
from .model import DialogDate, RecordLabel, TemporalRecord
from .resolver import DialogContext, Suggestion, resolve_record
from .validator import validate_file, validate_record

TRANSCRIPT_FILE = "transcript.json"
RECORDS_FILE = "records.tca"
STATE_FILE = "state.json"


class SessionStateError(RuntimeError):
    """An operation the current cursor position does not allow."""


class UnknownLabelError(KeyError):
    """A label that names no utterance of the transcript."""


class ExportBlockedError(RuntimeError):
    """Export refused while error-level diagnostics exist."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("export blocked by error diagnostics")


@dataclass(frozen=True)
class Utterance:
    label: str
    speaker: str
    text: str


@dataclass(frozen=True)
class DialogTranscript:
    dialog_date: DialogDate
    utterances: tuple[Utterance, ...]

    @classmethod
    def from_json(cls, data) -> "DialogTranscript":
        if not isinstance(data, dict):
            raise ValueError("transcript must be a JSON object")
        try:
            dialog_date = DialogDate.from_iso(str(data["dialogDate"]))
            utterances = tuple(
                Utterance(str(u["label"]), str(u["speaker"]), str(u["text"]))
                for u in data["utterances"]
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"transcript shape: {exc}") from exc
        labels = [RecordLabel.lenient(u.label) for u in utterances]
        # _altN/_andN suffixes belong to records; utterances carry plain labels.
        if not all(lab.is_well_formed and lab.conjunct is None for lab in labels):
            raise ValueError("transcript labels must be plain number+letter labels")
        keys = [lab.sort_key() for lab in labels]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("transcript labels must be unique and ascending")
        return cls(dialog_date, utterances)

    def to_json(self) -> dict:
        return {
            "dialogDate": self.dialog_date.iso,
            "utterances": [
                {"label": u.label, "speaker": u.speaker, "text": u.text}
                for u in self.utterances
            ],
        }


def load_transcript(path: Path) -> DialogTranscript:
    return DialogTranscript.from_json(json.loads(path.read_text("utf-8")))


class Session:
    """Mutable annotation state for one dialog; mutations go through the
    session lock so concurrent requests see consistent snapshots."""

    def __init__(self, session_id: str, transcript: DialogTranscript,
                 directory: Path | None = None, allow_revisit: bool = False):
        self.session_id = session_id
        self.transcript = transcript
        self.directory = directory
        self.allow_revisit = allow_revisit
        self.cursor = 0
        self.records: dict[str, TemporalRecord] = {}
        self.lock = threading.Lock()
        self._index_by_base = {u.label: i for i, u in enumerate(transcript.utterances)}

    # -- views ------------------------------------------------------------

    @property
    def dialog_date(self) -> DialogDate:
        return self.transcript.dialog_date

    def utterance_index(self, label_text: str) -> int:
        """Index of the utterance a (possibly _altN/_andN) label belongs to."""
        base = RecordLabel.lenient(label_text).base
        try:
            return self._index_by_base[base]
        except KeyError:
            raise UnknownLabelError(label_text) from None

    def visible_transcript(self) -> list[dict]:
        rows = []
        for i, u in enumerate(self.transcript.utterances):
            if i <= self.cursor:
                rows.append({"index": i, "label": u.label, "masked": False,
                             "speaker": u.speaker, "text": u.text})
            else:
                rows.append({"index": i, "label": u.label, "masked": True,
                             "speaker": None, "text": None})
        return rows

    def get_record(self, label_text: str) -> TemporalRecord | None:
        return self.records.get(label_text)

    def annotation_file(self) -> AnnotationFile:
        ordered = sorted(self.records.values(), key=lambda r: r.label.sort_key())
        return AnnotationFile(self.dialog_date, tuple(ordered))

    def context_for(self, label_text: str) -> DialogContext:
        """Records of utterances strictly before this label's utterance."""
        index = self.utterance_index(label_text)
        prior = [r for r in self.annotation_file().records
                 if self.utterance_index(r.label.text) < index]
        return DialogContext(self.dialog_date, tuple(prior))

    # -- mutations ----------------------------------------------------------

    def put_record(self, record: TemporalRecord
                   ) -> tuple[list[Diagnostic], list[Suggestion]]:
        """Store a record exactly as submitted and report on it.

        The record must belong to a visible utterance: annotating past the
        cursor would mean the coder read ahead.  Returns the validator's
        findings and the resolver's suggestions; suggestions are never
        applied here, accepting one means submitting the amended record.
        """
        label_text = record.label.text
        index = self.utterance_index(label_text)
        if index > self.cursor:
            raise SessionStateError(
                f"utterance {label_text!r} is beyond the cursor; no look-ahead")
        if index < self.cursor and not self.allow_revisit:
            raise SessionStateError(
                f"utterance {self.transcript.utterances[index].label!r} was"
                " already passed; revisiting is disabled")

        diagnostics = validate_record(record, self.dialog_date)
        _, suggestions = resolve_record(record, self.context_for(label_text))
        self.records[label_text] = record
        self._save()
        return diagnostics, suggestions

    def advance(self) -> int:
        """Move to the next utterance once the current one has a record."""
        if self.cursor >= len(self.transcript.utterances):
            raise SessionStateError("already past the last utterance")
        current = self.transcript.utterances[self.cursor].label
        has_record = any(RecordLabel.lenient(text).base == current
                         for text in self.records)
        if not has_record:
            raise SessionStateError(
                f"utterance {current!r} has no record yet")
        self.cursor += 1
        self._save()
        return self.cursor

    def export_text(self) -> str:
        """Canonical annotation text; refused while errors exist."""
        f = self.annotation_file()
        diagnostics = validate_file(f)
        if has_errors(diagnostics):
            raise ExportBlockedError([d for d in diagnostics if d.is_error])
        return serialize_annotation_file(f)

    # -- persistence -----------------------------------------------------

    def _save(self) -> None:
        if self.directory is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        transcript_path = self.directory / TRANSCRIPT_FILE
        if not transcript_path.exists():
            transcript_path.write_text(
                json.dumps(self.transcript.to_json(), indent=2) + "\n", "utf-8")
        (self.directory / RECORDS_FILE).write_text(
            serialize_annotation_file(self.annotation_file()), "ascii")
        (self.directory / STATE_FILE).write_text(
            json.dumps({"cursor": self.cursor,
                        "allowRevisit": self.allow_revisit}) + "\n", "utf-8")

    @classmethod
    def load(cls, directory: Path, allow_revisit: bool = False) -> "Session":
        transcript = load_transcript(directory / TRANSCRIPT_FILE)
        session = cls(directory.name, transcript, directory, allow_revisit)
        state_path = directory / STATE_FILE
        if state_path.exists():
            state = json.loads(state_path.read_text("utf-8"))
            session.cursor = min(int(state.get("cursor", 0)),
                                 len(transcript.utterances))
            session.allow_revisit = bool(state.get("allowRevisit", allow_revisit))
        records_path = directory / RECORDS_FILE
        if records_path.exists():
            stored = parse_annotation_file(records_path.read_text("ascii"))
            session.records = {r.label.text: r for r in stored.records}
        return session


class SessionStore:
    """All live sessions, optionally mirrored to a data directory."""

    def __init__(self, data_dir: Path | None = None, allow_revisit: bool = False):
        self.data_dir = data_dir
        self.allow_revisit = allow_revisit
        self.sessions: dict[str, Session] = {}
        self.lock = threading.Lock()
        if data_dir is not None and data_dir.is_dir():
            for child in sorted(data_dir.iterdir()):
                if (child / TRANSCRIPT_FILE).is_file():
                    session = Session.load(child, allow_revisit)
                    self.sessions[session.session_id] = session

    def create(self, transcript: DialogTranscript) -> Session:
        session_id = uuid.uuid4().hex[:12]
        directory = self.data_dir / session_id if self.data_dir else None
        session = Session(session_id, transcript, directory, self.allow_revisit)
        session._save()
        with self.lock:
            self.sessions[session_id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self.lock:
            return self.sessions.get(session_id)
