"""Local HTTP facade over sessions, validation, and calendar lookups.

All endpoints speak JSON except export, which returns the annotation
text itself.  The transcript endpoint masks every utterance past the
session cursor, so a client cannot read ahead no matter what it asks
for.  Responses are computed under the session lock.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from . import calendar as cal
from .fileformat import record_from_json, record_to_json
from .guide import HELP_CARDS
from .model import Month
from .session import (
    DialogTranscript,
    ExportBlockedError,
    Session,
    SessionStateError,
    SessionStore,
    UnknownLabelError,
)
from .validator import validate_record


def _error(status: int, message: str, **extra) -> JSONResponse:
    return JSONResponse({"error": message, **extra}, status_code=status)


def _session_summary(session: Session) -> dict:
    return {
        "sessionId": session.session_id,
        "dialogDate": session.dialog_date.iso,
        "cursor": session.cursor,
        "utteranceCount": len(session.transcript.utterances),
        "recordCount": len(session.records),
        "allowRevisit": session.allow_revisit,
    }


def _month_payload(year: int, month: Month) -> dict:
    first_weekday = int(cal.weekday_of(cal.CalendarDate(year, month, 1)))
    day_count = cal.days_in_month(year, month)
    cells: list[int | None] = [None] * first_weekday
    cells += list(range(1, day_count + 1))
    cells += [None] * (-len(cells) % 7)
    return {
        "year": year,
        "month": month.token,
        "title": f"{month.abbreviation} {year}",
        "weekdays": ["sunday", "monday", "tuesday", "wednesday",
                     "thursday", "friday", "saturday"],
        "weeks": [cells[i:i + 7] for i in range(0, len(cells), 7)],
        "lines": cal.month_grid(year, month),
    }


def create_app(store: SessionStore | None = None,
               frontend_dir: Path | None = None) -> FastAPI:
    if store is None:
        store = SessionStore()
    app = FastAPI(title="temporal coding annotation service")
    app.state.store = store

    def _get_session(session_id: str) -> Session | None:
        return store.get(session_id)

    @app.post("/session", status_code=201)
    async def create_session(request: Request):
        try:
            transcript = DialogTranscript.from_json(await request.json())
        except ValueError as exc:
            return _error(422, f"bad transcript: {exc}")
        session = store.create(transcript)
        return _session_summary(session)

    @app.get("/session/{session_id}")
    def session_summary(session_id: str):
        session = _get_session(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            return _session_summary(session)

    @app.get("/session/{session_id}/transcript")
    def transcript(session_id: str):
        session = _get_session(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            return {
                "dialogDate": session.dialog_date.iso,
                "cursor": session.cursor,
                "utterances": session.visible_transcript(),
            }

    @app.get("/session/{session_id}/records")
    def all_records(session_id: str):
        session = _get_session(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            ordered = session.annotation_file().records
            return {"records": [record_to_json(r) for r in ordered]}

    @app.get("/session/{session_id}/record/{label}")
    def get_record(session_id: str, label: str):
        session = _get_session(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            record = session.get_record(label)
            if record is None:
                return _error(404, "no record with this label")
            diagnostics = validate_record(record, session.dialog_date)
            return {
                "record": record_to_json(record),
                "diagnostics": [d.to_json() for d in diagnostics],
            }

    @app.put("/session/{session_id}/record/{label}")
    async def put_record(session_id: str, label: str, request: Request):
        session = _get_session(session_id)
        if session is None:
            return _error(404, "unknown session")
        try:
            payload = await request.json()
        except ValueError:
            return _error(422, "body is not JSON")
        try:
            record = record_from_json(payload)
        except ValueError as exc:
            return _error(422, f"bad record: {exc}")
        if record.label.text != label:
            return _error(422, "label in body does not match the URL")
        with session.lock:
            try:
                diagnostics, suggestions = session.put_record(record)
            except UnknownLabelError:
                return _error(404, "label names no utterance of this dialog")
            except SessionStateError as exc:
                return _error(409, str(exc))
            return {
                "record": record_to_json(record),
                "diagnostics": [d.to_json() for d in diagnostics],
                "suggestions": [s.to_json() for s in suggestions],
            }

    @app.post("/session/{session_id}/advance")
    def advance(session_id: str):
        session = _get_session(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            try:
                cursor = session.advance()
            except SessionStateError as exc:
                return _error(409, str(exc))
            return {"cursor": cursor}

    @app.get("/session/{session_id}/export")
    def export(session_id: str):
        session = _get_session(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            try:
                text = session.export_text()
            except ExportBlockedError as exc:
                return _error(409, "export blocked by error diagnostics",
                              diagnostics=[d.to_json() for d in exc.diagnostics])
            return PlainTextResponse(text)

    @app.get("/calendar/{year}/{month}")
    def calendar_month(year: int, month: str):
        if not cal.MIN_YEAR <= year <= cal.MAX_YEAR:
            return _error(422, f"year outside {cal.MIN_YEAR}..{cal.MAX_YEAR}")
        try:
            m = Month(int(month)) if month.isdigit() else Month.from_token(month)
        except ValueError:
            return _error(422, "month must be 1..12 or a month name")
        return _month_payload(year, m)

    @app.get("/help")
    def help_cards():
        return {"cards": list(HELP_CARDS)}

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="ui")

    return app
