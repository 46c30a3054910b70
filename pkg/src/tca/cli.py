"""Command-line entry point.

Exit codes: 0 clean (warnings allowed), 1 error-level diagnostics,
2 unreadable input (I/O, JSON, or annotation syntax).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .agreement import (
    DateMismatchError,
    compare_files,
    format_gold_score,
    format_report,
    score_against_gold,
)
from .diagnostics import has_errors
from .fileformat import (
    AnnotationFile,
    AnnotationSyntaxError,
    parse_annotation_file,
    serialize_annotation_file,
)
from .model import RecordLabel, TemporalRecord
from .resolver import DialogContext, resolve_record
from .session import DialogTranscript, SessionStore, load_transcript
from .validator import validate_file

DEFAULT_PORT = 8787
PORT_ENV_VAR = "TCA_PORT"

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_UNREADABLE = 2


def _read_annotation(path: Path) -> AnnotationFile | None:
    try:
        text = path.read_text("ascii")
    except (OSError, UnicodeError) as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        return None
    try:
        return parse_annotation_file(text)
    except AnnotationSyntaxError as exc:
        for d in exc.diagnostics:
            print(d.format_line(), file=sys.stderr)
        return None


def _cmd_validate(args) -> int:
    parsed = _read_annotation(Path(args.file))
    if parsed is None:
        return EXIT_UNREADABLE
    diagnostics = validate_file(parsed)
    for d in diagnostics:
        print(d.format_line())
    return EXIT_DIAGNOSTICS if has_errors(diagnostics) else EXIT_OK


def _cmd_resolve(args) -> int:
    path = Path(args.file)
    parsed = _read_annotation(path)
    if parsed is None:
        return EXIT_UNREADABLE
    diagnostics = validate_file(parsed)
    if has_errors(diagnostics):
        for d in diagnostics:
            if d.is_error:
                print(d.format_line(), file=sys.stderr)
        print("fix errors before resolving", file=sys.stderr)
        return EXIT_DIAGNOSTICS

    resolved: list[TemporalRecord] = []
    for i, record in enumerate(parsed.records):
        ctx = DialogContext(parsed.dialog_date, tuple(parsed.records[:i]))
        new_record, suggestions = resolve_record(record, ctx)
        resolved.append(new_record)
        for s in suggestions:
            print(f"{record.label.text}\t{s.field_path}\t{s.proposed_value}"
                  f"\t{s.rule}\t{s.confidence}")
    if args.apply_forced:
        completed = AnnotationFile(parsed.dialog_date, tuple(resolved))
        path.write_text(serialize_annotation_file(completed), "ascii")
    return EXIT_OK


def _cmd_compare(args) -> int:
    a = _read_annotation(Path(args.file_a))
    if a is None:
        return EXIT_UNREADABLE
    b = _read_annotation(Path(args.file_b))
    if b is None:
        return EXIT_UNREADABLE
    try:
        if args.gold:
            print(format_gold_score(score_against_gold(a, b)))
        else:
            print(format_report(compare_files(a, b)))
    except DateMismatchError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_UNREADABLE
    return EXIT_OK


def _load_transcript_arg(path_text: str) -> DialogTranscript | None:
    try:
        return load_transcript(Path(path_text))
    except (OSError, ValueError) as exc:
        print(f"cannot load transcript {path_text}: {exc}", file=sys.stderr)
        return None


def _cmd_template(args) -> int:
    transcript = _load_transcript_arg(args.dialog)
    if transcript is None:
        return EXIT_UNREADABLE
    records = tuple(TemporalRecord(RecordLabel.lenient(u.label))
                    for u in transcript.utterances)
    skeleton = AnnotationFile(transcript.dialog_date, records)
    sys.stdout.write(serialize_annotation_file(skeleton))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    transcript = _load_transcript_arg(args.dialog)
    if transcript is None:
        return EXIT_UNREADABLE
    data_dir = Path(args.data_dir) if args.data_dir else \
        Path(tempfile.mkdtemp(prefix="tca-sessions-"))
    store = SessionStore(data_dir, allow_revisit=args.allow_revisit)
    session = store.create(transcript)
    frontend = Path(args.frontend) if args.frontend else None
    app = create_app(store, frontend_dir=frontend)
    print(f"session {session.session_id} for dialog dated"
          f" {transcript.dialog_date.iso}")
    print(f"data directory: {data_dir}")
    print(f"http://{args.host}:{args.port}/session/{session.session_id}/transcript")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tca",
        description="Annotate, check, resolve, and compare temporal codings"
                    " of scheduling dialogs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a .tca file; exit 1 on errors")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("resolve",
                       help="print rule suggestions; optionally apply the"
                            " forced ones in place")
    p.add_argument("file")
    p.add_argument("--apply-forced", action="store_true",
                   help="write calendar-forced completions back to the file")
    p.set_defaults(func=_cmd_resolve)

    p = sub.add_parser("compare", help="agreement between two codings")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--gold", action="store_true",
                   help="score the first file against the second as reference")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("template",
                       help="emit an all-null skeleton for a transcript")
    p.add_argument("dialog", help="transcript JSON file")
    p.set_defaults(func=_cmd_template)

    p = sub.add_parser("serve", help="start the annotation HTTP service")
    p.add_argument("dialog", help="transcript JSON file")
    p.add_argument("--port", type=int,
                   default=int(os.environ.get(PORT_ENV_VAR, DEFAULT_PORT)))
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data-dir", help="directory for session persistence")
    p.add_argument("--allow-revisit", action="store_true",
                   help="let the coder edit records behind the cursor")
    p.add_argument("--frontend", help="directory with built UI assets")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
