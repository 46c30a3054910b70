import json
from pathlib import Path

import pytest
from hypothesis import settings

import tca

DATA_DIR = Path(__file__).parent / "data"

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def appendix_text() -> str:
    return (DATA_DIR / "appendix.tca").read_text("ascii")


@pytest.fixture(scope="session")
def appendix_file(appendix_text) -> tca.AnnotationFile:
    return tca.parse_annotation_file(appendix_text)


@pytest.fixture(scope="session")
def canonical_appendix(appendix_file) -> str:
    return tca.serialize_annotation_file(appendix_file)


@pytest.fixture(scope="session")
def background_transcript_data() -> dict:
    return json.loads((DATA_DIR / "background_transcript.json").read_text("utf-8"))


@pytest.fixture()
def background_transcript(background_transcript_data) -> tca.DialogTranscript:
    return tca.DialogTranscript.from_json(background_transcript_data)


@pytest.fixture(scope="session")
def background_gold_text() -> str:
    return (DATA_DIR / "background_gold.tca").read_text("ascii")


@pytest.fixture(scope="session")
def background_gold_file(background_gold_text) -> tca.AnnotationFile:
    return tca.parse_annotation_file(background_gold_text)


def all_null_record_json(label: str) -> dict:
    from tca.model import SLOT_NAMES
    return {"Label": label,
            **{slot: {"qualifiers": [], "value": None} for slot in SLOT_NAMES}}


def weekday_split_files() -> tuple[tca.AnnotationFile, tca.AnnotationFile]:
    """Two codings of a 20-utterance dialog that disagree on the start
    weekday of three records.  Per slot SWeekDay: observed agreement is
    17/20 = 0.85; coder A splits monday/tuesday 10/10, coder B 9/11, so
    chance agreement is 0.5 and kappa (0.85 - 0.5) / 0.5 = 0.7."""
    from tca.model import DialogDate, Month, TemporalRecord, TimePoint, parse_label

    def coding(tokens):
        records = tuple(
            TemporalRecord(parse_label(str(i + 1)), TimePoint.of(weekday=token))
            for i, token in enumerate(tokens))
        return tca.AnnotationFile(DialogDate(1993, Month.MARCH, 5), records)

    a = coding(["monday"] * 10 + ["tuesday"] * 10)
    b = coding(["monday"] * 8 + ["tuesday"] * 2 + ["monday"] + ["tuesday"] * 9)
    return a, b
