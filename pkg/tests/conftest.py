from pathlib import Path

import pytest

from arianna import build_model, load_model, read_corpus
from arianna.corpus_io import CorpusSource

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

DEMO_TEXT = "when there was na company"


@pytest.fixture(scope="session")
def jane_path() -> Path:
    return FIXTURES / "jane_eyre_p1.txt"


@pytest.fixture(scope="session")
def jane_text(jane_path) -> str:
    return read_corpus(CorpusSource.from_paths([jane_path]))


@pytest.fixture(scope="session")
def jane_model(jane_text):
    return build_model(jane_text, kind="internal", name="je")


@pytest.fixture(scope="session")
def external_model():
    return load_model(FIXTURES / "external_fixture.model")
