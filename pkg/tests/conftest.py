import os
from pathlib import Path

import pytest

# Cross-check the kernel's incremental scoring against full recounts in every
# climb the suite runs.
os.environ.setdefault("DRSMATCH_DEBUG", "1")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture(scope="session", autouse=True)
def warm_kernel():
    """Compile the jit kernel once so timed tests measure the work, not the jit."""
    from drsmatch import MatchConfig, match_forms, parse_document

    tiny = parse_document("b1 REF x1\nb1 cat n.01 x1\n")
    match_forms(tiny, tiny, MatchConfig(restarts=1))


@pytest.fixture(scope="session")
def smiled_form(fixtures):
    from drsmatch import parse_corpus

    return parse_corpus((fixtures / "he_smiled.clf").read_text())[0].form


@pytest.fixture(scope="session")
def fled_form(fixtures):
    from drsmatch import parse_corpus

    return parse_corpus((fixtures / "she_fled.clf").read_text())[0].form


@pytest.fixture(scope="session")
def dishes_en(fixtures):
    from drsmatch import parse_corpus

    return parse_corpus((fixtures / "removed_dishes_en.clf").read_text())[0].form


@pytest.fixture(scope="session")
def dishes_nl(fixtures):
    from drsmatch import parse_corpus

    return parse_corpus((fixtures / "removed_dishes_nl.clf").read_text())[0].form


@pytest.fixture(scope="session")
def sample_docs(fixtures):
    from drsmatch import parse_corpus

    return parse_corpus((fixtures / "sample_corpus.clf").read_text())
