import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from dcdisamb import load_corpus, load_lexicon  # noqa: E402
from dcdisamb.pipeline import prepare  # noqa: E402
from dcdisamb.synthetic import LEXICON_FORMS, generate_corpus  # noqa: E402
from dcdisamb.lexicon import Lexicon  # noqa: E402

DATA = Path(__file__).parent / "data"

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    key = (mark.args[0], mark.args[1])
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = "SKIP" if rep.skipped else ("PASS" if rep.passed else "FAIL")
        prev = _criteria.get(key)
        if prev is None or prev == "PASS" or (prev == "SKIP" and status == "FAIL"):
            _criteria[key] = status


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), status in sorted(_criteria.items()):
        terminalreporter.write_line(f"criterion {num:>2}: {status:4}  {title}")


@pytest.fixture(scope="session")
def fixture_corpus_path():
    return DATA / "fixture_corpus.txt"


@pytest.fixture(scope="session")
def fixture_lexicon_path():
    return DATA / "fixture_lexicon.txt"


@pytest.fixture(scope="session")
def fixture_dataset(fixture_corpus_path, fixture_lexicon_path):
    return prepare(load_corpus(fixture_corpus_path), load_lexicon(fixture_lexicon_path))


@pytest.fixture(scope="session")
def synthetic_dataset():
    return prepare(generate_corpus(240, seed=0), Lexicon.from_forms(LEXICON_FORMS))
