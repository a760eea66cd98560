import functools
import sys
from pathlib import Path

import pytest
from hypothesis import settings

from rtgames.graph import build
from rtgames.modelfile import parse_model

sys.path.insert(0, str(Path(__file__).parent))

CORPUS = Path(__file__).resolve().parents[1] / "corpus"

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def load(name: str):
    return parse_model((CORPUS / f"{name}.rtg").read_text())


@functools.lru_cache(maxsize=None)
def graph(name: str):
    return build(load(name))


def corpus_names() -> list:
    return sorted(p.stem for p in CORPUS.glob("*.rtg"))


@pytest.fixture
def a0():
    return load("a0")


@pytest.fixture
def a2():
    return load("a2")


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
