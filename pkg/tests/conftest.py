import itertools
from pathlib import Path

import pytest

from gtmatroid.graph import Multigraph

GRAPHS = Path(__file__).resolve().parent.parent / "graphs"


def complete(n):
    return Multigraph.from_edges(n, itertools.combinations(range(1, n + 1), 2))


@pytest.fixture(scope="session")
def graphs_dir():
    return GRAPHS


@pytest.fixture
def k2():
    return Multigraph.from_edges(2, [(1, 2)])


@pytest.fixture
def k3():
    return complete(3)


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def k6():
    return complete(6)


@pytest.fixture
def loop():
    return Multigraph.from_edges(1, [(1, 1)])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
