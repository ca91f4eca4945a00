from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from zonotopal.fileio import EXAMPLE_GRAPH, EXAMPLE_MATRIX, load_graph, load_matrix
from zonotopal.linalg import QMatrix

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def example_A() -> QMatrix:
    return load_matrix(EXAMPLE_MATRIX)


@pytest.fixture
def example_G():
    return load_graph(EXAMPLE_GRAPH)


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance_log(request):
    """Collects one status line per acceptance criterion for the terminal summary."""
    return request.config.stash[_ACCEPTANCE]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
