from __future__ import annotations

import pytest

from deltaindex.session import suite_session


@pytest.fixture(scope="session")
def regular():
    return suite_session("regular")


@pytest.fixture(scope="session")
def cusp():
    return suite_session("cusp")


@pytest.fixture(scope="session")
def x4():
    return suite_session("x4")


@pytest.fixture(scope="session")
def y2x5():
    return suite_session("y2x5")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
