import pytest

from randsub import make_set

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def S():
    return make_set


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
