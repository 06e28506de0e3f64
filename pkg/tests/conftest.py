import pytest

from elspl import Instance

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


@pytest.fixture
def t2_instance():
    # d=(3,4), s=(10,15), p=(1,2), B=(5,100), h=1, b=2; optimum 27 by hand:
    # produce each demand in its own period on the first piece, 13 + 14
    return Instance.linear((3, 4), (5, 100), (10, 15), (1, 2), 1, 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
