import pytest

from cyclicweights.census import run_census
from cyclicweights.gf import make_field

# Filled by test_acceptance; echoed after the run so the verdict lines are
# visible even when pytest captures stdout.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def f5():
    return make_field(3, 5)


@pytest.fixture(scope="session")
def f3():
    return make_field(3, 3)


@pytest.fixture(scope="session")
def census5(f5):
    return run_census(f5)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
