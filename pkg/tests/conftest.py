import pytest

from harmdiff.certificates import CATALAN_2_MINUS_3, CATALAN_3_MINUS_2
from harmdiff.verify import catalan_census, gersonides_census


@pytest.fixture(scope="session", autouse=True)
def axioms_hold_to_2_64():
    """The Gersonides and Catalan base facts are axioms; sanity-check them by search."""
    assert gersonides_census(64) == ((1, 2), (2, 3), (3, 4), (8, 9))
    three_minus_two, two_minus_three = catalan_census(64)
    assert three_minus_two == CATALAN_3_MINUS_2
    assert two_minus_three == CATALAN_2_MINUS_3


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
