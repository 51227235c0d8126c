import itertools

import pytest

from rrbtri.geometry import orient
from rrbtri.pointset import ColoredPointSet

ACCEPTANCE_LINES = []


@pytest.fixture
def square():
    # reds on one diagonal, blues on the other
    return ColoredPointSet(((0, 0), (10, 10)), ((10, 0), (0, 10)))


@pytest.fixture
def lone_blue():
    return ColoredPointSet(((0, 0), (4, 0)), ((1, 3),))


def gp_bruteforce(points) -> bool:
    if len(set(points)) != len(points):
        return False
    return all(orient(a, b, c) != 0 for a, b, c in itertools.combinations(points, 3))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
