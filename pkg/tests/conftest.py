import pytest

from aomoto.corpus import builtin
from aomoto.flags import Flag


@pytest.fixture
def e1():
    return builtin("E1")


@pytest.fixture
def e3():
    return builtin("E3")


@pytest.fixture
def e4():
    return builtin("E4")


@pytest.fixture
def fig1():
    return builtin("FIG1")


@pytest.fixture
def e1_flag():
    # F^1: y = 3x - 10, F^0 = (-5, -25)
    return Flag.from_levels([((-5, -25), []), ((0, -10), [(1, 3)]), ((0, 0), [(1, 0), (0, 1)])])


def signs(text):
    return tuple(1 if ch == "+" else -1 for ch in text)
