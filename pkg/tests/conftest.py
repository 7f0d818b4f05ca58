import pytest

from stabforce import StabilitySystem, extend_to_chain_limit
from stabforce.ordinal import parse_ordinal as O
from stabforce.simulate import make_pattern


@pytest.fixture
def pstar():
    """Bound w*3+1 with the single level-1 exception w*2 -> 5."""
    return StabilitySystem(O("w*3+1"), {1: {O("w*2"): O("5")}})


@pytest.fixture
def qstar(pstar):
    """pstar extended to bound w*4+1 with level-2 exception w*4 -> 5."""
    return extend_to_chain_limit(pstar, 1, O("5"))


@pytest.fixture
def pattern_p1():
    return make_pattern([("w*6", True, [])])


@pytest.fixture
def pattern_p2():
    return make_pattern([("w*6", True, []), ("w*20", True, [])],
                        [("w*6", "w*20", 1)])


@pytest.fixture
def pattern_p3():
    return make_pattern([("w*6", True, [1]), ("w*20", True, [])],
                        [("w*6", "w*20", 2)])
