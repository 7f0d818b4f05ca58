import random

import pytest
from hypothesis import given, strategies as st

from stabforce.errors import EmptySetError, NonCanonicalError, OrdinalSyntaxError
from stabforce.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    IntervalSet,
    Ordinal,
    compare,
    format_ordinal,
    largest_limit_below,
    parse_ordinal as O,
    sup_of_limits_between,
)


def test_parse_zero():
    assert O("0") == ZERO
    assert O("0").is_zero


def test_parse_full_term_sequence():
    assert O("w^2*3+w+4").terms == ((2, 3), (1, 1), (0, 4))


def test_parse_rejects_equal_exponents():
    with pytest.raises(NonCanonicalError):
        O("w+w")


@pytest.mark.parametrize("text", ["w^1", "w^0", "w*1", "w*0", "w+0", "0+w", "3+2"])
def test_parse_rejects_noncanonical_spellings(text):
    with pytest.raises(NonCanonicalError):
        O(text)


@pytest.mark.parametrize("text", ["", "w^", "w*", "x", "w ^2", "07", "+w", "w+", "w^2*"])
def test_parse_rejects_bad_tokens(text):
    with pytest.raises(OrdinalSyntaxError):
        O(text)


def test_format_examples():
    assert format_ordinal(ZERO) == "0"
    assert format_ordinal(Ordinal(((1, 2), (0, 3)))) == "w*2+3"
    assert format_ordinal(Ordinal(((3, 1),))) == "w^3"


def test_compare_examples():
    assert compare(O("5"), O("w")) == -1
    assert compare(O("w*2+3"), O("w^2")) == -1
    a = O("w^2*3+w+4")
    assert compare(a, a) == 0
    assert compare(O("w"), O("5")) == 1


def test_add_examples():
    assert O("1") + O("w") == O("w")
    assert O("w") + O("1") == O("w+1")
    assert O("w+1") + O("w") == O("w*2")


def test_classify_examples():
    assert O("w").classify() == "limit" and not O("w").is_lim2
    assert O("w^2").classify() == "limit" and O("w^2").is_lim2
    assert O("w*2+3").classify() == "successor"
    assert O("0").classify() == "zero"


def test_predecessor():
    assert O("w*2+3").predecessor() == O("w*2+2")
    assert O("w+1").predecessor() == O("w")
    with pytest.raises(ValueError):
        O("w").predecessor()
    with pytest.raises(ValueError):
        ZERO.predecessor()


def test_largest_limit_below():
    assert largest_limit_below(O("w*2+5")) == O("w*2")
    assert largest_limit_below(O("w*3")) == O("w*2")
    assert largest_limit_below(O("w^2+w")) == O("w^2")
    assert largest_limit_below(O("w")) is None
    assert largest_limit_below(O("7")) is None
    assert largest_limit_below(O("w^2")) is None  # cofinal, no largest


def test_sup_of_limits_between():
    assert sup_of_limits_between(O("0"), O("w^2")) == O("w^2")
    assert sup_of_limits_between(O("w"), O("w*3")) == O("w*2")
    assert sup_of_limits_between(O("w*2"), O("w*3")) is None
    assert sup_of_limits_between(O("5"), O("w+1")) == O("w")


# -- interval sets ------------------------------------------------------------


def test_interval_set_has_max_examples():
    s = IntervalSet.of((O("0"), O("6")))
    assert s.has_max() and s.max_element() == O("5") and s.sup() == O("5")
    t = IntervalSet.of((O("0"), O("6")), (O("w*2+1"), O("w*3")))
    assert not t.has_max()
    assert t.sup() == O("w*3")
    assert not t.member(O("w"))


def test_interval_set_normalization():
    s = IntervalSet.of((O("6"), O("10")), (O("0"), O("6")), (O("2"), O("4")))
    assert [str(iv) for iv in s] == ["[0, 10)"]


def test_interval_set_ops():
    a = IntervalSet.of((O("0"), O("w")), (O("w*2"), O("w*3")))
    b = IntervalSet.of((O("5"), O("w*2+5")))
    assert a.intersect(b) == IntervalSet.of((O("5"), O("w")), (O("w*2"), O("w*2+5")))
    assert a.union(b) == IntervalSet.of((O("0"), O("w*3")))
    assert a.filter_below(O("w*2+1")) == IntervalSet.of((O("0"), O("w")), (O("w*2"), O("w*2+1")))
    assert IntervalSet.empty().is_empty
    with pytest.raises(EmptySetError):
        IntervalSet.empty().sup()
    with pytest.raises(EmptySetError):
        IntervalSet.empty().has_max()


# -- properties ----------------------------------------------------------------

_ordinals = st.lists(
    st.tuples(st.integers(min_value=0, max_value=4), st.integers(min_value=1, max_value=9)),
    max_size=4,
).map(lambda pairs: Ordinal(sorted({e: c for e, c in pairs}.items(), reverse=True)))


@given(_ordinals)
def test_roundtrip_property(a):
    assert O(format_ordinal(a)) == a


@given(_ordinals, _ordinals, _ordinals)
def test_add_associative(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(_ordinals, _ordinals)
def test_compare_total(a, b):
    assert (compare(a, b), compare(b, a)) in [(-1, 1), (1, -1), (0, 0)]
    assert (compare(a, b) == 0) == (a == b)


@given(_ordinals)
def test_add_one_is_successor(a):
    s = a + ONE
    assert s.is_successor and s.predecessor() == a and a < s


_interval_sets = st.lists(
    st.tuples(_ordinals, _ordinals).map(lambda ab: tuple(sorted(ab, key=lambda a: a.terms))),
    max_size=4,
).map(lambda pairs: IntervalSet.of(*[(a, b) for a, b in pairs if a < b]))


@given(_interval_sets, _interval_sets, _ordinals)
def test_interval_set_algebra_matches_membership(s, t, x):
    assert s.union(t).member(x) == (s.member(x) or t.member(x))
    assert s.intersect(t).member(x) == (s.member(x) and t.member(x))
    assert s.filter_below(x).member(x) is False


@given(_interval_sets)
def test_interval_bounds_classify_max(s):
    if s.is_empty:
        return
    if s.has_max():
        m = s.max_element()
        assert s.member(m) and not s.member(m + ONE) and s.sup() == m
    else:
        assert not s.member(s.sup())


def test_roundtrip_1000_random():
    rng = random.Random(0)
    for _ in range(1000):
        exps = sorted(rng.sample(range(0, 6), rng.randint(0, 4)), reverse=True)
        a = Ordinal([(e, rng.randint(1, 9)) for e in exps])
        assert O(format_ordinal(a)) == a


def test_classify_matches_enumeration():
    # shape w*m+n for m, n <= 20: successor iff n > 0, never lim2 below w^2
    for m in range(21):
        for n in range(21):
            a = Ordinal(((1, m),) if m else ()) + Ordinal.from_int(n)
            if m == 0 and n == 0:
                assert a.classify() == "zero"
            elif n > 0:
                assert a.classify() == "successor"
            else:
                assert a.classify() == "limit"
            assert not a.is_lim2


def test_omega_constants():
    assert OMEGA == O("w")
    assert ZERO + OMEGA == OMEGA
    assert (O("w*3+5") + OMEGA) == O("w*4")
