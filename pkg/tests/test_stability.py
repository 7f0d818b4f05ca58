import pytest

from stabforce import (
    IntervalSet,
    StabilitySystem,
    chain_liminf,
    check_predecessor_laws,
    check_tree_properties,
    dom_f,
    f_eval,
    is_k_lim2,
    is_k_limit,
    le_k,
    lt_k,
    pred_set,
    probe_points,
    system_from_dict,
    system_from_json,
    system_to_dict,
    system_to_json,
    validate,
)
from stabforce.errors import NotLim2Error, OutOfBoundsError
from stabforce.ordinal import parse_ordinal as O


def test_dom_f_examples(pstar):
    assert dom_f(pstar, 1, O("w")) is True
    assert dom_f(pstar, 2, O("w*2")) is False  # predecessors [0,5] have a max
    assert dom_f(pstar, 2, O("w*3")) is True
    assert dom_f(pstar, 1, O("7")) is False
    with pytest.raises(OutOfBoundsError):
        dom_f(pstar, 1, O("w*4"))


def test_f_eval_examples(pstar):
    assert f_eval(pstar, 1, O("w*2")) == O("5")
    assert f_eval(pstar, 1, O("w")) == O("w")
    assert f_eval(pstar, 2, O("w*2")) is None


def test_lt_k_examples(pstar):
    assert lt_k(pstar, 1, O("3"), O("w*3")) is True
    assert lt_k(pstar, 1, O("7"), O("w*3")) is False
    for beta in ["0", "5", "w", "w*2", "w*2+9"]:
        b = O(beta)
        assert lt_k(pstar, 1, b, b + O("1")) is True
    assert lt_k(pstar, 1, O("w"), O("w")) is False  # strict
    assert le_k(pstar, 1, O("w"), O("w")) is True


def test_zero_below_everything(pstar):
    for k in (1, 2, 3):
        for b in ["1", "5", "w", "w*2", "w*3"]:
            assert lt_k(pstar, k, O("0"), O(b)) is True


def test_pred_set_examples(pstar):
    # the exception at w*2 caps everything below it at 5; w*2 itself passes
    # the quantifier (only points strictly above constrain), so the upper
    # stretch is closed on the left
    assert pred_set(pstar, 1, O("w*3")) == IntervalSet.of(
        (O("0"), O("6")), (O("w*2"), O("w*3")))
    assert pred_set(pstar, 1, O("w")) == IntervalSet.of((O("0"), O("w")))
    assert pred_set(pstar, 1, O("w*2")) == IntervalSet.of((O("0"), O("6")))
    assert pred_set(pstar, 1, O("0")).is_empty


def test_pred_set_consistent_with_lt(pstar):
    for k in (1, 2):
        for b in ["w", "w*2", "w*2+3", "w*3"]:
            s = pred_set(pstar, k, O(b))
            for a in ["0", "1", "5", "6", "7", "w", "w+1", "w*2", "w*2+1"]:
                if O(a) < O(b):
                    assert s.member(O(a)) == lt_k(pstar, k, O(a), O(b))


def test_is_k_limit_examples(pstar):
    assert is_k_limit(pstar, 1, O("w*3")) is True
    assert is_k_limit(pstar, 1, O("w*2")) is False
    assert is_k_lim2(pstar, 1, O("w*3")) is False


def test_lim2_structure_above_w_squared():
    # at a lim2 ordinal the level limits below are cofinal whenever the
    # predecessor set is unbounded, at every level
    p = StabilitySystem(O("w^2+1"))
    assert is_k_lim2(p, 1, O("w^2")) and is_k_lim2(p, 2, O("w^2"))
    q = StabilitySystem(O("w^2+1"), {1: {O("w*3"): O("2")}})
    assert is_k_lim2(q, 1, O("w^2"))
    assert pred_set(q, 1, O("w^2")) == IntervalSet.of(
        (O("0"), O("3")), (O("w*3"), O("w^2")))
    # non-lim2 ordinals are never level lim2 points
    assert not is_k_lim2(q, 1, O("w*5"))


def test_lim2_points_refuse_below_identity_values():
    # continuity pins the map to the identity at lim2 chain points, at the
    # base level and at derived levels alike
    for level in (1, 2):
        p = StabilitySystem(O("w^2+w+1"), {level: {O("w^2"): O("5")}})
        assert "V4" in [v.check for v in validate(p).violations]


def test_chain_liminf_examples(pstar):
    p = StabilitySystem(O("w^2+1"))
    assert chain_liminf(p, 0, O("w^2")) == O("w^2")
    q = StabilitySystem(O("w^2+1"), {1: {O("w*3"): O("2")}})
    assert chain_liminf(q, 0, O("w^2")) == O("w^2")
    with pytest.raises(NotLim2Error):
        chain_liminf(pstar, 0, O("w"))


def test_validate_pstar(pstar):
    assert validate(pstar).valid


def test_validate_v5_counterexample(pstar):
    # two-exception system where every other check passes but V5 fails at w*2
    p = StabilitySystem(O("w*3+1"), {1: {O("w"): O("5"), O("w*2"): O("7")}})
    rep = validate(p)
    assert not rep.valid
    assert [(v.check, v.subject) for v in rep.violations] == [("V5", "w*2")]


def test_validate_v1_limit_bound():
    rep = validate(StabilitySystem(O("w*3")))
    assert not rep.valid
    assert [v.check for v in rep.violations] == ["V1"]


def test_validate_v2_v3():
    p = StabilitySystem(O("w*3+1"), {1: {O("w+1"): O("0")}})
    assert [v.check for v in validate(p).violations] == ["V2"]
    q = StabilitySystem(O("w*3+1"), {1: {O("w"): O("w+3")}})
    checks = [v.check for v in validate(q).violations]
    assert "V3" in checks


def test_validate_v4_lim2_key():
    # a below-identity value at a Lim2 point breaks continuity
    p = StabilitySystem(O("w^2+w+1"), {1: {O("w^2"): O("3")}})
    checks = [v.check for v in validate(p).violations]
    assert "V4" in checks
    # identity-valued keys never exist (normalization keeps them out of the
    # map), and a value at a non-lim2 limit is fine
    q = StabilitySystem(O("w^2+w+1"), {1: {O("w*2"): O("3")}})
    assert validate(q).valid


def test_check_tree_properties_examples(pstar):
    probe = probe_points(pstar, extra=[O("0"), O("1"), O("5"), O("w"), O("w*2"), O("w*3")])
    assert check_tree_properties(pstar, 1, probe).passed
    assert check_tree_properties(pstar, 1, [O("0")]).passed
    # the derived orders satisfy the tree laws for arbitrary exception data,
    # so even the V5-violating system yields a clean report
    corrupted = StabilitySystem(O("w*3+1"), {1: {O("w"): O("5"), O("w*2"): O("7")}})
    assert not validate(corrupted).valid
    assert check_tree_properties(corrupted, 1).passed


def test_levels_refine(pstar, qstar):
    pts = probe_points(qstar)
    for a in pts:
        for b in pts:
            if lt_k(qstar, 2, a, b):
                assert lt_k(qstar, 1, a, b)


def test_monotone_default(qstar):
    # no exception keys in (5, w) or (w*2+1, w*2+7): lt holds at every level
    for k in (1, 2, 3):
        assert lt_k(qstar, k, O("w*2+1"), O("w*2+7"))
        assert lt_k(qstar, k, O("5"), O("w"))


def test_check_predecessor_laws_examples(pstar):
    rep = check_predecessor_laws(pstar, 1)
    assert rep.passed
    p = StabilitySystem(O("w^2+1"))
    assert check_predecessor_laws(p, 1, probe=[O("w^2")]).passed
    assert is_k_limit(p, 1, O("w^2"))  # predecessors cofinal at the fixed point
    # f1(w*2) = 5 is the largest level-1 predecessor of w*2
    s = pred_set(pstar, 1, O("w*2"))
    assert s.has_max() and s.max_element() == O("5")


def test_multilevel_fixture_hand_values():
    # three levels of exceptions interacting; every expected value below was
    # worked out by hand from the defining quantifiers
    f = StabilitySystem(O("w*6+1"), {
        1: {O("w*2"): O("5"), O("w*5"): O("w*2+1")},
        2: {O("w*3"): O("w*2+2")},
        3: {O("w*4"): O("w*2+1")},
    })
    assert validate(f).valid

    assert pred_set(f, 1, O("w*6")) == IntervalSet.of(
        (O("0"), O("6")), (O("w*2"), O("w*2+2")), (O("w*5"), O("w*6")))
    # the level-2 key at w*3 is not on the level-1 chain of w*6 (the w*5
    # exception cuts it off), so it constrains nothing up there
    assert pred_set(f, 2, O("w*6")) == pred_set(f, 1, O("w*6"))
    assert pred_set(f, 3, O("w*6")) == pred_set(f, 1, O("w*6"))

    assert pred_set(f, 2, O("w*4")) == IntervalSet.of(
        (O("0"), O("6")), (O("w*2"), O("w*2+3")), (O("w*3"), O("w*4")))
    assert lt_k(f, 2, O("w*2+1"), O("w*4"))
    assert not lt_k(f, 2, O("w*2+3"), O("w*4"))
    assert is_k_limit(f, 2, O("w*4"))

    # at w*5 every deeper key falls off the chain and the level-1 exception
    # itself caps the set, leaving its own value as the maximum
    assert pred_set(f, 3, O("w*5")) == IntervalSet.of(
        (O("0"), O("6")), (O("w*2"), O("w*2+2")))
    assert pred_set(f, 3, O("w*5")).max_element() == O("w*2+1") == f_eval(f, 1, O("w*5"))
    assert not is_k_limit(f, 3, O("w*5"))

    for k in range(1, 5):
        assert check_tree_properties(f, k).passed
        assert check_predecessor_laws(f, k).passed


def test_out_of_bounds(pstar):
    with pytest.raises(OutOfBoundsError):
        lt_k(pstar, 1, O("0"), O("w*4"))
    with pytest.raises(OutOfBoundsError):
        pred_set(pstar, 1, O("w^2"))


def test_depth_and_normalization():
    p = StabilitySystem(O("w*3+1"), {1: {O("w*2"): O("5")}, 2: {}})
    assert p.depth == 1  # empty levels carry no data
    assert p == StabilitySystem(O("w*3+1"), {1: {O("w*2"): O("5")}})
    assert StabilitySystem(O("1")).depth == 1


def test_json_roundtrip(pstar, qstar):
    for p in (pstar, qstar, StabilitySystem(O("1"))):
        assert system_from_dict(system_to_dict(p)) == p
        assert system_from_json(system_to_json(p)) == p
    d = system_to_dict(pstar)
    assert d == {"bound": "w*3+1", "levels": {"1": {"w*2": "5"}}}


def test_json_accepts_empty_levels():
    p = system_from_dict({"bound": "w*3+1", "levels": {"1": {"w*2": "5"}, "2": {}}})
    assert p.depth == 1


def test_json_rejects_unknown_fields():
    with pytest.raises(ValueError):
        system_from_dict({"bound": "1", "extra": 3})
    with pytest.raises(ValueError):
        system_from_dict({"levels": {}})
