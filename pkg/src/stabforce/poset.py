"""The forcing poset of stability systems: membership, extension, limits.

A condition of the poset P(kappa, ell, gamma) is a valid stability system p
with gamma <=_ell top(p) < kappa.  q extends p when q's exception maps agree
with p's below p's bound and top(p) sits below top(q) in q's level-(ell-1)
order.  Canonical extension (all new points default) extends at every level;
targeted extension places a single exception at a fresh chain-limit top.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    BadTargetError,
    BudgetExhaustedError,
    InvalidConditionError,
    InvalidIntermediateError,
    NotDescendingError,
    OutOfRangeError,
    TargetNotReachableError,
)
from .ordinal import OMEGA, Ordinal, format_ordinal, parse_ordinal
from .stability import (
    StabilitySystem,
    chain_liminf,
    dom_f,
    is_k_lim2,
    is_k_limit,
    le_k,
    lt_k,
    system_from_dict,
    system_to_dict,
    validate,
)


@dataclass(frozen=True)
class PosetParams:
    """Parameters (kappa, ell, gamma) selecting one forcing poset."""

    kappa: Ordinal
    ell: int
    gamma: Ordinal

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("ell must be >= 1")
        if not self.kappa.is_limit:
            raise ValueError("kappa must be a limit ordinal")
        if not self.gamma < self.kappa:
            raise ValueError("gamma must be below kappa")


def _require_valid(*systems: StabilitySystem) -> None:
    for p in systems:
        if not p.is_valid:
            raise InvalidConditionError(f"not a valid stability system: {p!r}")


def in_poset(p: StabilitySystem, params: PosetParams) -> bool:
    """Membership test: gamma <=_ell top(p) < kappa."""
    _require_valid(p)
    top = p.top
    if not top < params.kappa:
        return False
    if params.gamma == top:
        return True
    return params.gamma < top and lt_k(p, params.ell, params.gamma, top)


def extends(q: StabilitySystem, p: StabilitySystem, ell: int) -> bool:
    """Does q extend p at level ell?

    Requires (i) bound(q) >= bound(p); (ii) q's exceptions below bound(p)
    coincide with p's (so the finitely presented maps genuinely extend); and
    (iii) top(p) <=_{ell-1} top(q) evaluated in q, where level 0 is plain <=.
    All three clauses are definitional, so the test is decided for arbitrary
    finite presentations without demanding validity first.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if not q.bound >= p.bound:
        return False
    cut = p.bound
    all_levels = {k for k, _ in q.levels} | {k for k, _ in p.levels}
    for k in all_levels:
        q_below = tuple((g, v) for g, v in q.entries_at(k) if g < cut)
        if q_below != p.entries_at(k):
            return False
    return le_k(q, ell - 1, p.top, q.top)


def canonical_extend(p: StabilitySystem, alpha: Ordinal,
                     params: PosetParams | None = None) -> StabilitySystem:
    """Extend p to top alpha giving every new limit point its default value.

    The stretch above the old top carries no exceptions, so the result is
    valid and extends p at every level.
    """
    _require_valid(p)
    if not alpha >= p.top:
        raise OutOfRangeError(f"target {alpha} is below the current top {p.top}")
    if params is not None and not alpha < params.kappa:
        raise OutOfRangeError(f"target {alpha} is not below kappa {params.kappa}")
    if alpha == p.top:
        return p
    return p.with_bound(alpha + Ordinal.from_int(1))


def extend_with_top_exception(p: StabilitySystem, alpha: Ordinal, level: int,
                              value: Ordinal) -> StabilitySystem:
    """Extend p canonically to top alpha, then pin the level map there to value.

    alpha must be strictly above the old top, so the new point is reached by a
    fresh default stretch and is a limit point of every level's order; the
    only non-trivial requirement is value <=_level alpha, checked in the
    candidate itself.
    """
    _require_valid(p)
    if not alpha > p.top:
        raise OutOfRangeError(f"new top {alpha} must be strictly above {p.top}")
    if not alpha.is_limit:
        raise OutOfRangeError(f"new top {alpha} must be a limit ordinal")
    base = canonical_extend(p, alpha)
    q = base.with_exception(level, alpha, value)
    if not le_k(q, level, value, alpha):
        raise TargetNotReachableError(
            f"{value} does not sit below {alpha} in the level-{level} order")
    report = validate(q)
    if not report.valid:
        raise InvalidIntermediateError(
            "extension produced an invalid system: "
            + "; ".join(str(v) for v in report.violations))
    return q


def extend_to_chain_limit(p: StabilitySystem, ell: int, target: Ordinal) -> StabilitySystem:
    """Extend p so the new top is a level-ell limit whose level-(ell+1) value is target.

    The new top is always top(p) + w: the first fresh limit, whose canonical
    predecessor stretch makes it a level-ell limit but not a lim2 point, so
    the placed exception is continuity-legal.  Raises TargetNotReachableError
    when target cannot sit below the new top in the level-(ell+1) order.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    _require_valid(p)
    if not target <= p.top:
        raise OutOfRangeError(f"target {target} must be at most the top {p.top}")
    lam = p.top + OMEGA
    q = extend_with_top_exception(p, lam, ell + 1, target)
    assert is_k_limit(q, ell, lam) and not is_k_lim2(q, ell, lam)
    assert extends(q, p, ell + 1)
    return q


# -- descending chains ---------------------------------------------------------


@dataclass(frozen=True)
class ChainPresentation:
    """Finitely presented descending chain with a declared supremum.

    The listed conditions descend under ``extends`` at level ``ell``; the
    implicit continuation beyond the last condition is canonical (no new
    exceptions), and ``target`` is the limit the chain's tops converge to.
    """

    conditions: tuple[StabilitySystem, ...]
    target: Ordinal
    ell: int = 1

    def __post_init__(self):
        if not self.conditions:
            raise ValueError("chain must list at least one condition")
        if self.ell < 1:
            raise ValueError("ell must be >= 1")


def chain_infimum(chain: ChainPresentation) -> StabilitySystem:
    """A condition below every member of the chain, with top = the target.

    Each adjacent pair is re-verified (NotDescendingError otherwise).  The
    value of every level map at the new top is computed by case analysis:
    undefined when the top is not a limit of the level's chain, the liminf at
    a lim2 point, the identity otherwise.  Under the canonical continuation
    every case yields the identity, so the result provably equals the
    canonical extension of the last condition; the equality is asserted.
    """
    conds = chain.conditions
    _require_valid(*conds)
    for prev, nxt in zip(conds, conds[1:]):
        if not extends(nxt, prev, chain.ell):
            raise NotDescendingError(
                f"condition with top {nxt.top} does not extend the one with top {prev.top}")
    last = conds[-1]
    lam = chain.target
    if not lam.is_limit:
        raise BadTargetError(f"target {lam} must be a limit ordinal")
    if lam < last.top:
        raise BadTargetError(f"target {lam} is below the last condition's top {last.top}")
    if lam == last.top:
        if len(conds) < 2:
            raise BadTargetError("target equals the only condition's top")
        return last
    result = canonical_extend(last, lam)
    # per-level case analysis at the new top; every defined value must come
    # out as the identity because all exception keys live strictly below it
    level = 1
    while level <= result.depth + 1:
        if level == 1:
            defined = lam.is_limit
            lim2 = lam.is_lim2
        else:
            defined = is_k_limit(result, level - 1, lam)
            lim2 = defined and is_k_lim2(result, level - 1, lam)
        if defined:
            value = chain_liminf(result, level - 1, lam) if lim2 else lam
            if value != lam:
                raise InvalidIntermediateError(
                    f"level-{level} case analysis at {lam} produced {value}, not the identity")
        level += 1
    assert result == canonical_extend(last, lam)
    for cond in conds:
        assert extends(result, cond, chain.ell)
    return result


def chain_from_trace(trace: Sequence[StabilitySystem], target: Ordinal | None = None,
                     ell: int = 1) -> ChainPresentation:
    """Package a descending trace as a chain; default target is the next fresh limit."""
    conds = tuple(trace)
    if target is None:
        target = conds[-1].top + OMEGA
    return ChainPresentation(conditions=conds, target=target, ell=ell)


def chain_to_dict(chain: ChainPresentation) -> dict:
    return {
        "chain": [system_to_dict(p) for p in chain.conditions],
        "target": format_ordinal(chain.target),
        "ell": chain.ell,
    }


def chain_from_dict(d: Mapping) -> ChainPresentation:
    if not isinstance(d, Mapping):
        raise ValueError("chain must be a JSON object")
    unknown = set(d) - {"chain", "target", "ell"}
    if unknown:
        raise ValueError(f"unknown chain fields: {sorted(unknown)}")
    conds = tuple(system_from_dict(s) for s in d.get("chain", ()))
    return ChainPresentation(conditions=conds,
                             target=parse_ordinal(d["target"]),
                             ell=int(d.get("ell", 1)))


# -- dense sets and the generic engine -----------------------------------------


@dataclass(frozen=True)
class DenseSet:
    """A named dense family: an acceptance predicate plus an optional refiner.

    ``refine`` produces some extension of its argument that the predicate
    accepts; it may fail (raise or return None), which the engine treats as a
    legitimate outcome to retry within budget, not as an error.
    """

    name: str
    accepts: Callable[[StabilitySystem], bool]
    refine: Callable[[StabilitySystem], StabilitySystem] | None = None


def taller_than(alpha: Ordinal) -> DenseSet:
    """Conditions whose top is at least alpha (dense: extend canonically)."""

    def _refine(p: StabilitySystem) -> StabilitySystem:
        return canonical_extend(p, max(alpha, p.top, key=lambda a: a.terms))

    return DenseSet(name=f"taller_than({alpha})",
                    accepts=lambda p: p.top >= alpha,
                    refine=_refine)


def top_chain_limit(ell: int, target: Ordinal) -> DenseSet:
    """Conditions whose top is a level-ell limit carrying level-(ell+1) value target."""

    def _accepts(p: StabilitySystem) -> bool:
        top = p.top
        return (dom_f(p, ell + 1, top) if top < p.bound else False) and \
            p.exception_value(ell + 1, top) == target

    def _refine(p: StabilitySystem) -> StabilitySystem:
        return extend_to_chain_limit(p, ell, target)

    return DenseSet(name=f"top_chain_limit({ell}, {target})",
                    accepts=_accepts, refine=_refine)


def meet_dense(p: StabilitySystem, dense: Sequence[DenseSet], budget: int,
               extra_values: Iterable[Ordinal] = ()) -> tuple[StabilitySystem, tuple[tuple[str, StabilitySystem], ...]]:
    """Descend below p meeting every dense set, within a refinement budget.

    Round-robin over the unsatisfied sets: use the set's own refiner when it
    has one, otherwise search one canonical step plus single-exception
    placements at the new top (values 0, the existing exception values, and
    any caller-designated ordinals).  Returns the final condition and the
    descending trace of (step label, condition) pairs, reusable as a chain.
    Raises BudgetExhaustedError if some set stays unmet.
    """
    _require_valid(p)
    current = p
    trace: list[tuple[str, StabilitySystem]] = [("start", p)]
    remaining = list(dense)
    spent = 0
    for d in list(remaining):
        if d.accepts(current):
            remaining.remove(d)
    while remaining:
        if spent >= budget:
            raise BudgetExhaustedError(
                f"budget {budget} exhausted with unmet dense sets: "
                + ", ".join(d.name for d in remaining),
                trace=[s for _, s in trace])
        d = remaining[0]
        spent += 1
        candidate: StabilitySystem | None = None
        if d.refine is not None:
            try:
                candidate = d.refine(current)
            except (TargetNotReachableError, OutOfRangeError):
                candidate = None
        if candidate is None:
            candidate = _search_step(current, d, extra_values)
        if candidate is not None and candidate != current:
            if not extends(candidate, current, 1):
                raise InvalidIntermediateError(
                    f"refinement for {d.name} does not extend the current condition")
            current = candidate
            trace.append((d.name, current))
        elif candidate is None:
            # keep the chain moving so later retries see a taller condition
            current = canonical_extend(current, current.top + OMEGA)
            trace.append((f"{d.name}: step", current))
        for met in list(remaining):
            if met.accepts(current):
                remaining.remove(met)
    return current, tuple(trace)


def _search_step(p: StabilitySystem, d: DenseSet,
                 extra_values: Iterable[Ordinal]) -> StabilitySystem | None:
    lam = p.top + OMEGA
    taller = canonical_extend(p, lam)
    if d.accepts(taller):
        return taller
    values = [Ordinal()]
    for _, entries in p.levels:
        values.extend(v for _, v in entries)
    values.extend(extra_values)
    seen: set[Ordinal] = set()
    for value in values:
        if value in seen or not value < lam:
            continue
        seen.add(value)
        for level in range(1, p.depth + 2):
            try:
                q = extend_with_top_exception(p, lam, level, value)
            except (TargetNotReachableError, OutOfRangeError, InvalidIntermediateError):
                continue
            if d.accepts(q):
                return q
    return None
