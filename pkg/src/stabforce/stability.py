"""Stability systems, their derived level orders, and the validators.

A stability system is a successor bound ``|p|`` together with partial maps
``f_k`` (k >= 1) on ordinals below the bound.  Each map is presented finitely:
the default value is the identity, overridden by a finite per-level exception
map.  The domain of level 1 is the limit ordinals below the bound; the domain
of level k+1 is the set of level-k limit points of the derived order.

The derived orders are::

    a <_1 b  iff  a < b and every limit g in (a, b] has f_1(g) >= a
    a <_k+1 b iff a <_k b and every level-(k+1) domain point g in (a, b]
                  with g <=_k b has f_k+1(g) >= a

Default points satisfy the threshold automatically (f(g) = g > a), so every
quantifier is decided by inspecting only the finitely many exception keys in
range; that is what makes the whole structure exactly computable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import NotLim2Error, OutOfBoundsError
from .ordinal import (
    ONE,
    ZERO,
    IntervalSet,
    Ordinal,
    OrdinalInterval,
    format_ordinal,
    parse_ordinal,
    sup_of_limits_between,
)

Entries = tuple[tuple[Ordinal, Ordinal], ...]
Levels = tuple[tuple[int, Entries], ...]


class StabilitySystem:
    """Finitely presented stability system: bound plus per-level exception maps.

    Immutable value type.  ``depth`` is the largest level carrying exceptions
    (at least 1); queries at deeper levels see all-default maps.  Derived-order
    results are memoized per instance; the caches are semantically invisible.
    """

    __slots__ = ("bound", "levels", "_hash", "_lt_cache", "_pred_cache", "_valid", "__weakref__")

    def __init__(self, bound: Ordinal, exceptions: Mapping[int, Mapping[Ordinal, Ordinal]] | None = None):
        if not isinstance(bound, Ordinal):
            raise TypeError("bound must be an Ordinal")
        levels: list[tuple[int, Entries]] = []
        for k in sorted(exceptions or ()):
            if int(k) < 1:
                raise ValueError(f"exception level {k} must be >= 1")
            # identity-valued entries are the default and carry no data;
            # dropping them keeps equal systems structurally identical
            entries = tuple(sorted(((g, v) for g, v in (exceptions or {})[k].items() if g != v),
                                   key=lambda gv: gv[0].terms))
            if entries:
                levels.append((int(k), entries))
        self.bound = bound
        self.levels = tuple(levels)
        self._hash = hash((bound, self.levels))
        self._lt_cache: dict = {}
        self._pred_cache: dict = {}
        self._valid: bool | None = None

    @property
    def top(self) -> Ordinal:
        """alpha(p) = bound - 1; requires a successor bound."""
        return self.bound.predecessor()

    @property
    def depth(self) -> int:
        return self.levels[-1][0] if self.levels else 1

    def entries_at(self, k: int) -> Entries:
        for lvl, entries in self.levels:
            if lvl == k:
                return entries
        return ()

    def exception_value(self, k: int, alpha: Ordinal) -> Ordinal | None:
        for g, v in self.entries_at(k):
            if g == alpha:
                return v
        return None

    def exception_count(self) -> int:
        return sum(len(entries) for _, entries in self.levels)

    def max_key(self) -> Ordinal | None:
        keys = [entries[-1][0] for _, entries in self.levels]
        return max(keys) if keys else None

    def with_bound(self, new_bound: Ordinal) -> "StabilitySystem":
        return StabilitySystem(new_bound, self._as_dict())

    def with_exception(self, k: int, key: Ordinal, value: Ordinal) -> "StabilitySystem":
        d = self._as_dict()
        lvl = d.setdefault(k, {})
        if key in lvl:
            raise ValueError(f"level {k} already has an exception at {key}")
        lvl[key] = value
        return StabilitySystem(self.bound, d)

    def _as_dict(self) -> dict[int, dict[Ordinal, Ordinal]]:
        return {k: dict(entries) for k, entries in self.levels}

    @property
    def is_valid(self) -> bool:
        if self._valid is None:
            self._valid = validate(self).valid
        return self._valid

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, StabilitySystem)
                and self.bound == other.bound and self.levels == other.levels)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        lv = {k: {str(g): str(v) for g, v in entries} for k, entries in self.levels}
        return f"StabilitySystem(bound={self.bound}, levels={lv})"


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    check: str
    level: int
    subject: str
    message: str

    def __str__(self) -> str:
        return f"{self.check} @ level {self.level}, {self.subject}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[Violation, ...]

    def to_dict(self) -> dict:
        return {"valid": self.valid,
                "violations": [{"check": v.check, "level": v.level,
                                "subject": v.subject, "message": v.message}
                               for v in self.violations]}


@dataclass(frozen=True)
class CheckReport:
    name: str
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "violations": [{"check": v.check, "level": v.level,
                                "subject": v.subject, "message": v.message}
                               for v in self.violations]}


# -- derived orders ----------------------------------------------------------


def _require_in_universe(p: StabilitySystem, *points: Ordinal) -> None:
    for a in points:
        if not a < p.bound:
            raise OutOfBoundsError(f"{a} is not below the bound {p.bound}")


def dom_f(p: StabilitySystem, k: int, alpha: Ordinal) -> bool:
    """Is alpha in the domain of the level-k map?

    Level 1: alpha is a limit ordinal.  Level k+1: alpha is a level-k limit
    point (strict predecessor set nonempty with no maximum).
    """
    if k < 1:
        raise ValueError("level must be >= 1")
    _require_in_universe(p, alpha)
    if k == 1:
        return alpha.is_limit
    return is_k_limit(p, k - 1, alpha)


def f_eval(p: StabilitySystem, k: int, alpha: Ordinal) -> Ordinal | None:
    """Value of the level-k map at alpha; None when alpha is not in its domain."""
    if not dom_f(p, k, alpha):
        return None
    v = p.exception_value(k, alpha)
    return alpha if v is None else v


def lt_k(p: StabilitySystem, k: int, alpha: Ordinal, beta: Ordinal) -> bool:
    """Strict level-k order.  Decided from the exception keys in (alpha, beta]."""
    if k < 1:
        raise ValueError("level must be >= 1")
    _require_in_universe(p, alpha, beta)
    return _lt(p, k, alpha, beta)


def _lt(p: StabilitySystem, k: int, alpha: Ordinal, beta: Ordinal) -> bool:
    if not alpha < beta:
        return False
    key = (k, alpha, beta)
    cached = p._lt_cache.get(key)
    if cached is not None:
        return cached
    result = True
    if k > 1 and not _lt(p, k - 1, alpha, beta):
        result = False
    else:
        for g, v in p.entries_at(k):
            if not (alpha < g <= beta):
                continue
            if v >= alpha:
                continue
            # a key only constrains the order when it denotes a genuine
            # level-k domain point sitting on the level-(k-1) chain of beta
            if not dom_f(p, k, g):
                continue
            if k >= 2 and not _le(p, k - 1, g, beta):
                continue
            result = False
            break
    p._lt_cache[key] = result
    return result


def le_k(p: StabilitySystem, k: int, alpha: Ordinal, beta: Ordinal) -> bool:
    """Reflexive level-k order; level 0 is the plain ordinal order."""
    if k < 0:
        raise ValueError("level must be >= 0")
    _require_in_universe(p, alpha, beta)
    return _le(p, k, alpha, beta)


def _le(p: StabilitySystem, k: int, alpha: Ordinal, beta: Ordinal) -> bool:
    if alpha == beta:
        return True
    if k == 0:
        return alpha < beta
    return _lt(p, k, alpha, beta)


def pred_set(p: StabilitySystem, k: int, beta: Ordinal) -> IntervalSet:
    """The set { a < beta : a <_k beta } as a normalized interval set.

    Computed level by level with a top-down scan over the exception keys,
    carrying the running minimum of the values seen so far: between two
    consecutive keys every point passes iff it is at most that minimum.
    """
    if k < 1:
        raise ValueError("level must be >= 1")
    _require_in_universe(p, beta)
    key = (k, beta)
    cached = p._pred_cache.get(key)
    if cached is not None:
        return cached
    if beta.is_zero:
        result = IntervalSet()
    else:
        result = IntervalSet.of((ZERO, beta))
        for j, _entries in p.levels:
            if j > k:
                break
            result = result.intersect(IntervalSet(_level_threshold_intervals(p, j, beta)))
    p._pred_cache[key] = result
    return result


def _level_threshold_intervals(p: StabilitySystem, j: int, beta: Ordinal) -> list[OrdinalInterval]:
    keys = []
    for g, v in p.entries_at(j):
        if not g <= beta:
            continue
        if not dom_f(p, j, g):
            continue
        if j >= 2 and not _le(p, j - 1, g, beta):
            continue
        keys.append((g, v))
    keys.sort(key=lambda gv: gv[0].terms, reverse=True)
    out: list[OrdinalInterval] = []
    upper = beta
    cap: Ordinal | None = None
    for g, v in keys:
        if g < upper:
            _emit(out, g, upper, cap)
            upper = g
        cap = v if cap is None or v < cap else cap
    _emit(out, ZERO, upper, cap)
    return out


def _emit(out: list[OrdinalInterval], lo: Ordinal, hi: Ordinal, cap: Ordinal | None) -> None:
    if cap is not None:
        capped = cap + ONE
        if capped < hi:
            hi = capped
    if lo < hi:
        out.append(OrdinalInterval(lo, hi))


def is_k_limit(p: StabilitySystem, k: int, alpha: Ordinal) -> bool:
    """alpha is a level-k limit: its strict predecessor set is nonempty with no max."""
    s = pred_set(p, k, alpha)
    return not s.is_empty and not s.has_max()


def is_k_lim2(p: StabilitySystem, k: int, alpha: Ordinal) -> bool:
    """alpha is a level-k limit of level-k limits.

    The level-k limit members of the predecessor set are exactly the ordinary
    limit ordinals interior to its intervals (interval closure makes every
    such point inherit an unbounded predecessor tail), so their supremum is
    computable per interval.
    """
    if not is_k_limit(p, k, alpha):
        return False
    best: Ordinal | None = None
    for iv in pred_set(p, k, alpha):
        s = sup_of_limits_between(iv.low, iv.high)
        if s is not None and (best is None or s > best):
            best = s
    return best == alpha


def chain_liminf(p: StabilitySystem, k: int, alpha: Ordinal) -> Ordinal:
    """liminf of the level-(k+1) values along the level-k chain below alpha.

    The index set is the limit ordinals below alpha (k = 0) or the level-k
    limits strictly below alpha in the level-k order (k >= 1).  With finitely
    many exceptions the tail of the chain is the identity, so the liminf is
    the supremum of the index set, which equals alpha at a lim2 point; no
    sequence is materialized.
    """
    if k < 0:
        raise ValueError("level must be >= 0")
    _require_in_universe(p, alpha)
    if k == 0:
        if not alpha.is_lim2:
            raise NotLim2Error(f"{alpha} is not a limit of limit ordinals")
    elif not is_k_lim2(p, k, alpha):
        raise NotLim2Error(f"{alpha} is not a level-{k} lim2 point")
    return alpha


# -- validation ---------------------------------------------------------------


def validate(p: StabilitySystem) -> ValidationReport:
    """Run the five structural checks and report every violation.

    V1 successor bound; V2 keys in their level's domain; V3 values at most
    their key; V4 continuity (a below-identity value may not sit at a lim2
    point of its level's index chain, where the liminf forces the identity);
    V5 each value sits below its key in the key's own level order.
    """
    violations: list[Violation] = []
    if not p.bound.is_successor:
        violations.append(Violation("V1", 0, format_ordinal(p.bound),
                                    "bound must be a successor ordinal"))
    for k, entries in p.levels:
        for g, v in entries:
            subject = format_ordinal(g)
            if not g < p.bound:
                violations.append(Violation("V2", k, subject, "key not below the bound"))
                continue
            if not dom_f(p, k, g):
                violations.append(Violation("V2", k, subject,
                                            f"key not in the level-{k} domain"))
                continue
            if not v <= g:
                violations.append(Violation("V3", k, subject,
                                            f"value {v} exceeds key"))
            if v < g:
                lim2 = g.is_lim2 if k == 1 else is_k_lim2(p, k - 1, g)
                if lim2:
                    violations.append(Violation(
                        "V4", k, subject,
                        f"value {v} at a lim2 point of the level-{k} chain; "
                        f"continuity forces the identity there"))
            if not _le(p, k, v, g):
                violations.append(Violation("V5", k, subject,
                                            f"value {v} not below key in the level-{k} order"))
    return ValidationReport(valid=not violations, violations=tuple(violations))


def probe_points(p: StabilitySystem, extra: Iterable[Ordinal] = (), cap: int | None = None) -> tuple[Ordinal, ...]:
    """Deterministic probe grid: 0, 1, the top, every key and value, and their
    successors, clipped to the universe.  ``cap`` trims low-priority points."""
    top = p.top
    priority: list[Ordinal] = [ZERO, top]
    rest: list[Ordinal] = [ONE]
    for _, entries in p.levels:
        for g, v in entries:
            priority += [g, v]
            rest += [g + ONE, v + ONE]
    rest.extend(extra)
    seen = []
    for a in priority + rest:
        if a <= top and a not in seen:
            seen.append(a)
        if cap is not None and len(seen) >= cap:
            break
    return tuple(sorted(seen, key=lambda a: a.terms))


def check_tree_properties(p: StabilitySystem, k: int,
                          probe: Iterable[Ordinal] | None = None) -> CheckReport:
    """Verify on all probe triples that the level-k order is transitive,
    antisymmetric, interpolates against level k+1, and that predecessor sets
    are closed below their point."""
    pts = tuple(sorted(set(probe if probe is not None else probe_points(p)),
                       key=lambda a: a.terms))
    n = len(pts)
    le_now = [[_le(p, k, pts[i], pts[j]) for j in range(n)] for i in range(n)]
    le_next = [[_le(p, k + 1, pts[i], pts[j]) for j in range(n)] for i in range(n)]
    violations: list[Violation] = []

    for i in range(n):
        for j in range(n):
            if i != j and le_now[i][j] and le_now[j][i]:
                violations.append(Violation("antisymmetry", k,
                                            f"({pts[i]}, {pts[j]})", "both directions hold"))
    for i in range(n):
        for j in range(n):
            if not le_now[i][j]:
                continue
            for m in range(n):
                if le_now[j][m] and not le_now[i][m]:
                    violations.append(Violation(
                        "transitivity", k, f"({pts[i]}, {pts[j]}, {pts[m]})",
                        "composition fails"))
    # interpolation: a <= b <=_k c and a <=_{k+1} c force a <=_{k+1} b
    for i in range(n):
        for j in range(i, n):
            for m in range(n):
                if le_now[j][m] and le_next[i][m] and not le_next[i][j]:
                    violations.append(Violation(
                        "interpolation", k, f"({pts[i]}, {pts[j]}, {pts[m]})",
                        "level k+1 fails to restrict along the level-k chain"))
    for i in range(n):
        beta = pts[i]
        for iv in pred_set(p, k, beta):
            if iv.high != beta and not iv.high.is_successor:
                violations.append(Violation(
                    "closure", k, format_ordinal(beta),
                    f"limit point {iv.high} of the predecessor set is missing"))
    return CheckReport(name=f"tree-properties level {k}", violations=tuple(violations))


def check_predecessor_laws(p: StabilitySystem, k: int,
                 probe: Iterable[Ordinal] | None = None) -> CheckReport:
    """Largest-predecessor and unboundedness facts for the level-k map.

    A below-identity value must be the maximum of the predecessor set of its
    key; an identity value at a lim2 point of the level-(k-1) chain must have
    predecessors cofinal in the point.  The second clause is scanned over the
    probe grid (default values off the grid behave uniformly).
    """
    violations: list[Violation] = []
    for g, v in p.entries_at(k):
        if v < g and dom_f(p, k, g):
            s = pred_set(p, k, g)
            if s.is_empty or not s.has_max() or s.max_element() != v:
                got = "none" if s.is_empty or not s.has_max() else str(s.max_element())
                violations.append(Violation(
                    "largest-predecessor", k, format_ordinal(g),
                    f"value {v} is not the largest strict predecessor (got {got})"))
    pts = tuple(probe if probe is not None else probe_points(p))
    for alpha in pts:
        lim2 = alpha.is_lim2 if k == 1 else is_k_lim2(p, k - 1, alpha)
        if not lim2:
            continue
        if f_eval(p, k, alpha) == alpha and not is_k_limit(p, k, alpha):
            violations.append(Violation(
                "unboundedness", k, format_ordinal(alpha),
                "identity value but predecessors not cofinal"))
    return CheckReport(name=f"largest-predecessor/unboundedness level {k}",
                       violations=tuple(violations))


# -- JSON encoding -------------------------------------------------------------


def system_to_dict(p: StabilitySystem) -> dict:
    return {
        "bound": format_ordinal(p.bound),
        "levels": {str(k): {format_ordinal(g): format_ordinal(v) for g, v in entries}
                   for k, entries in p.levels},
    }


def system_from_dict(d: Mapping) -> StabilitySystem:
    if not isinstance(d, Mapping):
        raise ValueError("system must be a JSON object")
    unknown = set(d) - {"bound", "levels"}
    if unknown:
        raise ValueError(f"unknown system fields: {sorted(unknown)}")
    if "bound" not in d:
        raise ValueError("system is missing 'bound'")
    bound = parse_ordinal(d["bound"])
    exceptions: dict[int, dict[Ordinal, Ordinal]] = {}
    for k_text, entries in (d.get("levels") or {}).items():
        k = int(k_text)
        exceptions[k] = {parse_ordinal(g): parse_ordinal(v) for g, v in entries.items()}
    return StabilitySystem(bound, exceptions)


def system_to_json(p: StabilitySystem) -> str:
    return json.dumps(system_to_dict(p), indent=2, sort_keys=False)


def system_from_json(text: str) -> StabilitySystem:
    return system_from_dict(json.loads(text))
