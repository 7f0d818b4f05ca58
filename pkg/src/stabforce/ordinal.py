"""Exact ordinal arithmetic below w^w in Cantor normal form, plus interval sets.

An ordinal is a finite sum ``w^e1*c1 + ... + w^en*cn`` with strictly
decreasing natural exponents and positive integer coefficients, stored as a
tuple of ``(exponent, coefficient)`` pairs; the empty tuple is 0.  Because
exponents decrease strictly and coefficients are positive, lexicographic
comparison of the term tuples agrees with ordinal order, so every comparison
here is a plain tuple comparison.

The text notation is the normative format used in JSON files and on the
command line::

    expr := term ("+" term)*
    term := "0" | nat | "w" ["^" nat] ["*" nat]

Every value has exactly one accepted spelling ("w" rather than "w^1", "5"
rather than "w^0*5", no zero coefficients, no whitespace); anything else is
rejected rather than silently normalized, so file formats stay unambiguous
and diffable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import EmptySetError, NonCanonicalError, OrdinalSyntaxError

Terms = tuple[tuple[int, int], ...]


class Ordinal:
    """An ordinal below w^w in Cantor normal form; immutable and hashable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[tuple[int, int]] = ()):
        tt: Terms = tuple((int(e), int(c)) for e, c in terms)
        prev = None
        for e, c in tt:
            if e < 0 or c < 1:
                raise ValueError(f"bad CNF term (exponent {e}, coefficient {c})")
            if prev is not None and e >= prev:
                raise ValueError("CNF exponents must be strictly decreasing")
            prev = e
        self.terms = tt
        self._hash = hash(tt)

    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((0, n),) if n else ())

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] == 0

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] >= 1

    @property
    def is_lim2(self) -> bool:
        """True when the value is a limit of limit ordinals (last exponent >= 2)."""
        return bool(self.terms) and self.terms[-1][0] >= 2

    def classify(self) -> str:
        if self.is_zero:
            return "zero"
        return "successor" if self.is_successor else "limit"

    def successor(self) -> "Ordinal":
        return self + ONE

    def predecessor(self) -> "Ordinal":
        """Largest ordinal below a successor; undefined for 0 and limits."""
        if not self.is_successor:
            raise ValueError(f"{self} is not a successor ordinal")
        e, c = self.terms[-1]
        rest = self.terms[:-1]
        return Ordinal(rest if c == 1 else rest + ((0, c - 1),))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Ordinal") -> "Ordinal":
        if not isinstance(other, Ordinal):
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        lead = other.terms[0][0]
        kept = tuple(t for t in self.terms if t[0] > lead)
        absorbed = next((t for t in self.terms if t[0] == lead), None)
        if absorbed is None:
            return Ordinal(kept + other.terms)
        merged = (lead, absorbed[1] + other.terms[0][1])
        return Ordinal(kept + (merged,) + other.terms[1:])

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ordinal) and self.terms == other.terms

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __lt__(self, other: "Ordinal") -> bool:
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms < other.terms

    def __le__(self, other: "Ordinal") -> bool:
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms <= other.terms

    def __gt__(self, other: "Ordinal") -> bool:
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms > other.terms

    def __ge__(self, other: "Ordinal") -> bool:
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms >= other.terms

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"


ZERO = Ordinal()
ONE = Ordinal.from_int(1)
OMEGA = Ordinal(((1, 1),))


def compare(a: Ordinal, b: Ordinal) -> int:
    """Total order on ordinals: -1 for less, 0 for equal, 1 for greater."""
    if a.terms < b.terms:
        return -1
    return 0 if a.terms == b.terms else 1


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal addition: left terms below the lead exponent of b are absorbed."""
    return a + b


def classify(a: Ordinal) -> str:
    return a.classify()


def is_lim2(a: Ordinal) -> bool:
    return a.is_lim2


def plus_omega(a: Ordinal) -> Ordinal:
    """The next ordinal of the form ...+w above a; always has last exponent 1."""
    return a + OMEGA


def largest_limit_below(h: Ordinal) -> Ordinal | None:
    """Largest limit ordinal strictly below h, or None.

    None is returned both when there is no limit below h (h <= w) and when the
    limits below h are cofinal in it (h a lim2 point), since then no largest
    one exists; callers distinguish via ``h.is_lim2``.
    """
    if h.is_zero:
        return None
    e_last, c_last = h.terms[-1]
    if e_last == 0:
        body = Ordinal(h.terms[:-1])
        return body if body else None
    if e_last == 1:
        if c_last >= 2:
            return Ordinal(h.terms[:-1] + ((1, c_last - 1),))
        body = Ordinal(h.terms[:-1])
        return body if body else None
    return None


def sup_of_limits_between(lo: Ordinal, hi: Ordinal) -> Ordinal | None:
    """Supremum of the limit ordinals in the open interval (lo, hi), or None."""
    if hi.is_lim2:
        return hi
    s = largest_limit_below(hi)
    if s is not None and s > lo:
        return s
    return None


# -- text notation ----------------------------------------------------------

_NAT_RE = re.compile(r"(?:0|[1-9][0-9]*)")
_TERM_RE = re.compile(r"^w(?:\^(0|[1-9][0-9]*))?(?:\*(0|[1-9][0-9]*))?$")


def _parse_term(tok: str) -> tuple[int, int]:
    if not tok:
        raise OrdinalSyntaxError("empty term")
    if tok[0] != "w":
        if not _NAT_RE.fullmatch(tok):
            raise OrdinalSyntaxError(f"bad token {tok!r}")
        return (0, int(tok))
    m = _TERM_RE.fullmatch(tok)
    if not m:
        raise OrdinalSyntaxError(f"bad token {tok!r}")
    exp = 1 if m.group(1) is None else int(m.group(1))
    coef = 1 if m.group(2) is None else int(m.group(2))
    if m.group(1) is not None and exp < 2:
        raise NonCanonicalError(f"{tok!r}: write plain 'w' / naturals, not w^{exp}")
    if m.group(2) is not None and coef < 2:
        raise NonCanonicalError(f"{tok!r}: coefficient must be omitted when 1, never 0")
    return (exp, coef)


def parse_ordinal(text: str) -> Ordinal:
    """Parse canonical ordinal notation; reject non-canonical spellings.

    Raises OrdinalSyntaxError for bad tokens, NonCanonicalError when the text
    is grammatical but not the single accepted spelling (e.g. "w+w", "w^1").
    """
    if not isinstance(text, str):
        raise OrdinalSyntaxError(f"expected text, got {type(text).__name__}")
    parts = text.split("+")
    terms = [_parse_term(tok) for tok in parts]
    if len(terms) > 1 and any(c == 0 for _, c in terms):
        raise NonCanonicalError(f"{text!r}: zero term inside a sum")
    if len(terms) == 1 and terms[0][1] == 0:
        return ZERO
    for (e1, _), (e2, _) in zip(terms, terms[1:]):
        if e2 >= e1:
            raise NonCanonicalError(f"{text!r}: exponents must strictly decrease")
    return Ordinal(terms)


def format_ordinal(a: Ordinal) -> str:
    """Canonical text for an ordinal; inverse of parse_ordinal."""
    if a.is_zero:
        return "0"
    parts = []
    for e, c in a.terms:
        if e == 0:
            parts.append(str(c))
        else:
            head = "w" if e == 1 else f"w^{e}"
            parts.append(head if c == 1 else f"{head}*{c}")
    return "+".join(parts)


# -- interval sets -----------------------------------------------------------


@dataclass(frozen=True)
class OrdinalInterval:
    """Half-open interval [low, high) of ordinals, nonempty by construction."""

    low: Ordinal
    high: Ordinal

    def __post_init__(self):
        if not self.low < self.high:
            raise ValueError(f"empty interval [{self.low}, {self.high})")

    def __str__(self) -> str:
        return f"[{self.low}, {self.high})"


class IntervalSet:
    """Finite union of disjoint, non-adjacent, sorted half-open intervals.

    The constructor normalizes arbitrary input: intervals are sorted, and any
    overlapping or adjacent pair (next.low <= cur.high) is merged, so equal
    sets have identical representations.
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[OrdinalInterval] = ()):
        items = sorted(intervals, key=lambda iv: (iv.low.terms, iv.high.terms))
        merged: list[OrdinalInterval] = []
        for iv in items:
            if merged and iv.low <= merged[-1].high:
                if iv.high > merged[-1].high:
                    merged[-1] = OrdinalInterval(merged[-1].low, iv.high)
            else:
                merged.append(iv)
        self.intervals = tuple(merged)

    @classmethod
    def of(cls, *pairs: tuple[Ordinal, Ordinal]) -> "IntervalSet":
        return cls(OrdinalInterval(lo, hi) for lo, hi in pairs if lo < hi)

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls()

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def member(self, alpha: Ordinal) -> bool:
        return any(iv.low <= alpha < iv.high for iv in self.intervals)

    def sup(self) -> Ordinal:
        """Least upper bound of the member set (attained iff has_max)."""
        if not self.intervals:
            raise EmptySetError("sup of empty interval set")
        hi = self.intervals[-1].high
        return hi if hi.is_limit else hi.predecessor()

    def has_max(self) -> bool:
        if not self.intervals:
            raise EmptySetError("has_max of empty interval set")
        return self.intervals[-1].high.is_successor

    def max_element(self) -> Ordinal:
        if not self.has_max():
            raise EmptySetError("interval set has no maximum")
        return self.intervals[-1].high.predecessor()

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.intervals + other.intervals)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for a in self.intervals:
            for b in other.intervals:
                lo = a.low if a.low >= b.low else b.low
                hi = a.high if a.high <= b.high else b.high
                if lo < hi:
                    out.append(OrdinalInterval(lo, hi))
        return IntervalSet(out)

    def filter_below(self, alpha: Ordinal) -> "IntervalSet":
        """Members strictly below alpha."""
        if alpha.is_zero:
            return IntervalSet()
        return self.intersect(IntervalSet.of((ZERO, alpha)))

    def __iter__(self) -> Iterator[OrdinalInterval]:
        return iter(self.intervals)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntervalSet) and self.intervals == other.intervals

    def __hash__(self) -> int:
        return hash(self.intervals)

    def __str__(self) -> str:
        if not self.intervals:
            return "{}"
        return " u ".join(str(iv) for iv in self.intervals)

    def __repr__(self) -> str:
        return f"IntervalSet({self})"
