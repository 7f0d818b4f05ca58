"""Conditions, extension, canonical growth, chain infima, and dense sets.

Run:  python3 demos/03_forcing_poset.py
"""

from stabforce import (
    BudgetExhaustedError,
    ChainPresentation,
    PosetParams,
    StabilitySystem,
    TargetNotReachableError,
    canonical_extend,
    chain_infimum,
    extend_to_chain_limit,
    extends,
    in_poset,
    meet_dense,
    parse_ordinal as O,
    taller_than,
    top_chain_limit,
)

p = StabilitySystem(O("w*3+1"), {1: {O("w*2"): O("5")}})
print("p:", p)

print("\n== membership ==")
for params in [PosetParams(O("w^3"), 1, O("0")),
               PosetParams(O("w^3"), 1, O("7")),
               PosetParams(O("w*2"), 1, O("0"))]:
    print(f"  P(kappa={params.kappa}, ell={params.ell}, gamma={params.gamma}):",
          in_poset(p, params))

print("\n== canonical extension ==")
c = canonical_extend(p, O("w^2"))
print("  to w^2:", c.bound, "| extends p at level 3:", extends(c, p, 3))

print("\n== targeted extension to a chain limit ==")
q = extend_to_chain_limit(p, 1, O("5"))
print("  target 5:", q)
try:
    extend_to_chain_limit(p, 1, O("7"))
except TargetNotReachableError as exc:
    print("  target 7:", exc)

print("\n== chain infimum ==")
chain = ChainPresentation((p, q), O("w*5"), ell=2)
inf = chain_infimum(chain)
print("  infimum of [p, q] at w*5:", inf.bound,
      "| equals canonical extension:", inf == canonical_extend(q, O("w*5")))

print("\n== meeting dense sets ==")
final, trace = meet_dense(p, [taller_than(O("w*6")), top_chain_limit(1, O("5"))], 32)
for label, s in trace:
    print(f"  {label:24} top={s.top}")
print("  final:", final)
try:
    meet_dense(p, [top_chain_limit(1, O("7"))], 8)
except BudgetExhaustedError as exc:
    print("  permanently blocked target:", exc)
