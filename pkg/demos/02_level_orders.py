"""The derived level orders of a stability system.

A single exception f_1(w*2) = 5 splits the level-1 order below w*3 into the
initial segment [0, 5] and the tail above w*2: nothing in between can sit
below anything above the exception, because the quantifier demands
f_1(w*2) >= alpha for every alpha < w*2.

Run:  python3 demos/02_level_orders.py
"""

from stabforce import (
    StabilitySystem,
    dom_f,
    f_eval,
    is_k_lim2,
    is_k_limit,
    lt_k,
    parse_ordinal as O,
    pred_set,
    validate,
)

p = StabilitySystem(O("w*3+1"), {1: {O("w*2"): O("5")}})
print("system:", p)
print("valid:", validate(p).valid)

print("\n== the level-1 map ==")
for a in ["w", "w*2", "w*3"]:
    print(f"  f_1({a}) = {f_eval(p, 1, O(a))}")
print("  f_2(w*2) =", f_eval(p, 2, O("w*2")), " (w*2 is not a level-1 limit)")
print("  level-2 domain at w*3:", dom_f(p, 2, O("w*3")))

print("\n== level-1 order queries ==")
for a, b in [("3", "w*3"), ("7", "w*3"), ("w*2", "w*3"), ("7", "w*2+4")]:
    print(f"  {a} <_1 {b} : {lt_k(p, 1, O(a), O(b))}")

print("\n== predecessor sets ==")
for b in ["w", "w*2", "w*3"]:
    s = pred_set(p, 1, O(b))
    print(f"  preds_1({b}) = {s}")

print("\n== limit structure ==")
for a in ["w", "w*2", "w*3"]:
    print(f"  {a}: level-1 limit {is_k_limit(p, 1, O(a))}, "
          f"lim2 {is_k_lim2(p, 1, O(a))}")

print("\n== a validator counterexample ==")
bad = StabilitySystem(O("w*3+1"), {1: {O("w"): O("5"), O("w*2"): O("7")}})
report = validate(bad)
print("  two exceptions, each individually fine, but:")
for v in report.violations:
    print("   ", v)
