"""Finite-horizon survivor analysis: who stays below a fresh top at every level?

Every exception the construction installs blocks an initial stretch of
ordinals at its level.  Probing a fresh canonical top shows that within the
settled region only 0 and the first point's alpha survive all levels; raising
the pattern's declared degree moves the blocks to higher levels without
unblocking anything.

Run:  python3 demos/05_minimality.py
"""

from stabforce import minimality_report, parse_ordinal as O, run_construction
from stabforce.simulate import make_pattern

P2 = make_pattern([("w*6", True, []), ("w*20", True, [])], [("w*6", "w*20", 1)])
P3 = make_pattern([("w*6", True, [1]), ("w*20", True, [])], [("w*6", "w*20", 2)])

grid = [O(t) for t in
        ["0", "1", "5", "w", "w*6", "w*6+3", "w*7", "w*8", "w*19", "w*20+1", "w*21"]]

for name, pattern in (("degree 1 (P2)", P2), ("degree 2 (P3)", P3)):
    result = run_construction(pattern)
    report = minimality_report(result, grid)
    print(f"== {name}: system {result.g} ==")
    print(f"   probing against fresh top {report.theta}, "
          f"settled through {report.last_key}")
    for fate in report.fates:
        if fate.blocked_at:
            lvl, key, value = fate.blocked_at
            print(f"   {str(fate.alpha):8} blocked at level {lvl} by {key} -> {value}")
        else:
            where = "survives" if fate.settled else "beyond the settled region"
            print(f"   {str(fate.alpha):8} {where}")
    print("   survivors:", ", ".join(str(a) for a in report.survivors) or "none")
    print()

s2 = set(minimality_report(run_construction(P2), grid).survivors)
s3 = set(minimality_report(run_construction(P3), grid).survivors)
print("deepening the pattern never unblocks a settled point:", s3 <= s2)
