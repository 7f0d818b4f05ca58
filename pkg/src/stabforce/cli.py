"""Command-line surface: validation, order queries, extensions, simulation.

Exit codes: 0 success, 1 a validator or check failed (or an extension target
is unreachable), 2 malformed input.  Every command takes --json for machine
output; identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .dot import export_dot
from .errors import (
    BadTargetError,
    BudgetExhaustedError,
    InvalidConditionError,
    InvalidIntermediateError,
    NonCanonicalError,
    NotDescendingError,
    NotLim2Error,
    OrdinalSyntaxError,
    OutOfBoundsError,
    OutOfRangeError,
    TargetNotReachableError,
)
from .gen import mutate_system, random_chain, random_system, random_tower
from .oracle import BruteEvaluator
from .ordinal import format_ordinal, parse_ordinal
from .poset import (
    ChainPresentation,
    PosetParams,
    canonical_extend,
    chain_from_dict,
    chain_infimum,
    extend_to_chain_limit,
    extends,
    in_poset,
    meet_dense,
    taller_than,
    top_chain_limit,
)
from .simulate import (
    check_stable_pairs,
    check_requirements,
    minimality_report,
    minimality_to_dict,
    pattern_from_dict,
    result_to_dict,
    run_construction,
    validate_pattern,
)
from .stability import (
    StabilitySystem,
    check_predecessor_laws,
    check_tree_properties,
    is_k_limit,
    lt_k,
    pred_set,
    probe_points,
    system_from_dict,
    system_to_dict,
    validate,
)

OK, CHECK_FAILED, INPUT_ERROR = 0, 1, 2

_INPUT_ERRORS = (OrdinalSyntaxError, NonCanonicalError, OutOfBoundsError,
                 OutOfRangeError, BadTargetError, NotLim2Error,
                 json.JSONDecodeError, ValueError, KeyError, OSError)


def _no_dupes(pairs):
    seen = set()
    out = {}
    for key, value in pairs:
        if key in seen:
            raise ValueError(f"duplicate JSON key {key!r}")
        seen.add(key)
        out[key] = value
    return out


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh, object_pairs_hook=_no_dupes)


def _load_system(path: str) -> StabilitySystem:
    return system_from_dict(_load_json(path))


def _emit(payload: dict, as_json: bool, human: str) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(human, end="" if human.endswith("\n") else "\n")


def cmd_validate(args) -> int:
    p = _load_system(args.system)
    report = validate(p)
    human = "valid" if report.valid else "\n".join(str(v) for v in report.violations)
    _emit(report.to_dict(), args.json, human)
    return OK if report.valid else CHECK_FAILED


def cmd_rel(args) -> int:
    p = _load_system(args.system)
    a = parse_ordinal(args.a)
    b = parse_ordinal(args.b)
    res = lt_k(p, args.k, a, b)
    _emit({"k": args.k, "a": args.a, "b": args.b, "lt": res}, args.json,
          "true" if res else "false")
    return OK


def cmd_preds(args) -> int:
    p = _load_system(args.system)
    b = parse_ordinal(args.b)
    s = pred_set(p, args.k, b)
    payload = {"k": args.k, "b": args.b,
               "intervals": [[format_ordinal(iv.low), format_ordinal(iv.high)]
                             for iv in s]}
    _emit(payload, args.json, str(s))
    return OK


def cmd_extend(args) -> int:
    p = _load_system(args.system)
    if not p.is_valid:
        print("input system is not valid", file=sys.stderr)
        return CHECK_FAILED
    if args.to is not None:
        q = canonical_extend(p, parse_ordinal(args.to))
    else:
        try:
            q = extend_to_chain_limit(p, args.chain_limit, parse_ordinal(args.target))
        except TargetNotReachableError as exc:
            print(f"target not reachable: {exc}", file=sys.stderr)
            return CHECK_FAILED
    _emit(system_to_dict(q), args.json, json.dumps(system_to_dict(q), indent=2))
    return OK


def cmd_infimum(args) -> int:
    chain = chain_from_dict(_load_json(args.chain))
    try:
        q = chain_infimum(chain)
    except NotDescendingError as exc:
        print(f"not a descending chain: {exc}", file=sys.stderr)
        return CHECK_FAILED
    _emit(system_to_dict(q), args.json, json.dumps(system_to_dict(q), indent=2))
    return OK


def _parse_dense(spec: str):
    parts = spec.split(":")
    if parts[0] == "taller_than" and len(parts) == 2:
        return taller_than(parse_ordinal(parts[1]))
    if parts[0] == "top_chain_limit" and len(parts) == 3:
        return top_chain_limit(int(parts[1]), parse_ordinal(parts[2]))
    raise ValueError(f"unknown dense-set spec {spec!r} "
                     "(use taller_than:<ord> or top_chain_limit:<ell>:<ord>)")


def cmd_generic(args) -> int:
    p = _load_system(args.system)
    dense = [_parse_dense(s) for s in args.dense or ()]
    params = None
    if any(v is not None for v in (args.kappa, args.ell, args.gamma)):
        if args.kappa is None:
            print("poset membership checks need --kappa", file=sys.stderr)
            return INPUT_ERROR
        params = PosetParams(kappa=parse_ordinal(args.kappa),
                             ell=args.ell if args.ell is not None else 1,
                             gamma=parse_ordinal(args.gamma or "0"))
        if not in_poset(p, params):
            print(f"condition is not in P({params.kappa}, {params.ell}, "
                  f"{params.gamma})", file=sys.stderr)
            return CHECK_FAILED
    try:
        q, trace = meet_dense(p, dense, args.budget)
    except BudgetExhaustedError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return CHECK_FAILED
    payload = {"system": system_to_dict(q),
               "trace": [{"step": label, "top": format_ordinal(s.top)}
                         for label, s in trace]}
    lines = [f"{label}: top {s.top}" for label, s in trace]
    if params is not None:
        member = in_poset(q, params)
        payload["inPoset"] = member
        lines.append(f"result in P({params.kappa}, {params.ell}, {params.gamma}): "
                     f"{'yes' if member else 'no'}")
    human = "\n".join(lines) + "\n" + json.dumps(system_to_dict(q), indent=2)
    _emit(payload, args.json, human)
    return OK


def cmd_simulate(args) -> int:
    pattern = pattern_from_dict(_load_json(args.pattern))
    pat_report = validate_pattern(pattern)
    if not pat_report.passed:
        _emit(pat_report.to_dict(), args.json,
              "\n".join(str(v) for v in pat_report.violations))
        return CHECK_FAILED
    try:
        result = run_construction(pattern)
    except TargetNotReachableError as exc:
        print(f"target not reachable: {exc}", file=sys.stderr)
        return CHECK_FAILED
    reqs = check_requirements(result, pattern)
    pairs = check_stable_pairs(result, pattern)
    payload = result_to_dict(result)
    payload["requirements"] = reqs.to_dict()
    payload["stablePairs"] = pairs.to_dict()
    lines = []
    for o in result.per_point:
        lines.append(f"point {o.pos}: ell={o.ell} gamma={o.gamma} alpha={o.alpha}")
    lines.append(f"requirements: {'PASS' if reqs.passed else 'FAIL'}")
    lines.append(f"stable-pair ordering: {'PASS' if pairs.passed else 'FAIL'}")
    ok = reqs.passed and pairs.passed
    if args.grid:
        grid = [parse_ordinal(t) for t in args.grid.split(",") if t]
        rep = minimality_report(result, grid)
        payload["minimality"] = minimality_to_dict(rep)
        for f in rep.fates:
            if f.blocked_at:
                lvl, key, value = f.blocked_at
                lines.append(f"{f.alpha}: blocked at level {lvl} by {key} -> {value}")
            else:
                lines.append(f"{f.alpha}: {'survives' if f.settled else 'beyond settled region'}")
        lines.append("survivors: " + (", ".join(str(a) for a in rep.survivors) or "none"))
    _emit(payload, args.json, "\n".join(lines))
    return OK if ok else CHECK_FAILED


def cmd_export_dot(args) -> int:
    p = _load_system(args.system)
    marks = [parse_ordinal(t) for t in args.mark.split(",")] if args.mark else []
    sys.stdout.write(export_dot(p, args.k, marks))
    return OK


def _selftest_failures(seed: int, systems: int) -> list[str]:
    rng = random.Random(seed)
    failures: list[str] = []

    for i in range(systems):
        p = random_system(rng, small=True)
        ev = BruteEvaluator(p)
        pts = probe_points(p, extra=ev.limits)
        for k in range(1, min(p.depth + 1, 4) + 1):
            for a in pts:
                if ev.is_k_limit(k, a) != is_k_limit(p, k, a):
                    failures.append(f"oracle is_k_limit mismatch (system {i}, k={k}, {a})")
                if ev.pred_set(k, a) != pred_set(p, k, a):
                    failures.append(f"oracle pred_set mismatch (system {i}, k={k}, {a})")
                for b in pts:
                    if ev.lt(k, a, b) != lt_k(p, k, a, b):
                        failures.append(f"oracle lt mismatch (system {i}, k={k}, {a}, {b})")
        mutant = mutate_system(rng, p)
        if BruteEvaluator(mutant).validate().valid != validate(mutant).valid:
            failures.append(f"oracle validate mismatch (system {i})")

    for i in range(systems):
        p = random_system(rng)
        probe = probe_points(p, cap=12)
        for k in range(1, p.depth + 1):
            rep = check_tree_properties(p, k, probe)
            if not rep.passed:
                failures.append(f"tree property violation (system {i}, k={k})")
            rep2 = check_predecessor_laws(p, k)
            if not rep2.passed:
                failures.append(f"largest-predecessor violation (system {i}, k={k})")

    for i in range(max(systems // 2, 20)):
        p, q, r, level = random_tower(rng)
        for ell in range(1, level + 1):
            if not (extends(q, p, ell) and extends(r, q, ell) and extends(r, p, ell)):
                failures.append(f"extension transitivity failure (tower {i}, ell={ell})")

    for i in range(max(systems // 2, 20)):
        (p, q, r), target = random_chain(rng)
        chain = ChainPresentation(conditions=(p, q, r), target=target)
        inf = chain_infimum(chain)
        if inf != canonical_extend(r, target):
            failures.append(f"chain infimum mismatch (chain {i})")
        for cond in (p, q, r):
            if not extends(inf, cond, 1):
                failures.append(f"chain infimum does not extend member (chain {i})")
    return failures


def cmd_selftest(args) -> int:
    failures = _selftest_failures(args.seed, args.systems)
    suites = ["oracle differential", "tree/order properties",
              "extension towers", "chain infima"]
    if args.json:
        print(json.dumps({"failures": failures, "passed": not failures}, indent=2))
    else:
        for f in failures:
            print(f"FAIL {f}")
        if not failures:
            print(f"PASS {', '.join(suites)} ({args.systems} systems, seed {args.seed})")
    return OK if not failures else CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabforce",
        description="Exact queries over stability systems and their forcing poset.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, "run the structural checks on a system file")
    sp.add_argument("system")

    sp = add("rel", cmd_rel, "decide a <_k b")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("system")

    sp = add("preds", cmd_preds, "predecessor interval set of b at level k")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("b")
    sp.add_argument("system")

    sp = add("extend", cmd_extend, "canonical or chain-limit extension")
    sp.add_argument("--to", help="canonical extension target top")
    sp.add_argument("--chain-limit", type=int, help="level for a chain-limit extension")
    sp.add_argument("--target", help="value recorded at the new top")
    sp.add_argument("system")

    sp = add("infimum", cmd_infimum, "infimum of a finitely presented chain")
    sp.add_argument("chain")

    sp = add("generic", cmd_generic, "descend below a condition meeting dense sets")
    sp.add_argument("system")
    sp.add_argument("--dense", action="append",
                    help="taller_than:<ord> or top_chain_limit:<ell>:<ord>")
    sp.add_argument("--budget", type=int, default=32)
    sp.add_argument("--kappa", help="poset bound for a membership check")
    sp.add_argument("--ell", type=int, help="poset level (default 1)")
    sp.add_argument("--gamma", help="poset threshold (default 0)")

    sp = add("simulate", cmd_simulate, "replay the construction over a pattern file")
    sp.add_argument("pattern")
    sp.add_argument("--grid", help="comma-separated ordinals for the survivor analysis")

    sp = add("export-dot", cmd_export_dot, "Graphviz view of a level order")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--mark", help="comma-separated ordinals to highlight")
    sp.add_argument("system")

    sp = add("selftest", cmd_selftest, "differential and property suites")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--systems", type=int, default=60)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "extend":
        have_to = args.to is not None
        have_cl = args.chain_limit is not None
        if have_to == have_cl or (have_cl and args.target is None):
            print("extend needs either --to, or --chain-limit with --target",
                  file=sys.stderr)
            return INPUT_ERROR
    try:
        return args.fn(args)
    except (InvalidConditionError, InvalidIntermediateError, BudgetExhaustedError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return CHECK_FAILED
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
