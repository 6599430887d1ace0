"""Command-line interface.

Subcommands: list, run, table, bounds, verify.  Exit codes are exactly 0
(success), 2 (usage error), and 3 (run or comparison failure).  Identical
invocations produce identical bytes on stdout; human summaries go to stderr
and are suppressed by --quiet.
"""
from __future__ import annotations

import argparse
import json
import sys

from .bench import (
    FLAG_ENDPOINT_MIN,
    FLAG_GARBLED,
    emit_report,
    find_case,
    all_cases,
    run_table1,
    run_table2,
    run_verify,
)
from .bounds import DomainError, accuracy_bound, iteration_bound
from .core import IncompatibleStopRule, Interval, NonFiniteValue, Objective, StopRule
from .solvers import Method, minimize

_FORMATS = ("markdown", "csv", "json")


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _budget_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 2:
        raise argparse.ArgumentTypeError(f"budget must be at least 2: {text!r}")
    return value


def _usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unisearch",
        description="Derivative-free 1-D minimization by interval bracketing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="list benchmark cases")
    p_list.add_argument("--table", choices=("1", "2"), help="restrict to one registry")
    p_list.add_argument("--flag", choices=("endpoint", "garbled"),
                        help="restrict to flagged cases")

    p_run = sub.add_parser("run", help="run one method on one registry case")
    p_run.add_argument("method", choices=[m.value for m in Method])
    p_run.add_argument("case_id", metavar="case")
    g = p_run.add_mutually_exclusive_group(required=True)
    g.add_argument("--tol", type=_positive_float, help="half-width target")
    g.add_argument("--budget", type=_budget_int, help="evaluation budget")
    p_run.add_argument("--delta", type=_positive_float,
                       help="dichotomous probe offset (default: derived)")
    p_run.add_argument("--trace", action="store_true", help="include per-iteration trace")
    p_run.add_argument("--format", choices=_FORMATS, default="markdown")

    p_table = sub.add_parser("table", help="run a benchmark table against its references")
    p_table.add_argument("table", choices=("1", "2"))
    p_table.add_argument("--format", choices=_FORMATS, default="markdown")
    p_table.add_argument("--out", help="write the report to this path instead of stdout")
    p_table.add_argument("--quiet", action="store_true", help="suppress the summary line")

    p_bounds = sub.add_parser("bounds", help="print worst-case bounds")
    p_bounds.add_argument("--length", type=_positive_float, required=True)
    g = p_bounds.add_mutually_exclusive_group(required=True)
    g.add_argument("--tol", type=_positive_float, help="half-width target")
    g.add_argument("--budget", type=_budget_int, help="evaluation budget")

    p_verify = sub.add_parser("verify", help="check every solver against the grid oracle")
    p_verify.add_argument("--grid", type=int, default=1_000_001,
                          help="grid points (default 1000001)")
    p_verify.add_argument("--quiet", action="store_true", help="suppress the summary line")

    return parser


def cmd_list(args) -> int:
    cases = all_cases()
    if args.table:
        cases = [c for c in cases if c.id.startswith(f"t{args.table}_")]
    if args.flag:
        flag = {"endpoint": FLAG_ENDPOINT_MIN, "garbled": FLAG_GARBLED}[args.flag]
        cases = [c for c in cases if flag in c.flags]
    for c in cases:
        stop = f"tol={c.tol:g}" if c.tol is not None else f"budgets={','.join(map(str, c.budgets))}"
        star = f"x*={c.x_star:.6g}" if c.x_star is not None else "x*=?"
        flags = f"  [{','.join(sorted(c.flags))}]" if c.flags else ""
        print(f"{c.id}  {c.label}  on [{c.interval.lo:g}, {c.interval.hi:g}]  {stop}  {star}{flags}")
    return 0


def _run_payload(case, method, res, with_trace: bool):
    payload = {
        "case": case.id,
        "method": method.value,
        "x_min": res.x_min,
        "f_min": res.f_min,
        "n_evals": res.n_evals,
        "n_iters": res.n_iters,
        "final_lo": res.final_interval.lo,
        "final_hi": res.final_interval.hi,
    }
    if with_trace:
        payload["trace"] = [
            {
                "iter": ev.iteration,
                "lo": ev.interval_after.lo,
                "hi": ev.interval_after.hi,
                "length": ev.interval_after.length(),
                "evals": ev.evals_this_iter,
                "probes": [[x, fx] for x, fx in ev.probes],
            }
            for ev in res.trace
        ]
    return payload


def cmd_run(args) -> int:
    method = Method(args.method)
    try:
        case = find_case(args.case_id)
    except KeyError as e:
        return _usage(str(e.args[0]))
    if args.delta is not None and method is not Method.DICHOTOMOUS:
        return _usage("--delta applies to the dichotomous method only")
    stop = StopRule(epsilon=args.tol) if args.tol is not None else StopRule(budget=args.budget)
    try:
        res = minimize(method, Objective(case.fn), case.interval, stop, delta=args.delta)
    except NonFiniteValue as e:
        # a ValueError subclass, but a failed run, not a usage error
        print(f"run failed: {e}", file=sys.stderr)
        return 3
    except (IncompatibleStopRule, ValueError) as e:
        return _usage(str(e))

    if args.format == "json":
        print(json.dumps(_run_payload(case, method, res, args.trace), indent=2))
        return 0
    if args.format == "csv":
        print("case,method,x_min,f_min,n_evals,n_iters,final_lo,final_hi")
        print(",".join([
            case.id, method.value, repr(res.x_min), repr(res.f_min),
            str(res.n_evals), str(res.n_iters),
            repr(res.final_interval.lo), repr(res.final_interval.hi),
        ]))
        return 0
    print(f"case: {case.id}  ({case.label} on [{case.interval.lo:g}, {case.interval.hi:g}])")
    print(f"method: {method.value}")
    print(f"x_min: {res.x_min!r}")
    print(f"f_min: {res.f_min!r}")
    print(f"n_evals: {res.n_evals}")
    print(f"n_iters: {res.n_iters}")
    print(f"final_interval: [{res.final_interval.lo!r}, {res.final_interval.hi!r}]")
    if args.trace:
        iv = case.interval
        print("trace:")
        print(f"  0: [{iv.lo!r}, {iv.hi!r}] len={iv.length()!r} evals=0")
        for ev in res.trace:
            probes = " ".join(f"{x!r}:{fx!r}" for x, fx in ev.probes)
            ia = ev.interval_after
            print(f"  {ev.iteration}: [{ia.lo!r}, {ia.hi!r}] len={ia.length()!r} "
                  f"evals={ev.evals_this_iter} probes={probes}")
    return 0


def cmd_table(args) -> int:
    report = run_table1() if args.table == "1" else run_table2()
    text = emit_report(report, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    gated = [r for r in report.rows if r.passed is not None]
    passed = sum(1 for r in gated if r.passed)
    excluded = len(report.rows) - len(gated)
    if not args.quiet:
        verdict = "PASS" if passed == len(gated) else "FAIL"
        note = f" ({excluded} excluded)" if excluded else ""
        print(f"{verdict}: {passed}/{len(gated)} comparisons within tolerance{note}",
              file=sys.stderr)
    return 0 if passed == len(gated) else 3


def cmd_bounds(args) -> int:
    try:
        if args.tol is not None:
            for method in (Method.HALVING, Method.TRICHOTOMY):
                b = iteration_bound(method, args.length, args.tol)
                print(f"{method.value}: k_formula={b.k_formula} k_exact={b.k_exact}")
        else:
            for method in (Method.HALVING, Method.TRICHOTOMY):
                b = accuracy_bound(method, args.length, args.budget)
                print(f"{method.value}: accuracy_bound={b.epsilon_bound!r}")
    except DomainError as e:
        return _usage(str(e))
    return 0


def cmd_verify(args) -> int:
    if args.grid < 3:
        return _usage("--grid needs at least 3 points")
    rows, threshold = run_verify(grid_points=args.grid)
    if threshold > 1e-4 and not args.quiet:
        print(f"warning: grid resolution exceeds the 1e-04 agreement target; "
              f"using threshold {threshold:.3e}", file=sys.stderr)
    failures = 0
    for r in rows:
        mark = "ok" if r.passed else "FAIL"
        failures += 0 if r.passed else 1
        print(f"{r.case} {r.method.value}: x={r.x_solver!r} oracle={r.x_oracle!r} "
              f"diff={r.diff:.3e} {mark}")
    if not args.quiet:
        verdict = "PASS" if failures == 0 else "FAIL"
        print(f"{verdict}: {len(rows) - failures}/{len(rows)} within {threshold:.3e}",
              file=sys.stderr)
    return 0 if failures == 0 else 3


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "list": cmd_list,
        "run": cmd_run,
        "table": cmd_table,
        "bounds": cmd_bounds,
        "verify": cmd_verify,
    }
    return handlers[args.command](args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
