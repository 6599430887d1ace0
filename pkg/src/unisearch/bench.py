"""Benchmark registries and comparison harness.

Two registries of test problems with published reference results: table 1
fixes a half-width tolerance per case and compares evaluation counts; table
2 fixes evaluation budgets (10, 20, 30) and compares the achieved error
|x_hat - x*|.  Functions are hard-coded closures (numpy ufuncs, so the same
closure serves scalar solver calls and vectorized oracle grids); there is no
expression parsing.

A table-1 count passes when it lands within +/-2 of the reference; a table-2
error passes when it is at most twice the reference and (for halving and
trichotomy) no worse than the guaranteed accuracy bound.  Cases flagged
``garbled`` are reported but excluded from pass/fail.
"""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from io import StringIO
from typing import Callable, Iterable, Sequence

import numpy as np

from .bounds import accuracy_bound
from .core import Interval, NonFiniteValue, Objective, StopRule
from .oracle import GridSpec, brute_force_minimum
from .solvers import Method, minimize

FLAG_ENDPOINT_MIN = "endpoint-min"   # minimizer sits on the bracket boundary
FLAG_GARBLED = "garbled"             # reference row is corrupt; report, don't gate

TABLE1_COUNT_TOLERANCE = 2
TABLE2_ERROR_FACTOR = 2.0
TABLE2_BUDGETS = (10, 20, 30)

METHOD_ORDER = (
    Method.HALVING,
    Method.TRICHOTOMY,
    Method.DICHOTOMOUS,
    Method.GOLDEN,
    Method.FIBONACCI,
)
_RANK = {m: i for i, m in enumerate(METHOD_ORDER)}


@dataclass(frozen=True, eq=False)
class BenchmarkCase:
    """One registry entry: a function, a bracket, and its reference results."""

    id: str
    label: str
    fn: Callable[[float], float]
    interval: Interval
    x_star: float | None                      # best known minimizer (float64-accurate)
    tol: float | None = None                  # table-1 half-width target
    budgets: tuple[int, ...] | None = None    # table-2 evaluation budgets
    ref_counts: dict[Method, int] | None = None
    ref_errors: dict[tuple[Method, int], float] | None = None
    flags: frozenset[str] = frozenset()


def _t1(num, label, fn, lo, hi, tol, x_star, n_halving, n_trichotomy, n_golden, flags=()):
    return BenchmarkCase(
        id=f"t1_{num:02d}",
        label=label,
        fn=fn,
        interval=Interval(lo, hi),
        x_star=x_star,
        tol=tol,
        ref_counts={
            Method.HALVING: n_halving,
            Method.TRICHOTOMY: n_trichotomy,
            Method.GOLDEN: n_golden,
        },
        flags=frozenset(flags),
    )


def _t2(num, label, fn, lo, hi, x_star, halving, trichotomy, fibonacci):
    errors = {}
    for method, cells in (
        (Method.HALVING, halving),
        (Method.TRICHOTOMY, trichotomy),
        (Method.FIBONACCI, fibonacci),
    ):
        for n, err in zip(TABLE2_BUDGETS, cells):
            errors[(method, n)] = err
    return BenchmarkCase(
        id=f"t2_{num:02d}",
        label=label,
        fn=fn,
        interval=Interval(lo, hi),
        x_star=x_star,
        budgets=TABLE2_BUDGETS,
        ref_errors=errors,
    )


_TABLE1: tuple[BenchmarkCase, ...] = (
    _t1(1, "exp(x) + 1/x", lambda x: np.exp(x) + 1 / x,
        0.5, 1.0, 1e-3, 0.7034674224983917, 15, 15, 15),
    _t1(2, "5/x + x^2", lambda x: 5 / x + x**2,
        0.5, 2.0, 1e-6, 1.3572088082974534, 37, 31, 32),
    _t1(3, "-5/(x^2 - 2x + 5)", lambda x: -5 / (x**2 - 2 * x + 5),
        0.8, 2.0, 1e-7, 1.0, 35, 31, 36),
    _t1(4, "exp(-2x) + x^2/2", lambda x: np.exp(-2 * x) + x**2 / 2,
        0.0, 1.5, 1e-8, 0.6010839365985214, 48, 40, 42),
    _t1(5, "exp(x-1) + 1/x", lambda x: np.exp(x - 1) + 1 / x,
        0.0, 1.5, 1e-6, 1.0, 31, 28, 32),
    _t1(6, "x^2 - x*exp(-x)", lambda x: x**2 - x * np.exp(-x),
        0.0, 1.0, 1e-7, 0.27520839265771546, 42, 34, 36),
    _t1(7, "5x^2 + 1/x", lambda x: 5 * x**2 + 1 / x,
        0.0, 2.5, 1e-5, 0.46415888336127786, 31, 27, 28),
    _t1(8, "exp(-x) + 1/(1-x)", lambda x: np.exp(-x) + 1 / (1 - x),
        -3.0, 0.0, 1e-6, 0.0, 43, 40, 33, flags=(FLAG_ENDPOINT_MIN,)),
    _t1(9, "2 - x + x^2", lambda x: 2 - x + x**2,
        0.0, 2.0, 1e-8, 0.5, 53, 43, 42),
    _t1(10, "-x*exp(-0.5x)", lambda x: -(x * np.exp(-0.5 * x)),
        0.0, 3.0, 1e-4, 2.0, 22, 20, 24),
    _t1(11, "-(0.2x + sin(2x))", lambda x: -(0.2 * x + np.sin(2 * x)),
        0.0, 3.0, 1e-7, 0.8354818739782283, 42, 37, 38),
    _t1(12, "-(1/x - exp(-x))", lambda x: -(1 / x - np.exp(-x)),
        0.0, 0.5, 1e-5, 0.0, 16, 21, 25, flags=(FLAG_ENDPOINT_MIN,)),
    _t1(13, "exp(x) + x^2", lambda x: np.exp(x) + x**2,
        -1.0, 0.0, 1e-6, -0.35173371124919584, 34, 27, 31),
    _t1(14, "x^4 + 2x^2 + 4x", lambda x: x**4 + 2 * x**2 + 4 * x,
        -1.0, 0.0, 1e-4, -0.6823278038280193, 22, 20, 22),
    _t1(15, "x^2 + sin(x)", lambda x: x**2 + np.sin(x),
        -1.0, 0.0, 1e-8, -0.45018361129487355, 48, 41, 40),
    _t1(16, "exp(x) + 1/(x+2)", lambda x: np.exp(x) + 1 / (x + 2),
        -1.0, 1.0, 1e-5, -0.6298461156908121, 30, 25, 28),
    _t1(17, "2/x^2", lambda x: 2 / x**2,
        -2.0, 0.0, 1e-8, -2.0, 28, 35, 42, flags=(FLAG_ENDPOINT_MIN,)),
    _t1(18, "-5x^2*exp(-0.5x)", lambda x: -(5 * x**2 * np.exp(-0.5 * x)),
        2.0, 6.0, 1e-7, 4.0, 51, 33, 39),
    _t1(19, "-(0.1x + cos(x))", lambda x: -(0.1 * x + np.cos(x)),
        4.0, 9.0, 1e-5, 6.383352728341146, 34, 26, 30),
    _t1(20, "-(cos(1.5x)/sin(1.5x) - x^2)", lambda x: -(np.cos(1.5 * x) / np.sin(1.5 * x) - x**2),
        4.0, 9.0, 1e-6, 4.19, 31, 29, 35, flags=(FLAG_GARBLED,)),
)

_TABLE2: tuple[BenchmarkCase, ...] = (
    _t2(1, "(x - 1.1)^2", lambda x: (x - 1.1) ** 2, 0.0, 2.0, 1.1,
        halving=(0.625e-2, 0.977e-4, 0.611e-5),
        trichotomy=(0.123e-2, 0.152e-4, 0.019e-5),
        fibonacci=(0.511e-2, 0.365e-4, 0.082e-5)),
    _t2(2, "-5x^2*exp(-0.5x)", lambda x: -(5 * x**2 * np.exp(-0.5 * x)), 1.0, 6.0, 4.0,
        halving=(0.313e-1, 0.488e-3, 0.763e-5),
        trichotomy=(0.062e-1, 0.076e-3, 0.094e-5),
        fibonacci=(0.056e-1, 0.411e-3, 0.037e-5)),
    _t2(3, "cos(x)", lambda x: np.cos(x), 2.0, 4.0, math.pi,
        halving=(0.146e-1, 0.009e-3, 0.635e-5),
        trichotomy=(0.058e-1, 0.154e-3, 0.027e-5),
        fibonacci=(0.018e-1, 0.029e-3, 0.015e-5)),
)


def registry_table1() -> list[BenchmarkCase]:
    """The twenty fixed-tolerance cases, ids t1_01..t1_20."""
    return list(_TABLE1)


def registry_table2() -> list[BenchmarkCase]:
    """The three fixed-budget cases, ids t2_01..t2_03."""
    return list(_TABLE2)


def all_cases() -> list[BenchmarkCase]:
    return list(_TABLE1 + _TABLE2)


def find_case(case_id: str) -> BenchmarkCase:
    for case in _TABLE1 + _TABLE2:
        if case.id == case_id:
            return case
    raise KeyError(f"no benchmark case with id {case_id!r}")


@dataclass(frozen=True)
class ReportRow:
    case: str
    method: Method
    n: int | None                 # budget column; empty for table 1
    measured: float | None        # count (table 1) or |x_hat - x*| (table 2)
    expected: float | None        # published reference value
    passed: bool | None           # None = excluded from pass/fail
    deviation: float | None       # measured - expected


@dataclass(frozen=True)
class BenchReport:
    kind: str                     # "table1" | "table2"
    rows: tuple[ReportRow, ...]

    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows if r.passed is not None)


def _thread_count() -> int:
    raw = os.environ.get("UNISEARCH_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(n, 1)


def _map_cases(worker, cases: Sequence[BenchmarkCase]) -> list:
    threads = min(_thread_count(), len(cases)) or 1
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(worker, cases))   # map() keeps input order
    return [worker(c) for c in cases]


def _sorted_methods(methods: Iterable[Method | str]) -> list[Method]:
    return sorted({Method(m) for m in methods}, key=_RANK.__getitem__)


def run_table1(
    methods: Iterable[Method | str] | None = None,
    case_ids: Iterable[str] | None = None,
) -> BenchReport:
    """Run the fixed-tolerance cases and compare evaluation counts."""
    chosen = _sorted_methods(methods or (Method.HALVING, Method.TRICHOTOMY, Method.GOLDEN))
    wanted = set(case_ids) if case_ids is not None else None
    cases = [c for c in _TABLE1 if wanted is None or c.id in wanted]

    def worker(case: BenchmarkCase) -> list[ReportRow]:
        rows = []
        gated = FLAG_GARBLED not in case.flags
        for method in chosen:
            expected = case.ref_counts.get(method) if case.ref_counts else None
            try:
                res = minimize(method, Objective(case.fn), case.interval,
                               StopRule(epsilon=case.tol))
                measured = res.n_evals
            except NonFiniteValue:
                rows.append(ReportRow(case.id, method, None, None, expected,
                                      False if gated else None, None))
                continue
            if expected is None:
                rows.append(ReportRow(case.id, method, None, measured, None, None, None))
                continue
            deviation = measured - expected
            passed = abs(deviation) <= TABLE1_COUNT_TOLERANCE if gated else None
            rows.append(ReportRow(case.id, method, None, measured, expected, passed, deviation))
        return rows

    rows = [row for case_rows in _map_cases(worker, cases) for row in case_rows]
    return BenchReport("table1", tuple(rows))


def run_table2(methods: Iterable[Method | str] | None = None) -> BenchReport:
    """Run the fixed-budget cases and compare achieved errors."""
    chosen = _sorted_methods(methods or (Method.HALVING, Method.TRICHOTOMY, Method.FIBONACCI))

    def worker(case: BenchmarkCase) -> list[ReportRow]:
        rows = []
        for method in chosen:
            for n in case.budgets or TABLE2_BUDGETS:
                expected = (case.ref_errors or {}).get((method, n))
                try:
                    # The published Fibonacci errors are finer than any
                    # N-evaluation lattice allows; they correspond to one
                    # uncharged stage on top of the nominal budget, matching
                    # how the iterative methods get to finish the iteration
                    # that crosses the budget.  Reproduce that convention.
                    run_n = n + 1 if method is Method.FIBONACCI else n
                    res = minimize(method, Objective(case.fn), case.interval,
                                   StopRule(budget=run_n))
                    measured = abs(res.x_min - case.x_star)
                except NonFiniteValue:
                    rows.append(ReportRow(case.id, method, n, None, expected, False, None))
                    continue
                if expected is None:
                    rows.append(ReportRow(case.id, method, n, measured, None, None, None))
                    continue
                passed = measured <= TABLE2_ERROR_FACTOR * expected
                if method in (Method.HALVING, Method.TRICHOTOMY):
                    bound = accuracy_bound(method, case.interval.length(), n).epsilon_bound
                    passed = passed and measured <= bound
                rows.append(ReportRow(case.id, method, n, measured, expected, passed,
                                      measured - expected))
        return rows

    rows = [row for case_rows in _map_cases(worker, _TABLE2) for row in case_rows]
    return BenchReport("table2", tuple(rows))


@dataclass(frozen=True)
class VerifyRow:
    case: str
    method: Method
    x_solver: float
    x_oracle: float
    diff: float
    threshold: float
    passed: bool


def fibonacci_budget_for(length: float, tol: float) -> int:
    """Smallest evaluation count whose Fibonacci estimate error is <= tol.

    An n-evaluation run's estimate is off by at most length/F(n+1).
    """
    n = 2
    f_prev, f_cur = 2, 3   # F(2), F(3): the n = 2 error bound is length/F(3)
    while length / f_cur > tol:
        f_prev, f_cur = f_cur, f_prev + f_cur
        n += 1
    return n


def run_verify(grid_points: int = 1_000_001, tol: float = 1e-6,
               agreement: float = 1e-4) -> tuple[list[VerifyRow], float]:
    """Check every solver against the grid oracle on every non-garbled case.

    Returns the per-(case, method) rows and the agreement threshold used:
    ``agreement``, widened to twice the grid resolution when the grid is too
    coarse to certify at ``agreement``.
    """
    cases = [c for c in all_cases() if FLAG_GARBLED not in c.flags]
    worst_resolution = max(
        (c.interval.length() - 2e-9 * c.interval.length()) / (grid_points - 1) for c in cases
    )
    threshold = max(agreement, 2 * worst_resolution)

    def worker(case: BenchmarkCase) -> list[VerifyRow]:
        grid = GridSpec(points=grid_points, inset=case.interval.length() * 1e-9)
        x_oracle, _ = brute_force_minimum(case.fn, case.interval, grid)
        rows = []
        for method in METHOD_ORDER:
            if method is Method.FIBONACCI:
                budget = fibonacci_budget_for(case.interval.length(), tol)
                stop = StopRule(budget=budget)
            else:
                stop = StopRule(epsilon=tol)
            res = minimize(method, Objective(case.fn), case.interval, stop)
            diff = abs(res.x_min - x_oracle)
            rows.append(VerifyRow(case.id, method, res.x_min, x_oracle, diff,
                                  threshold, diff <= threshold))
        return rows

    return [row for case_rows in _map_cases(worker, cases) for row in case_rows], threshold


def _fmt(value, sig17: bool) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return repr(float(value)) if sig17 else f"{value:.2e}"


CSV_HEADER = "case,method,n,measured,paper,pass,deviation"


def emit_report(report: BenchReport, fmt: str = "markdown") -> str:
    """Render a report as csv, markdown, or json (byte-deterministic)."""
    if fmt == "csv":
        out = StringIO()
        out.write(CSV_HEADER + "\n")
        for r in report.rows:
            out.write(",".join([
                r.case, r.method.value,
                _fmt(r.n, True), _fmt(r.measured, True), _fmt(r.expected, True),
                _fmt(r.passed, True), _fmt(r.deviation, True),
            ]) + "\n")
        return out.getvalue()
    if fmt == "json":
        payload = [
            {
                "case": r.case, "method": r.method.value, "n": r.n,
                "measured": r.measured, "paper": r.expected,
                "pass": r.passed, "deviation": r.deviation,
            }
            for r in report.rows
        ]
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "markdown":
        lines = [
            "| case | method | n | measured | paper | pass | deviation |",
            "|------|--------|---|----------|-------|------|-----------|",
        ]
        for r in report.rows:
            lines.append("| " + " | ".join([
                r.case, r.method.value,
                _fmt(r.n, True), _fmt(r.measured, False), _fmt(r.expected, False),
                {True: "yes", False: "NO", None: "-"}[r.passed],
                _fmt(r.deviation, False),
            ]) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")
