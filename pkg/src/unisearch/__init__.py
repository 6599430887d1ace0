"""Derivative-free minimization of unimodal functions on an interval.

Five bracketing methods (interval halving, trichotomy, dichotomous search,
golden section, Fibonacci search) over a shared instrumented objective, with
worst-case bound calculators, a brute-force grid oracle, and a benchmark
registry of reference cases.
"""
from .core import (
    BudgetExhausted,
    IncompatibleStopRule,
    Interval,
    NonFiniteValue,
    Objective,
    RunResult,
    StopRule,
    TraceEvent,
)
from .solvers import (
    Method,
    default_dichotomous_delta,
    minimize,
    minimize_dichotomous,
    minimize_fibonacci,
    minimize_golden_section,
    minimize_interval_halving,
    minimize_trichotomy,
)
from .bounds import (
    AccuracyBound,
    DomainError,
    IterationBound,
    accuracy_bound,
    iteration_bound,
)
from .oracle import GridSpec, brute_force_minimum, is_unimodal
from .bench import (
    BenchmarkCase,
    BenchReport,
    ReportRow,
    all_cases,
    emit_report,
    find_case,
    registry_table1,
    registry_table2,
    run_table1,
    run_table2,
    run_verify,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyBound",
    "BenchReport",
    "BenchmarkCase",
    "BudgetExhausted",
    "DomainError",
    "GridSpec",
    "IncompatibleStopRule",
    "Interval",
    "IterationBound",
    "Method",
    "NonFiniteValue",
    "Objective",
    "ReportRow",
    "RunResult",
    "StopRule",
    "TraceEvent",
    "accuracy_bound",
    "all_cases",
    "brute_force_minimum",
    "default_dichotomous_delta",
    "emit_report",
    "find_case",
    "is_unimodal",
    "iteration_bound",
    "minimize",
    "minimize_dichotomous",
    "minimize_fibonacci",
    "minimize_golden_section",
    "minimize_interval_halving",
    "minimize_trichotomy",
    "registry_table1",
    "registry_table2",
    "run_table1",
    "run_table2",
    "run_verify",
    "__version__",
]
