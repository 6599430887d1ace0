"""Shared domain types for the bracketing minimizers.

Everything here is plain float64: intervals, an instrumented objective
wrapper, stop rules, and the run/trace records the solvers emit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable


class BudgetExhausted(Exception):
    """Raised by :class:`Objective` when an evaluation would exceed its budget.

    Solvers treat this as a clean stop signal, not an error.
    """


class NonFiniteValue(ValueError):
    """The objective produced NaN or +/-inf; the run fails.

    When raised from inside a solver the exception carries the iterations
    completed so far in ``partial_trace``.
    """

    def __init__(self, message: str, x: float | None = None):
        super().__init__(message)
        self.x = x
        self.partial_trace: list[TraceEvent] = []


class IncompatibleStopRule(ValueError):
    """The requested method cannot run under the given stop rule."""


@dataclass(frozen=True)
class Interval:
    """A non-degenerate closed interval [lo, hi] with finite endpoints."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise ValueError(f"interval requires lo < hi, got [{self.lo}, {self.hi}]")

    def length(self) -> float:
        return self.hi - self.lo

    def midpoint(self) -> float:
        # lo + (hi - lo)/2 cannot overflow and never leaves the interval
        return self.lo + (self.hi - self.lo) / 2

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


class Objective:
    """Counted wrapper around a scalar function of one real variable.

    Parameters
    ----------
    fn : callable
        Maps a float to something float() accepts (plain Python floats and
        numpy scalars both work).
    budget : int, optional
        Maximum number of evaluations this wrapper will perform.  Once
        ``count`` reaches the budget, further calls raise
        :class:`BudgetExhausted` without invoking ``fn``.

    ``count`` increases by exactly one per performed evaluation and is never
    reset or decremented.  A non-finite result raises
    :class:`NonFiniteValue` (the invocation still counts: it happened).
    """

    def __init__(self, fn: Callable[[float], float], budget: int | None = None):
        if budget is not None and budget < 0:
            raise ValueError("budget must be non-negative")
        self.fn = fn
        self.budget = budget
        self.count = 0

    def evaluate(self, x: float) -> float:
        if self.budget is not None and self.count >= self.budget:
            raise BudgetExhausted(f"evaluation budget of {self.budget} exhausted")
        y = float(self.fn(x))
        self.count += 1
        if not math.isfinite(y):
            raise NonFiniteValue(f"objective returned {y!r} at x={x!r}", x=x)
        return y

    __call__ = evaluate


@dataclass(frozen=True)
class StopRule:
    """Termination rule: exactly one of ``epsilon`` (half-width) or ``budget``.

    * ``StopRule(epsilon=e)`` — stop once the bracket half-width (b-a)/2 <= e,
      checked after each completed iteration.
    * ``StopRule(budget=n)`` — stop when the next required evaluation would
      exceed n total evaluations; n >= 2.
    """

    epsilon: float | None = None
    budget: int | None = None

    def __post_init__(self) -> None:
        if (self.epsilon is None) == (self.budget is None):
            raise ValueError("provide exactly one of epsilon or budget")
        if self.epsilon is not None and not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise ValueError(f"epsilon must be a positive finite float, got {self.epsilon!r}")
        if self.budget is not None:
            if not isinstance(self.budget, int) or isinstance(self.budget, bool):
                raise ValueError(f"budget must be an int, got {self.budget!r}")
            if self.budget < 2:
                raise ValueError(f"budget must be at least 2, got {self.budget}")

    @property
    def is_budget(self) -> bool:
        return self.budget is not None


@dataclass(frozen=True)
class TraceEvent:
    """One solver iteration: the probes it paid for and the bracket it left."""

    iteration: int                       # 1-based
    interval_after: Interval
    evals_this_iter: int
    probes: tuple[tuple[float, float], ...]   # (x, f(x)) pairs, in evaluation order


@dataclass(frozen=True)
class RunResult:
    """Outcome of one minimization run."""

    x_min: float
    f_min: float
    n_evals: int
    n_iters: int
    final_interval: Interval
    trace: tuple[TraceEvent, ...] = field(repr=False, default=())
