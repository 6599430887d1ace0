"""Derivative-free bracketing minimizers for unimodal functions on [a, b].

Five methods share a common contract: probes are strictly interior to the
current bracket (endpoints are never evaluated), comparisons use ``<=`` so
ties always take the left/lower branch, and every run returns a
:class:`~unisearch.core.RunResult` whose trace accounts for each paid
evaluation.  Interval-halving and trichotomy keep their estimate pinned to
the exact midpoint of the bracket; golden-section and Fibonacci carry the
best evaluated interior point instead.
"""
from __future__ import annotations

import math
from enum import Enum

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

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0   # 1/phi = 0.6180339887498949


class Method(str, Enum):
    HALVING = "halving"
    TRICHOTOMY = "trichotomy"
    DICHOTOMOUS = "dichotomous"
    GOLDEN = "golden"
    FIBONACCI = "fibonacci"

    def __str__(self) -> str:  # argparse/report friendliness
        return self.value


class _Run:
    """Per-run bookkeeping: probe accounting, trace assembly, best point."""

    def __init__(self, obj: Objective, limit: int | None):
        self.obj = obj
        self.limit = limit          # run-local evaluation budget (StopRule.budget)
        self.evals = 0
        self.pending: list[tuple[float, float]] = []
        self.events: list[TraceEvent] = []
        self.best_x = math.nan
        self.best_f = math.inf

    def affordable(self, n: int = 1) -> bool:
        return self.limit is None or self.evals + n <= self.limit

    def probe(self, x: float) -> float:
        if not self.affordable(1):
            raise BudgetExhausted(f"next evaluation would exceed budget of {self.limit}")
        y = self.obj.evaluate(x)
        self.evals += 1
        self.pending.append((x, y))
        if y < self.best_f:
            self.best_x, self.best_f = x, y
        return y

    def flush(self, interval: Interval) -> None:
        self.events.append(
            TraceEvent(len(self.events) + 1, interval, len(self.pending), tuple(self.pending))
        )
        self.pending.clear()

    def flush_partial(self, interval: Interval) -> None:
        if self.pending:
            self.flush(interval)

    def fold_pending_into_last(self, interval: Interval) -> None:
        """Attach pending probes to the most recent event (answer probes)."""
        if not self.events:
            self.flush(interval)
            return
        last = self.events[-1]
        self.events[-1] = TraceEvent(
            last.iteration,
            last.interval_after,
            last.evals_this_iter + len(self.pending),
            last.probes + tuple(self.pending),
        )
        self.pending.clear()

    def fail(self, exc: NonFiniteValue, interval: Interval):
        self.flush_partial(interval)
        exc.partial_trace = list(self.events)
        return exc

    def result(self, x: float, f: float, interval: Interval) -> RunResult:
        return RunResult(
            x_min=x,
            f_min=f,
            n_evals=self.evals,
            n_iters=len(self.events),
            final_interval=interval,
            trace=tuple(self.events),
        )


def _half_width_reached(stop: StopRule, a: float, b: float) -> bool:
    return stop.epsilon is not None and (b - a) / 2 <= stop.epsilon


def minimize_interval_halving(obj: Objective, iv: Interval, stop: StopRule) -> RunResult:
    """Interval halving: keep the bracket midpoint evaluated, probe quarter points.

    The midpoint x2 = (a+b)/2 is evaluated once up front (part of iteration 1).
    Each iteration probes x1 = (a+x2)/2 and, only if needed, x3 = (x2+b)/2,
    then keeps the half that still brackets the minimum; the bracket halves
    every iteration and x2 is always its midpoint.  Cost: at most 3
    evaluations in iteration 1 and at most 2 thereafter.  The estimate is x2.

    Stop rules are checked between iterations, never inside one: a budget of
    N lets the iteration in progress finish, so the run spends N or N+1
    evaluations.  A hard cap belongs on the Objective itself, which refuses
    the overshooting probe and ends the run mid-iteration.
    """
    a, b = iv.lo, iv.hi
    r = _Run(obj, None)
    try:
        x2 = (a + b) / 2
        f2 = r.probe(x2)
    except NonFiniteValue as e:
        raise r.fail(e, iv)
    try:
        while True:
            pa, pb = a, b
            span = b - a
            x1 = (a + x2) / 2
            f1 = r.probe(x1)
            if f1 <= f2:
                b, x2, f2 = x2, x1, f1
            else:
                x3 = (x2 + b) / 2
                f3 = r.probe(x3)
                if f2 <= f3:
                    a, b = x1, x3
                else:
                    a, x2, f2 = x2, x3, f3
            if not (b - a) > 0.0:    # bracket collapsed at the FP floor
                a, b = pa, pb
                r.fold_pending_into_last(Interval(a, b))
                break
            r.flush(Interval(a, b))
            if _half_width_reached(stop, a, b):
                break
            if stop.budget is not None and r.evals >= stop.budget:
                break
            if not (b - a) < span:   # numerical resolution floor
                break
    except BudgetExhausted:
        r.flush_partial(Interval(a, b))
    except NonFiniteValue as e:
        raise r.fail(e, Interval(a, b))
    return r.result(x2, f2, Interval(a, b))


def minimize_trichotomy(obj: Objective, iv: Interval, stop: StopRule) -> RunResult:
    """Trichotomy: keep the bracket midpoint evaluated, probe third points.

    The midpoint x3 = (a+b)/2 is evaluated once up front (part of iteration
    1).  Each iteration probes x2 = (a+2*x3)/3; if f(x2) <= f(x3) it refines
    to the left with x1 = (a+x2)/2, otherwise it probes x4 = (b+2*x3)/3 and,
    if that side keeps improving, x5 = (2*b+x3)/3.  Whatever the branch, the
    bracket shrinks to exactly one third of its length and x3 remains its
    midpoint.  Cost: at most 4 evaluations in iteration 1 and at most 3
    thereafter.  The estimate is x3.

    Stop rules are checked between iterations, as in interval halving: a
    budget of N lets the iteration in progress finish (N to N+2 evaluations
    spent); a hard cap on the Objective ends the run mid-iteration.
    """
    a, b = iv.lo, iv.hi
    r = _Run(obj, None)
    try:
        x3 = (a + b) / 2
        f3 = r.probe(x3)
    except NonFiniteValue as e:
        raise r.fail(e, iv)
    try:
        while True:
            pa, pb = a, b
            span = b - a
            x2 = (a + 2 * x3) / 3
            f2 = r.probe(x2)
            if f2 <= f3:
                x1 = (a + x2) / 2
                f1 = r.probe(x1)
                if f1 <= f2:
                    b, x3, f3 = x2, x1, f1          # keep [a, x2]
                else:
                    a, b, x3, f3 = x1, x3, x2, f2   # keep [x1, x3]
            else:
                x4 = (b + 2 * x3) / 3
                f4 = r.probe(x4)
                if f4 <= f3:
                    x5 = (2 * b + x3) / 3
                    f5 = r.probe(x5)
                    if f5 <= f4:
                        a, x3, f3 = x4, x5, f5          # keep [x4, b]
                    else:
                        a, b, x3, f3 = x3, x5, x4, f4   # keep [x3, x5]
                else:
                    a, b = x2, x4                        # keep [x2, x4], x3 stays
            if not (b - a) > 0.0:    # bracket collapsed at the FP floor
                a, b = pa, pb
                r.fold_pending_into_last(Interval(a, b))
                break
            r.flush(Interval(a, b))
            if _half_width_reached(stop, a, b):
                break
            if stop.budget is not None and r.evals >= stop.budget:
                break
            if not (b - a) < span:
                break
    except BudgetExhausted:
        r.flush_partial(Interval(a, b))
    except NonFiniteValue as e:
        raise r.fail(e, Interval(a, b))
    return r.result(x3, f3, Interval(a, b))


def default_dichotomous_delta(iv: Interval, stop: StopRule) -> float:
    """Probe offset used by the dichotomous method when none is given."""
    if stop.epsilon is not None:
        return min(stop.epsilon / 2, iv.length() * 1e-6)
    return iv.length() * 1e-6


def minimize_dichotomous(
    obj: Objective, iv: Interval, stop: StopRule, delta: float | None = None
) -> RunResult:
    """Dichotomous search: probe a symmetric pair around the bracket midpoint.

    Each iteration evaluates f(m - delta/2) and f(m + delta/2) at the current
    midpoint m and keeps [a, m + delta/2] or [m - delta/2, b].  The estimate
    is the midpoint of the final bracket, evaluated as a final answer probe;
    under a budget that cannot afford the answer probe, the better probe of
    the last completed pair is returned instead (it lies in the final
    bracket).  Budget affordability is checked per pair, so a trailing odd
    evaluation funds the answer probe rather than half a pair.
    """
    a, b = iv.lo, iv.hi
    if delta is None:
        delta = default_dichotomous_delta(iv, stop)
    if not (0 < delta < iv.length() / 4):
        raise ValueError(
            f"dichotomous delta must satisfy 0 < delta < length/4, got {delta!r}"
        )
    r = _Run(obj, stop.budget)
    pair_best: tuple[float, float] | None = None
    try:
        while True:
            if not r.affordable(2):
                break
            pa, pb = a, b
            span = b - a
            m = (a + b) / 2
            xl, xr = m - delta / 2, m + delta / 2
            f_l = r.probe(xl)
            f_r = r.probe(xr)
            if f_l <= f_r:
                b = xr
                pair_best = (xl, f_l)
            else:
                a = xl
                pair_best = (xr, f_r)
            if not (b - a) > 0.0:    # bracket collapsed at the FP floor
                a, b = pa, pb
                r.fold_pending_into_last(Interval(a, b))
                break
            r.flush(Interval(a, b))
            if _half_width_reached(stop, a, b):
                break
            if not (b - a) < span:
                break
    except BudgetExhausted:
        r.flush_partial(Interval(a, b))
    except NonFiniteValue as e:
        raise r.fail(e, Interval(a, b))

    final = Interval(a, b)
    if r.affordable(1):
        xm = (a + b) / 2
        try:
            fm = r.probe(xm)
        except BudgetExhausted:
            pass   # objective's own budget refused the answer probe
        except NonFiniteValue as e:
            raise r.fail(e, final)
        else:
            r.fold_pending_into_last(final)
            return r.result(xm, fm, final)
    # budget exactly consumed by the pairs: fall back to the better last probe
    if pair_best is None:
        raise BudgetExhausted("budget too small for a single probe pair")
    return r.result(pair_best[0], pair_best[1], final)


def minimize_golden_section(obj: Objective, iv: Interval, stop: StopRule) -> RunResult:
    """Golden-section search with two interior points at the 1/phi split.

    Probes sit at a + (1 - 1/phi)*L and a + (1/phi)*L; after the first
    iteration (two evaluations) each iteration reuses the surviving point and
    pays one new evaluation, shrinking the bracket by the factor 1/phi.  With
    an epsilon stop the loop runs while (b - a) > epsilon and then evaluates
    the returned estimate, the midpoint of the final bracket, as one extra
    answer probe.  Under a budget the method spends everything on shrink
    steps and returns the best evaluated interior point.
    """
    a, b = iv.lo, iv.hi
    r = _Run(obj, stop.budget)
    length_stop = stop.epsilon  # full-length threshold, see docstring
    try:
        span0 = b - a
        xl = a + (1 - _INVPHI) * span0
        xh = a + _INVPHI * span0
        f_l = r.probe(xl)
        f_h = r.probe(xh)
        while True:
            pa, pb = a, b
            span = b - a
            if f_l <= f_h:            # keep [a, xh]
                b = xh
                xh, f_h = xl, f_l
                new_low = True
            else:                     # keep [xl, b]
                a = xl
                xl, f_l = xh, f_h
                new_low = False
            if not (b - a) > 0.0:    # bracket collapsed at the FP floor
                a, b = pa, pb
                r.fold_pending_into_last(Interval(a, b))
                break
            r.flush(Interval(a, b))
            if length_stop is not None and (b - a) <= length_stop:
                break
            if not (b - a) < span:
                break
            cur = b - a
            if new_low:
                xl = a + (1 - _INVPHI) * cur
                f_l = r.probe(xl)
            else:
                xh = a + _INVPHI * cur
                f_h = r.probe(xh)
    except BudgetExhausted:
        if r.evals == 0:
            raise
        r.flush_partial(Interval(a, b))
        return r.result(r.best_x, r.best_f, Interval(a, b))
    except NonFiniteValue as e:
        raise r.fail(e, Interval(a, b))

    final = Interval(a, b)
    if length_stop is None:
        return r.result(r.best_x, r.best_f, final)
    xm = (a + b) / 2
    try:
        fm = r.probe(xm)
    except BudgetExhausted:
        return r.result(r.best_x, r.best_f, final)
    except NonFiniteValue as e:
        raise r.fail(e, final)
    r.fold_pending_into_last(final)
    return r.result(xm, fm, final)


def _fibonacci_numbers(n: int) -> list[int]:
    fib = [1, 1]
    while len(fib) <= n:
        fib.append(fib[-1] + fib[-2])
    return fib


def minimize_fibonacci(obj: Objective, iv: Interval, n_evals: int) -> RunResult:
    """Fibonacci search consuming exactly ``n_evals`` evaluations.

    With F(0) = F(1) = 1, the stage with index m places interior points at
    a + F(m-2)/F(m)*L and a + F(m-1)/F(m)*L; the ladder starts at
    m = n_evals + 1 and pays one new evaluation per stage.  The run ends
    with the surviving probe at the midpoint of a bracket two lattice units
    wide, and that evaluated midpoint is the estimate, so the error is at
    most length/F(n_evals + 1) -- no tie-breaking offset probe is needed.
    Requires a budget stop rule: there is no epsilon-driven variant.
    """
    if not isinstance(n_evals, int) or isinstance(n_evals, bool) or n_evals < 2:
        raise ValueError(f"fibonacci search needs an integer budget >= 2, got {n_evals!r}")
    if n_evals > 1400:
        raise ValueError("budget too large: Fibonacci ratios overflow float64 beyond 1400")
    a, b = iv.lo, iv.hi
    fib = _fibonacci_numbers(n_evals + 1)
    r = _Run(obj, n_evals)
    try:
        m = n_evals + 1
        span = b - a
        xl = a + (fib[m - 2] / fib[m]) * span
        xh = a + (fib[m - 1] / fib[m]) * span
        f_l = r.probe(xl)
        f_h = r.probe(xh)
        while m > 3:
            pa, pb = a, b
            if f_l <= f_h:
                b = xh
                xh, f_h = xl, f_l
                new_low = True
            else:
                a = xl
                xl, f_l = xh, f_h
                new_low = False
            if not (b - a) > 0.0:    # bracket collapsed at the FP floor
                a, b = pa, pb
                r.fold_pending_into_last(Interval(a, b))
                return r.result(r.best_x, r.best_f, Interval(a, b))
            r.flush(Interval(a, b))
            m -= 1
            span = b - a
            if new_low:
                xl = a + (fib[m - 2] / fib[m]) * span
                f_l = r.probe(xl)
            else:
                xh = a + (fib[m - 1] / fib[m]) * span
                f_h = r.probe(xh)
        # the stage-3 comparison leaves the surviving probe at the midpoint
        # of the final bracket, two lattice units wide
        pa, pb = a, b
        if f_l <= f_h:
            b, c, fc = xh, xl, f_l
        else:
            a, c, fc = xl, xh, f_h
        if not (b - a) > 0.0:
            a, b = pa, pb
            r.fold_pending_into_last(Interval(a, b))
            return r.result(r.best_x, r.best_f, Interval(a, b))
        r.flush(Interval(a, b))
    except BudgetExhausted:
        if r.evals == 0:
            raise
        r.flush_partial(Interval(a, b))
        return r.result(r.best_x, r.best_f, Interval(a, b))
    except NonFiniteValue as e:
        raise r.fail(e, Interval(a, b))
    return r.result(c, fc, Interval(a, b))


_DISPATCH = {
    Method.HALVING: minimize_interval_halving,
    Method.TRICHOTOMY: minimize_trichotomy,
    Method.GOLDEN: minimize_golden_section,
}


def minimize(
    method: Method | str,
    obj: Objective,
    iv: Interval,
    stop: StopRule,
    *,
    delta: float | None = None,
) -> RunResult:
    """Run ``method`` on ``obj`` over ``iv`` under ``stop``.

    ``delta`` is only meaningful for the dichotomous method.  Fibonacci
    search requires a budget stop rule and raises
    :class:`~unisearch.core.IncompatibleStopRule` otherwise.
    """
    method = Method(method)
    if delta is not None and method is not Method.DICHOTOMOUS:
        raise ValueError("delta applies to the dichotomous method only")
    if method is Method.FIBONACCI:
        if not stop.is_budget:
            raise IncompatibleStopRule("fibonacci search requires a budget stop rule")
        return minimize_fibonacci(obj, iv, stop.budget)
    if method is Method.DICHOTOMOUS:
        return minimize_dichotomous(obj, iv, stop, delta=delta)
    return _DISPATCH[method](obj, iv, stop)
