"""Worst-case bounds for the midpoint-pinned bracketing methods.

Interval halving shrinks the bracket by 1/2 per iteration at <= 2
evaluations after the first; trichotomy shrinks by 1/3 at <= 4.  From those
ratios follow a minimum iteration count to reach a target half-width and a
guaranteed accuracy after a fixed number of evaluations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .solvers import Method


class DomainError(ValueError):
    """Inputs outside the domain of a bound formula."""


_SHRINK_BASE = {Method.HALVING: 2.0, Method.TRICHOTOMY: 3.0}


def _check_method(method: Method | str) -> Method:
    method = Method(method)
    if method not in _SHRINK_BASE:
        raise ValueError(f"bounds are defined for halving and trichotomy, not {method}")
    return method


@dataclass(frozen=True)
class IterationBound:
    """Iterations needed to reach half-width epsilon from a length-L bracket.

    ``k_formula`` is the classical integer-part formula
    floor(log_base(L/(2*eps))) + 1; ``k_exact`` is ceil(log_base(L/(2*eps))),
    the exact requirement.  They agree except when the log is an exact
    integer, where the formula overcounts by one.
    """

    method: Method
    k_formula: int
    k_exact: int


@dataclass(frozen=True)
class AccuracyBound:
    """Guaranteed |x_hat - x*| after ``n_evals`` evaluations on length-L bracket."""

    method: Method
    n_evals: int
    epsilon_bound: float


def iteration_bound(method: Method | str, length: float, epsilon: float) -> IterationBound:
    """Minimum iterations for the bracket half-width to reach ``epsilon``.

    Requires length/(2*epsilon) > 1; smaller ratios are outside the formula's
    domain and raise :class:`DomainError`.
    """
    method = _check_method(method)
    if not (math.isfinite(length) and length > 0):
        raise DomainError(f"length must be positive and finite, got {length!r}")
    if not (math.isfinite(epsilon) and epsilon > 0):
        raise DomainError(f"epsilon must be positive and finite, got {epsilon!r}")
    ratio = length / (2 * epsilon)
    if ratio <= 1:
        raise DomainError(
            f"length/(2*epsilon) must exceed 1, got {ratio!r}: the start bracket already satisfies the target"
        )
    log = math.log(ratio) / math.log(_SHRINK_BASE[method])
    return IterationBound(
        method=method,
        k_formula=math.floor(log) + 1,
        k_exact=math.ceil(log),
    )


def accuracy_bound(method: Method | str, length: float, n_evals: int) -> AccuracyBound:
    """Worst-case half-width after spending ``n_evals`` evaluations.

    halving:    length / (2 * 2^((n-1)/2))
    trichotomy: length / (2 * 3^((n-1)/4))

    Exponents are real-valued (no flooring).  For any n > 1 the halving bound
    is strictly smaller; the two coincide at n = 1.
    """
    method = _check_method(method)
    if not (math.isfinite(length) and length > 0):
        raise DomainError(f"length must be positive and finite, got {length!r}")
    if not isinstance(n_evals, int) or isinstance(n_evals, bool) or n_evals < 1:
        raise DomainError(f"n_evals must be an integer >= 1, got {n_evals!r}")
    base = _SHRINK_BASE[method]
    exponent = (n_evals - 1) / 2 if method is Method.HALVING else (n_evals - 1) / 4
    return AccuracyBound(
        method=method,
        n_evals=n_evals,
        epsilon_bound=length / (2 * base**exponent),
    )
