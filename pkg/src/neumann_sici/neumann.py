"""Truncated evaluation of the Bessel-series expansions of Si and Ci.

The two expansions are

    Si(a) = 2 sum_{n>=0} J_{2n+1}(a) alpha_n
    Ci(a) = gamma + log(a) - 2 sum_{n>=1} J_{2n}(a) beta_n

with the exact rational coefficients provided by ``coeffs``.  Truncations
carry a rigorous tail bound built from |J_m(a)| <= (a/2)^m / m! and the
elementary coefficient bounds alpha_n <= pi/2 + 3/(2n+1) and
beta_n <= H_n + A_n + 1/n.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Iterator

from . import coeffs
from .specfun import CONSTANTS, bessel_j_all, si as si_kernel

__all__ = [
    "SeriesEval",
    "si_neumann",
    "ci_neumann",
    "corollary5_series",
    "addition_theorem_check",
    "convergence_table",
    "si_expansion_terms",
    "ci_expansion_terms",
]


@dataclass
class SeriesEval:
    value: float
    terms_used: int
    tail_bound: float
    converged: bool


_cache_lock = threading.Lock()
_alpha_float: list[float] = []
_beta_float: list[float] = [0.0]
_beta_bound: list[float] = [0.0]  # H_n + A_n + 1/n


def _alpha(n: int) -> float:
    with _cache_lock:
        while len(_alpha_float) <= n:
            _alpha_float.append(float(coeffs.alpha(len(_alpha_float))))
        return _alpha_float[n]


def _beta(n: int) -> float:
    with _cache_lock:
        while len(_beta_float) <= n:
            k = len(_beta_float)
            _beta_float.append(float(coeffs.beta(k)))
            _beta_bound.append(float(coeffs.harmonic(k) + coeffs.alt_harmonic(k)) + 1.0 / k)
        return _beta_float[n]


def _beta_coeff_bound(n: int) -> float:
    _beta(n)
    with _cache_lock:
        return _beta_bound[n]


def _bessel_majorant(a: float, m: int) -> float:
    # |J_m(a)| <= (a/2)^m / m!
    if a == 0.0:
        return 1.0 if m == 0 else 0.0
    logv = m * math.log(0.5 * a) - math.lgamma(m + 1)
    if logv > 709.0:  # majorant overflows long before the factorial wins
        return math.inf
    return math.exp(logv)


def _tail_bound(a: float, first_n: int, order_of, coeff_bound) -> float:
    """sum_{n >= first_n} majorant(order(n)) * coeff_bound(n), closed with a
    geometric factor once the term ratio drops below 1/2.

    The closing ratio includes the coefficient-bound growth (the Ci bound
    H_n + A_n + 1/n increases), so the result stays a true upper bound.
    """
    total = 0.0
    n = first_n
    while True:
        m = order_of(n)
        cb = coeff_bound(n)
        term = _bessel_majorant(a, m) * cb
        total += term
        ratio = (0.5 * a) ** 2 / ((m + 1.0) * (m + 2.0))
        if cb > 0.0:
            ratio *= max(1.0, coeff_bound(n + 1) / cb)
        if ratio < 0.5 and (term == 0.0 or term < 1e-4 * max(total, 1e-300)):
            return total + term * ratio / (1.0 - ratio)
        n += 1
        if n - first_n > 10000:  # unreachable for sane arguments
            return math.inf


def si_expansion_terms(a: float, count: int) -> Iterator[tuple[int, float, float]]:
    """Yield (order, J_order(a), coefficient) for the Si expansion."""
    j = bessel_j_all(2 * count + 1, a)
    for n in range(count):
        yield 2 * n + 1, j[2 * n + 1], _alpha(n)


def ci_expansion_terms(a: float, count: int) -> Iterator[tuple[int, float, float]]:
    """Yield (order, J_order(a), coefficient) for the Ci expansion."""
    j = bessel_j_all(2 * count + 2, a)
    for n in range(1, count + 1):
        yield 2 * n, j[2 * n], _beta(n)


def _alpha_bound(n: int) -> float:
    return 0.5 * math.pi + 3.0 / (2 * n + 1)


def si_neumann(a: float, tol: float = 1e-12, max_terms: int = 400) -> SeriesEval:
    """Truncated Si expansion with tail bound <= tol."""
    if a < 0:
        raise ValueError("a must be nonnegative (the expansion is stated for a >= 0)")
    if a == 0.0:
        return SeriesEval(0.0, 0, 0.0, True)
    limit = min(max_terms, int(a) + 80)
    total = 0.0
    tail = math.inf
    for idx, (order, jval, c) in enumerate(si_expansion_terms(a, limit)):
        total += 2.0 * jval * c
        tail = 2.0 * _tail_bound(a, idx + 1, lambda n: 2 * n + 1, _alpha_bound)
        if tail <= tol:
            return SeriesEval(total, idx + 1, tail, True)
    return SeriesEval(total, limit, tail, False)


def ci_neumann(a: float, tol: float = 1e-12, max_terms: int = 400) -> SeriesEval:
    """Truncated Ci expansion with tail bound <= tol."""
    if a <= 0:
        raise ValueError("a must be positive")
    limit = min(max_terms, int(a) + 80)
    total = CONSTANTS.euler_gamma + math.log(a)
    tail = math.inf
    for idx, (order, jval, c) in enumerate(ci_expansion_terms(a, limit)):
        n = idx + 1
        total -= 2.0 * jval * c
        tail = 2.0 * _tail_bound(a, n + 1, lambda m: 2 * m, _beta_coeff_bound)
        if tail <= tol:
            return SeriesEval(total, n, tail, True)
    return SeriesEval(total, limit, tail, False)


def corollary5_series(a: float, tol: float = 1e-12, max_terms: int = 400) -> SeriesEval:
    """sum_{n>=1} (-1)^n J_{2n}(a) beta_n / n (even in a)."""
    if not math.isfinite(a):
        raise ValueError("a must be finite")
    a = abs(a)
    if a == 0.0:
        return SeriesEval(0.0, 0, 0.0, True)
    limit = min(max_terms, int(a) + 80)
    j = bessel_j_all(2 * limit + 2, a)
    total = 0.0
    tail = math.inf
    for n in range(1, limit + 1):
        total += ((-1) ** n) * j[2 * n] * _beta(n) / n
        tail = _tail_bound(a, n + 1, lambda m: 2 * m, lambda m: _beta_coeff_bound(m) / m)
        if tail <= tol:
            return SeriesEval(total, n, tail, True)
    return SeriesEval(total, limit, tail, False)


def addition_theorem_check(a: float, t: float, terms: int = 40) -> tuple[float, float]:
    """LHS and truncated RHS of the phi = pi/2 Neumann addition theorem:

    J_0(sqrt(a^2+t^2)) - J_0(a) J_0(t) = 2 sum_{n>=1} (-1)^n J_{2n}(a) J_{2n}(t)
    """
    if not (math.isfinite(a) and math.isfinite(t)):
        raise ValueError("a and t must be finite")
    a, t = abs(a), abs(t)  # even orders only: both sides are even in a and t
    ja = bessel_j_all(2 * terms, a)
    jt = bessel_j_all(2 * terms, t)
    # same Miller path for all three J_0 evaluations keeps the trivial
    # points (a = 0 or t = 0) exactly zero
    lhs = bessel_j_all(0, math.hypot(a, t))[0] - ja[0] * jt[0]
    rhs = 2.0 * math.fsum(((-1) ** n) * ja[2 * n] * jt[2 * n] for n in range(1, terms + 1))
    return lhs, rhs


def convergence_table(
    a_grid: list[float], n_grid: list[int]
) -> list[tuple[float, int, float, float]]:
    """Rows (a, N, abs_error, tail_bound) for N-term truncations of the Si
    expansion against the independent Si kernel, sorted by (a, N)."""
    if not a_grid or not n_grid:
        raise ValueError("grids must be nonempty")
    rows = []
    for a in sorted(a_grid):
        ref = si_kernel(a)
        for n_terms in sorted(n_grid):
            if a == 0.0:
                rows.append((a, n_terms, 0.0, 0.0))
                continue
            partial = 0.0
            for _, jval, c in si_expansion_terms(a, n_terms):
                partial += 2.0 * jval * c
            tail = 2.0 * _tail_bound(a, n_terms, lambda n: 2 * n + 1, _alpha_bound)
            rows.append((a, n_terms, abs(partial - ref), tail))
    return rows
