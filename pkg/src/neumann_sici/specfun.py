"""Double-precision special-function kernels.

Everything the identity checks reference lives here: Bessel J_n, Y_0, Y_1,
the sine and cosine integrals, odd-index Clausen functions, zeta/eta values
and a table of named constants.  All functions are pure; the only
module-level state is a memo of immutable weight arrays, so values can be
shared freely across threads.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EvalOptions",
    "Constants",
    "CONSTANTS",
    "DEFAULT_OPTIONS",
    "bessel_j",
    "bessel_j_all",
    "bessel_y",
    "si",
    "ci",
    "gamma_log_minus_ci",
    "clausen_odd",
    "zeta",
    "eta",
]


@dataclass(frozen=True)
class EvalOptions:
    """Truncation controls shared by the series kernels."""

    target_abs_tol: float = 1e-14
    max_terms: int = 10**8

    def __post_init__(self):
        if not self.target_abs_tol > 0:
            raise ValueError("target_abs_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_OPTIONS = EvalOptions()


@dataclass(frozen=True)
class Constants:
    euler_gamma: float = 0.5772156649015328606
    catalan_g: float = 0.9159655941772190151
    log2: float = 0.6931471805599453094
    zeta3: float = 1.2020569031595942854
    pi: float = math.pi


CONSTANTS = Constants()

_EULER_GAMMA = CONSTANTS.euler_gamma

# Crossover between the defining power series and the continued-fraction
# evaluation of Si/Ci.  The alternating series loses digits like
# eps * max-term ~ eps * e^x / x; at x = 8 that is still ~1e-13 while the
# Lentz continued fraction is already at machine precision.
_SICI_CROSSOVER = 8.0

# Bessel Y branch limits: the ascending log-series keeps ~1e-13 up to 8,
# the Hankel asymptotic series reaches 1e-14 beyond ~17, and the window in
# between is bridged by Neumann-series identities (see bessel_y).
_Y_SERIES_MAX = 8.0
_Y_ASYMPTOTIC_MIN = 17.0


# ---------------------------------------------------------------------------
# Bessel functions of the first kind
# ---------------------------------------------------------------------------

def _bessel_j_series(order: int, x: float, tol: float, max_terms: int = 500) -> float:
    # Ascending series sum_k (-1)^k (x/2)^(order+2k) / (k! (order+k)!).
    half = 0.5 * x
    if x == 0.0:
        return 1.0 if order == 0 else 0.0
    log_t0 = order * math.log(half) - math.lgamma(order + 1)
    if log_t0 < -745.0:  # first term underflows; remaining terms are smaller still
        return 0.0
    term = math.exp(log_t0)
    total = term
    k = 0
    while True:
        k += 1
        term *= -half * half / (k * (order + k))
        total += term
        if abs(term) < tol * max(abs(total), 1e-300) or k >= max_terms:
            return total


def _miller_array(nmax: int, x: float) -> list[float]:
    # Backward (Miller) recurrence normalized by J_0 + 2 sum J_{2k} = 1.
    m = nmax + int(math.ceil(1.5 * x)) + 40
    if m % 2:
        m += 1
    out = [0.0] * (nmax + 1)
    jp, j = 0.0, 1e-30
    even_sum = 0.0
    for k in range(m, 0, -1):
        jm = (2.0 * k / x) * j - jp
        jp, j = j, jm
        if k - 1 <= nmax:
            out[k - 1] = j
        if (k - 1) % 2 == 0 and k - 1 > 0:
            even_sum += j
        if abs(j) > 1e250:
            j *= 1e-250
            jp *= 1e-250
            even_sum *= 1e-250
            for i in range(len(out)):
                out[i] *= 1e-250
    norm = j + 2.0 * even_sum  # j is now the unnormalized J_0
    return [v / norm for v in out]


def bessel_j(order: int, x: float, options: EvalOptions = DEFAULT_OPTIONS) -> float:
    """Bessel function of the first kind J_order(x) for integer order >= 0.

    Small arguments (and any argument dominated by the order) go through the
    defining power series; large arguments use the Hankel asymptotic
    auxiliary functions; the middle range runs a backward Miller recurrence
    normalized with J_0(x) + 2 sum_k J_2k(x) = 1.
    """
    if order < 0:
        raise ValueError("order must be a nonnegative integer")
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0.0:
        return 1.0 if order == 0 else 0.0
    # With (x/2)^2 <= order + 1 the series terms decrease from the start, so
    # there is no cancellation regardless of how large the order is.
    if x <= _SICI_CROSSOVER or 0.25 * x * x <= order + 1:
        return _bessel_j_series(
            order, x, options.target_abs_tol * 1e-3, min(500, options.max_terms)
        )
    if x >= max(25.0, 0.5 * order * order):
        p, q = _hankel_pq(order, x)
        chi = x - (0.5 * order + 0.25) * math.pi
        return math.sqrt(2.0 / (math.pi * x)) * (math.cos(chi) * p - math.sin(chi) * q)
    return _miller_array(order, x)[order]


def bessel_j_all(nmax: int, x: float) -> list[float]:
    """All of J_0(x) .. J_nmax(x) from a single Miller pass."""
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0.0:
        return [1.0] + [0.0] * nmax
    return _miller_array(nmax, x)


# ---------------------------------------------------------------------------
# Bessel functions of the second kind, orders 0 and 1
# ---------------------------------------------------------------------------

def _bessel_y_series(order: int, x: float) -> float:
    # DLMF 10.8.1 ascending series, stable for x <= _Y_SERIES_MAX.
    u = 0.25 * x * x
    lg = math.log(0.5 * x)
    if order == 0:
        j0 = bessel_j(0, x)
        term, hk, s, k = 1.0, 0.0, 0.0, 0
        while True:
            k += 1
            term *= -u / (k * k)
            hk += 1.0 / k
            s += hk * term
            if abs(term) * (hk + 1.0) < 1e-18 * max(abs(s), 1e-10) or k > 500:
                break
        return (2.0 / math.pi) * ((lg + _EULER_GAMMA) * j0 - s)
    j1 = bessel_j(1, x)
    term, hk, hk1, s, k = 1.0, 0.0, 1.0, 0.0, 0
    while True:
        s += (hk + hk1 - 2.0 * _EULER_GAMMA) * term
        term *= -u / ((k + 1) * (k + 2))
        k += 1
        hk += 1.0 / k
        hk1 += 1.0 / (k + 1)
        if abs(term) * (hk + hk1 + 2.0) < 1e-18 * max(abs(s), 1e-10) or k > 500:
            break
    return (2.0 / math.pi) * (lg * j1 - 1.0 / x) - x / (2.0 * math.pi) * s


def _bessel_y_bridge(order: int, x: float) -> float:
    # Neumann-series identities (GR 8.515.7 / 8.514.9) expressing Y_0, Y_1
    # through J_n; accurate to machine precision for moderate x where both
    # the ascending series and the asymptotic expansion fall short of 1e-12.
    nmax = int(math.ceil(x)) + 30
    j = _miller_array(2 * nmax + 1, x)
    lg = math.log(0.5 * x) + _EULER_GAMMA
    if order == 0:
        s = sum(((-1) ** n) * j[2 * n] / n for n in range(1, nmax + 1))
        return (2.0 / math.pi) * lg * j[0] - (4.0 / math.pi) * s
    s = sum(
        ((-1) ** n) * (2 * n + 1) / (n * (n + 1.0)) * j[2 * n + 1]
        for n in range(1, nmax)
    )
    return (2.0 / math.pi) * ((lg - 1.0) * j[1] - j[0] / x - s)


def _hankel_pq(order: int, x: float) -> tuple[float, float]:
    # Asymptotic auxiliary functions P, Q with optimal truncation.
    mu = 4.0 * order * order
    terms = [1.0]
    t = 1.0
    for m in range(80):
        t *= (mu - (2 * m + 1) ** 2) / ((m + 1) * 8.0 * x)
        if abs(t) >= abs(terms[-1]) or abs(t) < 1e-18:
            if abs(t) < 1e-18:
                terms.append(t)
            break
        terms.append(t)
    p = sum((-1) ** (m // 2) * terms[m] for m in range(0, len(terms), 2))
    q = sum((-1) ** (m // 2) * terms[m] for m in range(1, len(terms), 2))
    return p, q


def bessel_y(order: int, x: float) -> float:
    """Bessel function of the second kind Y_0(x) or Y_1(x), x > 0."""
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    if x <= 0:
        raise ValueError("x must be positive")
    if x <= _Y_SERIES_MAX:
        return _bessel_y_series(order, x)
    if x < _Y_ASYMPTOTIC_MIN:
        return _bessel_y_bridge(order, x)
    p, q = _hankel_pq(order, x)
    chi = x - (0.5 * order + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (math.sin(chi) * p + math.cos(chi) * q)


# ---------------------------------------------------------------------------
# Sine and cosine integrals
# ---------------------------------------------------------------------------

def _si_series(x: float, tol: float = 1e-18, max_terms: int = 300) -> float:
    # sum_n (-1)^(n-1) x^(2n-1) / ((2n-1) (2n-1)!); odd in x by construction.
    total = 0.0
    term = x  # x^(2n-1)/(2n-1)!
    n = 1
    while True:
        total += term / (2 * n - 1)
        term *= -x * x / ((2 * n) * (2 * n + 1))
        n += 1
        if abs(term) / (2 * n - 1) < tol * max(1.0, abs(total)) or n > max_terms:
            return total


def _glmc_series(x: float, tol: float = 1e-18, max_terms: int = 300) -> float:
    # sum_n (-1)^(n-1) x^(2n) / (2n (2n)!) -- the entire part of gamma+log-Ci.
    total = 0.0
    term = 0.5 * x * x  # x^(2n)/(2n)!
    n = 1
    while True:
        total += term / (2 * n)
        term *= -x * x / ((2 * n + 1) * (2 * n + 2))
        n += 1
        if abs(term) / (2 * n) < tol * max(1.0, abs(total)) or n > max_terms:
            return total


def _e1_of_ix(x: float) -> complex:
    # E_1(ix) by the modified Lentz continued fraction; Ci(x) = -Re, and
    # Si(x) - pi/2 = Im.  Converges to machine precision for x >= ~2.
    z = complex(0.0, x)
    b = z + 1.0
    c = complex(1e308, 0.0)
    d = 1.0 / b
    h = d
    for i in range(1, 300):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta.real - 1.0) < 1e-16 and abs(delta.imag) < 1e-16:
            break
    return cmath.exp(-z) * h


def si(x: float, options: EvalOptions = DEFAULT_OPTIONS) -> float:
    """Sine integral Si(x) = int_0^x sin(t)/t dt, x >= 0."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0.0:
        return 0.0
    if x <= _SICI_CROSSOVER:
        return _si_series(x, options.target_abs_tol * 1e-4, min(300, options.max_terms))
    return _e1_of_ix(x).imag + 0.5 * math.pi


def ci(x: float, options: EvalOptions = DEFAULT_OPTIONS) -> float:
    """Cosine integral Ci(x), x > 0."""
    if x <= 0:
        raise ValueError("x must be positive")
    if x <= _SICI_CROSSOVER:
        return _EULER_GAMMA + math.log(x) - _glmc_series(
            x, options.target_abs_tol * 1e-4, min(300, options.max_terms)
        )
    return -_e1_of_ix(x).real


def gamma_log_minus_ci(x: float, options: EvalOptions = DEFAULT_OPTIONS) -> float:
    """gamma + log(x) - Ci(x), evaluated without cancellation near 0.

    This combination is what the integral identities actually use; below the
    crossover it comes straight from the entire series x^2/4 - x^4/96 + ...
    """
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0.0:
        return 0.0
    if x <= _SICI_CROSSOVER:
        return _glmc_series(x, options.target_abs_tol * 1e-4, min(300, options.max_terms))
    return _EULER_GAMMA + math.log(x) + _e1_of_ix(x).real


# ---------------------------------------------------------------------------
# Clausen functions of odd index
# ---------------------------------------------------------------------------

_CLAUSEN_TERMS = 10**5
_clausen_cache: dict[int, np.ndarray] = {}


def _clausen_weights(weight: int) -> np.ndarray:
    w = _clausen_cache.get(weight)
    if w is None:
        n = np.arange(1.0, _CLAUSEN_TERMS + 1.0)
        w = n ** (-float(weight))
        _clausen_cache[weight] = w
    return w


def _cos_tail_integral(k: int, a: float) -> float:
    # C_k(a) = int_a^inf cos(u) u^-k du for odd k, reduced by parts down to
    # C_1(a) = -Ci(a).
    c = -ci(a)
    s = 0.0
    for j in range(1, k, 2):
        # S_{j+1} from C_j, then C_{j+2} from S_{j+1}
        s = math.sin(a) * a ** (-j) / j + c / j
        c = math.cos(a) * a ** (-j - 1) / (j + 1) - s / (j + 1)
    return c


def clausen_odd(weight: int, theta: float) -> float:
    """Clausen-type function Cl_weight(theta) = sum_n cos(n theta)/n^weight.

    Only odd weights >= 3 are supported.  Direct summation of 10^5 terms plus
    an Euler-Maclaurin tail.  The angle is mirrored into [0, pi] first --
    cos(n theta) is unchanged at integer n, and the continuous integrand in
    the tail must be slowly varying for Euler-Maclaurin to hold.
    """
    if weight < 3 or weight % 2 == 0:
        raise ValueError("weight must be an odd integer >= 3")
    theta = math.fmod(theta, 2.0 * math.pi)
    if theta < 0.0:
        theta += 2.0 * math.pi
    if theta > math.pi:
        theta = 2.0 * math.pi - theta
    if theta == 0.0:
        return zeta(weight)
    n = _CLAUSEN_TERMS
    w = _clausen_weights(weight)
    head = float(np.dot(np.cos(theta * np.arange(1.0, n + 1.0)), w))
    k = weight
    a = theta * n
    if a < 1e-3:
        # cos(m theta) = 1 - O((m theta)^2) out to m ~ 1/theta; the plain
        # zeta tail differs by less than theta^2 log(1/a), below 1e-17 here
        tail = (
            float(n) ** (1 - k) / (k - 1)
            - 0.5 * float(n) ** -k
            + k * float(n) ** (-k - 1) / 12.0
        )
        return head + tail
    tail = theta ** (k - 1) * _cos_tail_integral(k, a)
    tail -= 0.5 * math.cos(a) / n**k
    tail += (theta * math.sin(a) / n**k + k * math.cos(a) / n ** (k + 1)) / 12.0
    # third correction, needed once theta is of order 1
    f3 = (
        theta**3 * math.sin(a) / n**k
        + 3.0 * theta**2 * k * math.cos(a) / n ** (k + 1)
        - 3.0 * theta * k * (k + 1) * math.sin(a) / n ** (k + 2)
        - k * (k + 1) * (k + 2) * math.cos(a) / n ** (k + 3)
    )
    return head + tail + f3 / 720.0


# ---------------------------------------------------------------------------
# zeta and eta
# ---------------------------------------------------------------------------

# zeta(s) for 2 <= s <= 30, 17 significant digits.
_ZETA_TABLE = {
    2: 1.6449340668482264,
    3: 1.2020569031595943,
    4: 1.0823232337111382,
    5: 1.0369277551433699,
    6: 1.0173430619844491,
    7: 1.0083492773819228,
    8: 1.0040773561979443,
    9: 1.0020083928260822,
    10: 1.0009945751278181,
    11: 1.0004941886041195,
    12: 1.0002460865533080,
    13: 1.0001227133475785,
    14: 1.0000612481350587,
    15: 1.0000305882363070,
    16: 1.0000152822594087,
    17: 1.0000076371976379,
    18: 1.0000038172932650,
    19: 1.0000019082127166,
    20: 1.0000009539620339,
    21: 1.0000004769329868,
    22: 1.0000002384505027,
    23: 1.0000001192199260,
    24: 1.0000000596081891,
    25: 1.0000000298035035,
    26: 1.0000000149015548,
    27: 1.0000000074507118,
    28: 1.0000000037253340,
    29: 1.0000000018626597,
    30: 1.0000000009313274,
}


def zeta(s: int) -> float:
    """Riemann zeta at integer s >= 2."""
    if s < 2:
        raise ValueError("zeta requires an integer s >= 2")
    v = _ZETA_TABLE.get(s)
    if v is not None:
        return v
    # Beyond the table the direct sum converges geometrically; the integral
    # tail bound N^(1-s)/(s-1) drops below 1e-18 within a few dozen terms.
    total, k = 1.0, 1
    while True:
        k += 1
        term = float(k) ** (-s)
        total += term
        if (k + 1.0) ** (1.0 - s) / (s - 1.0) < 1e-18:
            return total


def eta(s: int) -> float:
    """Dirichlet eta at integer s >= 1; eta(1) = log 2."""
    if s < 1:
        raise ValueError("eta requires an integer s >= 1")
    if s == 1:
        return CONSTANTS.log2
    return (1.0 - 2.0 ** (1.0 - s)) * zeta(s)
