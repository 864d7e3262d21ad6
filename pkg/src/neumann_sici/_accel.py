"""Limit extraction for eventually-alternating partial-sum sequences.

Averaging (the Euler transformation) kills the alternating component, but
several of the series here carry a smooth monotone remainder as well: when
the summand couples two alternating factors, the product of their sign
patterns is constant (for example alternating-harmonic tails inside an
alternating sum).  The averaged sums are therefore collocated against an
integer power ladder 1/m, 1/m^2, ... on geometrically spaced indices and
extrapolated to m = infinity.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

__all__ = ["alternating_series_limit"]

_AVERAGING_PASSES = 4
_POINTS = 7


def alternating_series_limit(
    partial_sums: Sequence[float], averaging_passes: int = _AVERAGING_PASSES
) -> tuple[float, float]:
    """Extrapolated limit of ``partial_sums`` and an error estimate.

    The estimate combines the shift from dropping the farthest-back
    collocation point with an ulp-scale floor; callers should treat it as a
    one-sigma-style indicator, not a rigorous bound.
    """
    if len(partial_sums) == 0:
        raise ValueError("need at least one partial sum")
    y = np.asarray(partial_sums, dtype=float)
    if len(y) < 16:
        return float(y[-1]), float(abs(y[-1] - y[len(y) // 2]))
    m = np.arange(1.0, len(y) + 1.0)
    for _ in range(averaging_passes):
        y = 0.5 * (y[1:] + y[:-1])
        m = 0.5 * (m[1:] + m[:-1])
    idx: list[int] = []
    target = m[-1]
    for _ in range(_POINTS):
        i = int(np.argmin(np.abs(m - target)))
        if not idx or i != idx[-1]:
            idx.append(i)
        target /= math.sqrt(2.0)
    idx = sorted(set(idx))
    mp_, yp = m[idx], y[idx]
    scale = mp_ / mp_[-1]
    n_basis = min(6, len(mp_) - 1)
    design = np.stack([scale ** -q for q in range(n_basis)], axis=1)
    full = float(np.linalg.lstsq(design, yp, rcond=None)[0][0])
    if len(mp_) < 3:
        return full, abs(full - float(yp[-1]))
    n2 = min(n_basis, len(mp_) - 2)
    dropped = float(np.linalg.lstsq(design[1:, :n2], yp[1:], rcond=None)[0][0])
    floor = 4e-16 * max(1.0, abs(full))
    return full, max(2.0 * abs(full - dropped), floor)
