"""Bessel-series expansions of the sine and cosine integrals.

Exact Neumann coefficients, double-precision special-function kernels,
quadrature for every integral identity, Euler-sum closed forms, and a
verification harness that checks each identity against an independent route.
"""

__version__ = "0.1.0"

from . import coeffs, eulersum, harness, neumann, quad, specfun  # noqa: F401
