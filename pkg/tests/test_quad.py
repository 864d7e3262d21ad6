import math

import pytest

from neumann_sici import coeffs, eulersum, neumann
from neumann_sici import specfun as sf
from neumann_sici.quad import (
    Integrand,
    QuadratureError,
    bessel_j1_over_t_integral,
    ci_bessel_integral,
    ci_transform_integral,
    clausen_cot_integral,
    corollary5_rhs,
    corollary6_integral,
    corollary6_intermediate_integral,
    example2_integral,
    integrate_finite,
    j0_orthogonality_integral,
    lemma1_integral,
    lemma3_integral,
    oscillatory_semiinf,
    si_bessel_integral,
    si_transform_integral,
)

HALF_PI = 0.5 * math.pi


# ---------------------------------------------------------------------------
# finite-interval engine
# ---------------------------------------------------------------------------

def test_integrate_cos_exactly():
    r = integrate_finite(math.cos, 0.0, HALF_PI, 1e-14)
    assert abs(r.value - 1.0) <= 1e-14
    assert r.abs_err_estimate <= 1e-14
    assert r.subdivisions >= 1


def test_cos_times_cos2kt_elementary_integral():
    # int_0^{pi/2} cos t cos(2kt) dt = -cos(pi k)/(4k^2 - 1); k = 3 gives 1/35
    r = integrate_finite(lambda t: math.cos(t) * math.cos(6.0 * t), 0.0, HALF_PI, 1e-14)
    assert abs(r.value - 1.0 / 35.0) <= 1e-14


@pytest.mark.parametrize("k", range(2, 9))
def test_cos_times_sin_odd_antiderivative_oracle(k):
    # int_0^{pi/2} 2 cos t sin((2k-1)t) dt = (1-(-1)^k)/(2k) + (1+(-1)^k)/(2k-2)
    r = integrate_finite(
        lambda t: 2.0 * math.cos(t) * math.sin((2 * k - 1) * t), 0.0, HALF_PI, 1e-14
    )
    expected = (1.0 - (-1.0) ** k) / (2.0 * k) + (1.0 + (-1.0) ** k) / (2.0 * k - 2.0)
    assert abs(r.value - expected) <= 1e-13


def test_cos_times_sin_k_equals_one():
    # the k = 1 instance of the closed form is 0/0; the integral itself is 1
    r = integrate_finite(lambda t: 2.0 * math.cos(t) * math.sin(t), 0.0, HALF_PI, 1e-14)
    assert abs(r.value - 1.0) <= 1e-14


def test_integrand_annotation_used_at_endpoint():
    f = Integrand(lambda t: math.sin(3.0 * t) / math.sin(t) * math.cos(t), ((0.0, 3.0),))
    assert f(0.0) == 3.0
    assert f(1e-301) == 3.0
    assert f(0.5) == math.sin(1.5) / math.sin(0.5) * math.cos(0.5)


def test_integrand_rejects_nonfinite_annotation():
    with pytest.raises(ValueError):
        Integrand(lambda t: t, ((0.0, math.inf),))


def test_integrate_finite_validates_interval():
    with pytest.raises(ValueError):
        integrate_finite(math.cos, 1.0, 1.0, 1e-10)
    with pytest.raises(ValueError):
        integrate_finite(math.cos, 0.0, 1.0, 0.0)


def test_nan_integrand_raises():
    with pytest.raises(QuadratureError):
        integrate_finite(lambda t: math.nan, 0.0, 1.0, 1e-10)


def test_nonintegrable_endpoint_raises_nonconvergence():
    with pytest.raises(QuadratureError):
        integrate_finite(lambda t: t ** -0.9, 1e-300, 1.0, 1e-12, max_subdivisions=300)


# ---------------------------------------------------------------------------
# cot-weighted integrals vs exact coefficients
# ---------------------------------------------------------------------------

def test_lemma1_integral_values():
    assert abs(lemma1_integral(0).value - 1.0) <= 1e-13
    assert abs(lemma1_integral(1).value - 5.0 / 3.0) <= 1e-12
    assert abs(lemma1_integral(25).value - float(coeffs.alpha(25))) <= 1e-11


def test_lemma3_integral_values():
    assert abs(lemma3_integral(1).value - 1.0) <= 1e-12
    assert abs(lemma3_integral(2).value - 2.0) <= 1e-12
    assert abs(lemma3_integral(30).value - float(coeffs.beta(30))) <= 1e-11


def test_lemma_integral_domains():
    with pytest.raises(ValueError):
        lemma1_integral(-1)
    with pytest.raises(ValueError):
        lemma3_integral(0)


def test_si_transform_integral():
    assert si_transform_integral(0.0).value == 0.0
    assert abs(si_transform_integral(1.0).value - sf.si(1.0)) <= 1e-12
    assert abs(si_transform_integral(12.0).value - sf.si(12.0)) <= 1e-11


def test_ci_transform_integral():
    assert abs(ci_transform_integral(1.0).value - sf.gamma_log_minus_ci(1.0)) <= 1e-12
    assert abs(ci_transform_integral(20.0).value - sf.gamma_log_minus_ci(20.0)) <= 1e-11
    assert abs(ci_transform_integral(1e-6).value) <= 1e-12
    with pytest.raises(ValueError):
        ci_transform_integral(0.0)


# ---------------------------------------------------------------------------
# oscillatory engine and the semi-infinite Bessel moments
# ---------------------------------------------------------------------------

def test_engine_selftest_unit_bessel_integral():
    r = bessel_j1_over_t_integral(2e-10)
    assert abs(r.value - 1.0) <= 1e-9
    assert r.partitions_used > 0


def test_oscillatory_rejects_bad_spacing():
    with pytest.raises(ValueError):
        oscillatory_semiinf(lambda t: 0.0, -1.0, 1e-6)


def test_oscillatory_nonconvergence_raises():
    f = Integrand(lambda t: math.sin(t) / t, ((0.0, 1.0),))
    with pytest.raises(QuadratureError):
        oscillatory_semiinf(f, math.pi, 1e-16, max_partitions=40)


def test_si_weighted_j1_moment_is_one():
    r = si_bessel_integral(0, 1e-8)
    assert abs(r.value - 1.0) <= 1e-8


@pytest.mark.parametrize("n", [1, 4])
def test_si_bessel_integral_matches_exact_coefficient(n):
    r = si_bessel_integral(n, 1e-8)
    assert abs(r.value - float(coeffs.alpha(n)) / (2 * n + 1)) <= 1e-8


@pytest.mark.parametrize("n", [1, 2, 6])
def test_ci_bessel_integral_matches_exact_coefficient(n):
    r = ci_bessel_integral(n, 1e-8)
    assert abs(r.value - float(coeffs.beta(n)) / (2 * n)) <= 1e-8


def test_j0_weighted_moment_vanishes():
    r = j0_orthogonality_integral(2e-7)
    assert abs(r.value) <= 1e-6


def test_bessel_moment_domains():
    with pytest.raises(ValueError):
        si_bessel_integral(-1)
    with pytest.raises(ValueError):
        ci_bessel_integral(0)


# ---------------------------------------------------------------------------
# named-constant integrals
# ---------------------------------------------------------------------------

def _example2_target():
    return (math.pi ** 2 / 4.0) * sf.CONSTANTS.log2 - 0.875 * sf.zeta(3)


def test_example2_integral():
    r = example2_integral(2e-6)
    assert abs(r.value - _example2_target()) <= 1e-5


def test_example2_integrand_small_t_leading_order():
    # glmc(t)/t * bracket(t) ~ (t/4) * gamma near 0
    t = 1e-8
    bracket = HALF_PI * sf.bessel_y(0, t) - math.log(0.5 * t) * sf.bessel_j(0, t)
    integrand = sf.gamma_log_minus_ci(t) / t * bracket
    leading = 0.25 * t * sf.CONSTANTS.euler_gamma
    assert abs(integrand / leading - 1.0) <= 1e-6


def test_clausen_cot_integral_weight3():
    r = clausen_cot_integral(0, 1e-10)
    assert abs(r.value - 1.75 * sf.CONSTANTS.log2 * sf.zeta(3)) <= 1e-9


def test_clausen_cot_integral_weight5_matches_closed_form():
    r = clausen_cot_integral(1, 1e-10)
    assert abs(r.value - 0.5 * eulersum.corollary3_rhs(4).value) <= 1e-9


def test_clausen_cot_integral_domain():
    with pytest.raises(ValueError):
        clausen_cot_integral(-1)


def test_corollary5_rhs_matches_series():
    series = neumann.corollary5_series(2.0, 1e-10)
    r = corollary5_rhs(2.0, 2e-7)
    assert abs(r.value - series.value) <= 1e-6


def test_corollary6_integrals():
    g = sf.CONSTANTS
    r = corollary6_integral(2e-5)
    assert abs(r.value - (4.0 - 4.0 * g.catalan_g - g.euler_gamma)) <= 1e-4
    ri = corollary6_intermediate_integral(2e-5)
    assert abs(ri.value - (3.0 - 4.0 * g.catalan_g)) <= 1e-4


# ---------------------------------------------------------------------------
# error-estimate honesty on exact targets
# ---------------------------------------------------------------------------

def test_error_estimates_are_honest():
    cases = [
        (lemma1_integral(12), float(coeffs.alpha(12))),
        (lemma3_integral(12), float(coeffs.beta(12))),
        (si_transform_integral(5.0), sf.si(5.0)),
        (bessel_j1_over_t_integral(2e-10), 1.0),
        (si_bessel_integral(0, 1e-8), 1.0),
        (si_bessel_integral(3, 1e-8), float(coeffs.alpha(3)) / 7.0),
        (ci_bessel_integral(2, 1e-8), 0.5),
        (j0_orthogonality_integral(2e-7), 0.0),
        (example2_integral(2e-6), _example2_target()),
        (clausen_cot_integral(0, 1e-10), 1.75 * sf.CONSTANTS.log2 * sf.zeta(3)),
    ]
    for result, target in cases:
        assert abs(result.value - target) <= 5.0 * max(result.abs_err_estimate, 1e-16)
