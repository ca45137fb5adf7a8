"""Analytic ratio distributions: closed forms against quadrature oracles."""

import math

import numpy as np
import pytest
from scipy import integrate, optimize

from hosr.errors import DomainError
from hosr.theory import (
    PoissonHosrDistribution,
    WignerRatioDistribution,
    gamma_spacing_pdf,
    normalization_constant,
    poisson_hosr,
    poisson_hosr_pdf,
    wigner_ratio,
    wigner_ratio_pdf,
)

# closed forms for the Wigner-ratio normalization at the classical indices
C_BETA_1 = 27.0 / 8.0
C_BETA_2 = 81.0 * math.sqrt(3.0) / (4.0 * math.pi)


def wigner_shape(r, beta):
    r = np.asarray(r, dtype=np.float64)
    return (r + r * r) ** beta / (1.0 + r + r * r) ** (1.0 + 1.5 * beta)


def simpson_norm_oracle(beta, panels=1 << 14):
    """1 / integral of the unnormalized shape, by fixed-grid Simpson.

    The inversion symmetry r -> 1/r maps the tail onto [0, 1], so the full
    integral is twice the integral over [0, 1]; substituting r = u^2 removes
    the r^beta cusp at the origin for fractional beta.  Fixed-grid Simpson
    is an independent route from the adaptive quadrature in the library.
    """
    u = np.linspace(0.0, 1.0, 2 * panels + 1)
    y = wigner_shape(u * u, beta) * 2.0 * u
    h = u[1] - u[0]
    total = (h / 3.0) * (y[0] + y[-1] + 4.0 * y[1::2].sum() + 2.0 * y[2:-1:2].sum())
    return 1.0 / (2.0 * total)


class TestNormalizationConstant:
    def test_beta_1_closed_form(self):
        assert normalization_constant(1.0) == pytest.approx(C_BETA_1, rel=1e-10)

    def test_beta_2_closed_form(self):
        assert normalization_constant(2.0) == pytest.approx(C_BETA_2, rel=1e-10)

    def test_beta_4_against_oracle(self):
        assert normalization_constant(4.0) == pytest.approx(
            simpson_norm_oracle(4.0), rel=1e-9
        )

    def test_fractional_beta_against_oracle(self):
        for beta in (0.5, 1.7, 3.3, 6.4):
            assert normalization_constant(beta) == pytest.approx(
                simpson_norm_oracle(beta), rel=1e-8
            )

    def test_continuity_in_beta(self):
        # no jumps: second differences on a fine grid stay at the smooth
        # curvature scale (a discontinuity of size d would show up as d)
        betas = np.linspace(1.8, 2.2, 41)
        c = np.array([normalization_constant(float(b)) for b in betas])
        assert np.all(np.abs(np.diff(c, 2)) / c[1:-1] < 1e-3)

    def test_rejects_nonpositive_beta(self):
        with pytest.raises(DomainError):
            normalization_constant(0.0)
        with pytest.raises(DomainError):
            normalization_constant(-1.0)


class TestWignerRatioPdf:
    def test_zero_at_origin(self):
        for beta in (0.5, 1.0, 2.0, 4.0):
            assert wigner_ratio_pdf(0.0, beta) == 0.0

    def test_value_at_unit_ratio(self):
        # C1 * 2 / 3^(5/2)
        expected = C_BETA_1 * 2.0 / 3.0 ** 2.5
        assert wigner_ratio_pdf(1.0, 1.0) == pytest.approx(expected, rel=1e-10)
        assert expected == pytest.approx(0.4330, abs=5e-5)

    def test_inversion_duality(self):
        rng = np.random.default_rng(12)
        r = rng.uniform(0.05, 5.0, 100)
        for beta in (1.0, 2.3, 3.0, 4.0):
            left = wigner_ratio_pdf(1.0 / r, beta)
            right = r * r * wigner_ratio_pdf(r, beta)
            assert np.allclose(left, right, rtol=1e-10)

    def test_nonnegative(self):
        r = np.linspace(0.0, 50.0, 500)
        assert np.all(wigner_ratio_pdf(r, 2.5) >= 0.0)

    def test_rejects_bad_beta(self):
        with pytest.raises(DomainError):
            wigner_ratio_pdf(1.0, -2.0)


class TestPoissonHosrPdf:
    def test_closed_form_spot_values(self):
        assert poisson_hosr_pdf(0.0, 1) == 1.0
        assert poisson_hosr_pdf(1.0, 2) == pytest.approx(0.375, rel=1e-12)
        assert poisson_hosr_pdf(1.0, 3) == pytest.approx(30.0 / 64.0, rel=1e-12)
        assert poisson_hosr_pdf(1.0, 4) == pytest.approx(0.546875, rel=1e-12)

    def test_first_order_is_inverse_square(self):
        r = np.linspace(0.0, 8.0, 50)
        assert np.allclose(poisson_hosr_pdf(r, 1), 1.0 / (1.0 + r) ** 2, rtol=1e-12)

    def test_inversion_duality(self):
        rng = np.random.default_rng(21)
        r = rng.uniform(0.05, 5.0, 100)
        for k in (1, 2, 5, 8):
            left = poisson_hosr_pdf(1.0 / r, k)
            right = r * r * poisson_hosr_pdf(r, k)
            assert np.allclose(left, right, rtol=1e-10)

    def test_matches_gamma_quotient_convolution(self):
        # the ratio of two independent k-th order spacings: quotient density
        # integral(y * f(r y) f(y) dy) must reproduce the closed form
        for k in (1, 2, 4):
            for r in np.linspace(0.1, 10.0, 23):
                oracle, _ = integrate.quad(
                    lambda y: y * gamma_spacing_pdf(r * y, k) * gamma_spacing_pdf(y, k),
                    0.0, np.inf,
                )
                assert poisson_hosr_pdf(r, k) == pytest.approx(oracle, abs=1e-6)

    def test_mode_location(self):
        # argmax of the order-k density sits at (k-1)/(k+1)
        for k in range(1, 7):
            found = optimize.minimize_scalar(
                lambda r: -poisson_hosr_pdf(r, k),
                bounds=(0.0, 3.0), method="bounded",
                options={"xatol": 1e-10},
            ).x
            assert abs(found - (k - 1) / (k + 1)) < 1e-8

    def test_rejects_bad_order(self):
        with pytest.raises(DomainError):
            poisson_hosr_pdf(1.0, 0)
        with pytest.raises(DomainError):
            poisson_hosr_pdf(1.0, 2.5)


class TestGammaSpacingPdf:
    def test_spot_values(self):
        assert gamma_spacing_pdf(0.0, 1) == 1.0
        assert gamma_spacing_pdf(1.0, 2) == pytest.approx(math.exp(-1.0), rel=1e-12)
        assert gamma_spacing_pdf(0.0, 3) == 0.0

    def test_normalized(self):
        total, _ = integrate.quad(lambda z: gamma_spacing_pdf(z, 3), 0.0, np.inf)
        assert total == pytest.approx(1.0, abs=1e-10)

    def test_mean_is_order(self):
        # a k-th order spacing is a sum of k unit-mean spacings
        for k in (1, 2, 5):
            mean, _ = integrate.quad(
                lambda z: z * gamma_spacing_pdf(z, k), 0.0, np.inf
            )
            assert mean == pytest.approx(float(k), rel=1e-9)


class TestWignerRatioDistribution:
    def test_cdf_median_is_one(self):
        for beta in (0.7, 1.0, 2.0, 3.5, 4.0):
            assert abs(wigner_ratio(beta).cdf(1.0) - 0.5) < 1e-8

    def test_cdf_against_direct_quadrature(self):
        dist = wigner_ratio(2.0)
        for r in (0.2, 0.5, 0.9, 1.0, 2.0, 5.0):
            oracle, _ = integrate.quad(
                lambda x: float(dist.pdf(x)), 0.0, r, limit=200
            )
            assert dist.cdf(r) == pytest.approx(oracle, abs=2e-8)

    def test_cdf_limits_and_monotone(self):
        dist = wigner_ratio(1.0)
        assert dist.cdf(0.0) == 0.0
        r = np.linspace(0.0, 40.0, 800)
        f = dist.cdf(r)
        assert np.all(np.diff(f) >= 0.0)
        assert f[-1] > 0.99

    def test_ppf_round_trip(self):
        dist = wigner_ratio(3.0)
        q = np.linspace(0.01, 0.99, 25)
        assert np.allclose(dist.cdf(dist.ppf(q)), q, atol=1e-9)

    def test_ppf_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            wigner_ratio(1.0).ppf(1.5)

    def test_describe_and_cache(self):
        assert wigner_ratio(2.0).describe() == "wigner-ratio(beta=2)"
        assert wigner_ratio(2.0) is wigner_ratio(2.0)

    def test_construction_rejects_bad_beta(self):
        with pytest.raises(DomainError):
            WignerRatioDistribution(0.0)


class TestPoissonHosrDistribution:
    def test_cdf_median_is_one(self):
        for k in (1, 2, 4, 8):
            assert abs(poisson_hosr(k).cdf(1.0) - 0.5) < 1e-12

    def test_first_order_cdf_closed_form(self):
        # k=1 CDF is r/(1+r)
        dist = poisson_hosr(1)
        r = np.linspace(0.0, 20.0, 50)
        assert np.allclose(dist.cdf(r), r / (1.0 + r), rtol=1e-12)

    def test_cdf_against_direct_quadrature(self):
        dist = poisson_hosr(3)
        for r in (0.3, 1.0, 2.5, 7.0):
            oracle, _ = integrate.quad(lambda x: float(dist.pdf(x)), 0.0, r)
            assert dist.cdf(r) == pytest.approx(oracle, abs=1e-10)

    def test_ppf_round_trip(self):
        dist = poisson_hosr(4)
        q = np.linspace(0.005, 0.995, 40)
        assert np.allclose(dist.cdf(dist.ppf(q)), q, atol=1e-12)

    def test_ppf_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            poisson_hosr(2).ppf(-0.1)

    def test_describe_and_cache(self):
        assert poisson_hosr(3).describe() == "poisson-hosr(k=3)"
        assert poisson_hosr(3) is poisson_hosr(3)

    def test_construction_rejects_bad_order(self):
        with pytest.raises(DomainError):
            PoissonHosrDistribution(0)
