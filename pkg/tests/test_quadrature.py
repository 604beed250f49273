"""Analytic corpus for the improper-integral diagnosis engine."""

import math

import numpy as np
import pytest

from levyhull.config import QuadratureConfig
from levyhull.quadrature import (
    IntegralVerdict,
    improper_integral,
    local_integrability_at,
)


def power(theta):
    return lambda u: u ** (-theta)


def power_log(theta):
    # log form of u^-theta: f(e^t) e^t = e^((1-theta) t)
    return lambda t: np.exp((1.0 - theta) * t)


SCALES = [1e-6, 1.0, 1e6]


class TestPowerGrid:
    """u^-theta over [1, inf): divergent iff theta <= 1."""

    @pytest.mark.parametrize("theta", np.round(np.arange(0.0, 1.01, 0.05), 2).tolist())
    @pytest.mark.parametrize("c", SCALES)
    def test_divergent(self, theta, c):
        f = power(theta)
        v = improper_integral(lambda u: c * f(u), 1.0,
                              log_form=lambda t: c * power_log(theta)(t))
        assert v.is_divergent, (theta, c, v)
        assert v.growth_exponent >= 0.0

    @pytest.mark.parametrize("theta", np.round(np.arange(1.05, 2.01, 0.05), 2).tolist())
    @pytest.mark.parametrize("c", SCALES)
    def test_convergent(self, theta, c):
        f = power(theta)
        v = improper_integral(lambda u: c * f(u), 1.0,
                              log_form=lambda t: c * power_log(theta)(t))
        assert v.is_convergent, (theta, c, v)
        exact = c / (theta - 1.0)
        assert v.value == pytest.approx(exact, rel=1e-4)
        assert abs(v.value - exact) <= max(10 * v.error, 1e-9 * exact)


class TestSlowlyVarying:
    def test_one_over_u_log_u_diverges(self):
        f = lambda u: 1.0 / (u * np.log(u))
        g = lambda t: 1.0 / t
        v = improper_integral(f, 2.0, log_form=g)
        assert v.is_divergent, v

    def test_one_over_u_log_sq_converges(self):
        f = lambda u: 1.0 / (u * np.log(u) ** 2)
        g = lambda t: 1.0 / t**2
        v = improper_integral(f, math.e, log_form=g)
        assert v.is_convergent
        assert v.value == pytest.approx(1.0, abs=1e-6)

    def test_triple_log_converges_to_one(self):
        # 1 / (u log u (log log u)^2) from e^e integrates to exactly 1
        f = lambda u: 1.0 / (u * np.log(u) * np.log(np.log(u)) ** 2)
        g = lambda t: 1.0 / (t * np.log(t) ** 2)
        v = improper_integral(f, math.exp(math.e), log_form=g)
        assert v.is_convergent, v
        assert v.value == pytest.approx(1.0, abs=1e-3)

    def test_triple_log_diverges(self):
        # 1 / (u log u log log u) diverges
        f = lambda u: 1.0 / (u * np.log(u) * np.log(np.log(u)))
        g = lambda t: 1.0 / (t * np.log(t))
        v = improper_integral(f, math.exp(math.e), log_form=g)
        assert v.is_divergent, v

    def test_inverse_square_log_t(self):
        # 1 / (u (log log u)^2): divergent (window sums grow on the log scale)
        f = lambda u: 1.0 / (u * np.log(np.log(u)) ** 2)
        g = lambda t: 1.0 / np.log(t) ** 2
        v = improper_integral(f, math.exp(math.e), log_form=g)
        assert v.is_divergent, v


class TestMixedShapes:
    def test_exponential_decay(self):
        v = improper_integral(lambda u: np.exp(-u), 0.0)
        assert v.is_convergent
        assert v.value == pytest.approx(1.0, rel=1e-8)

    def test_gaussian_lorentzian(self):
        v = improper_integral(lambda u: 1.0 / (1.0 + 0.5 * u**2), 0.0)
        assert v.is_convergent
        exact = math.pi / math.sqrt(2.0)
        assert v.value == pytest.approx(exact, rel=1e-7)

    def test_zero_integrand(self):
        v = improper_integral(lambda u: np.zeros_like(np.asarray(u, dtype=float)), 1.0)
        assert v.is_convergent
        assert v.value == 0.0

    def test_oscillating_envelope_divergent(self):
        # (2 + sin u)/u inherits the 1/u divergence
        f = lambda u: (2.0 + np.sin(u)) / u
        g = lambda t: 2.0 + np.sin(np.exp(np.minimum(t, 700.0)))
        v = improper_integral(f, 1.0, log_form=g)
        assert v.is_divergent

    def test_sparse_spikes_divergent(self):
        # unit-mass bumps at u = 2^(j^2) are non-Cauchy: recurrent spikes
        centers = [2.0 ** (j * j) for j in range(1, 7)]

        def f(u):
            u = np.asarray(u, dtype=float)
            out = np.zeros_like(u)
            for c in centers:
                w = 0.05 * c
                out += np.where(np.abs(u - c) < w, 1.0 / (2 * w), 0.0)
            return out

        v = improper_integral(f, 1.0)
        assert v.is_divergent
        # strictly growing spikes must be flagged divergent
        def f2(u):
            u = np.asarray(u, dtype=float)
            out = np.zeros_like(u)
            for j, c in enumerate(centers):
                w = 0.05 * c
                out += np.where(np.abs(u - c) < w, 10.0**j / (2 * w), 0.0)
            return out

        v2 = improper_integral(f2, 1.0)
        assert v2.is_divergent


class TestLocalIntegrability:
    def test_inverse_sqrt_converges(self):
        v = local_integrability_at(lambda x: 1.0 / np.sqrt(x), 0.0, "right", 1.0)
        assert v.is_convergent
        assert v.value == pytest.approx(2.0, rel=1e-5)

    def test_inverse_x_diverges(self):
        v = local_integrability_at(lambda x: 1.0 / x, 0.0, "right", 1.0)
        assert v.is_divergent

    def test_log_square_singularity(self):
        # 1/(x log(1/x)^2) on (0, 1/2) integrates to 1/log 2
        f = lambda x: 1.0 / (x * np.log(1.0 / x) ** 2)
        g = lambda s: 1.0 / s**2
        v = local_integrability_at(f, 0.0, "right", 0.5, log_form=g)
        assert v.is_convergent
        assert v.value == pytest.approx(1.0 / math.log(2.0), abs=1e-3)

    def test_log_singularity_diverges(self):
        f = lambda x: 1.0 / (x * np.log(1.0 / x))
        g = lambda s: 1.0 / s
        v = local_integrability_at(f, 0.0, "right", 0.5, log_form=g)
        assert v.is_divergent

    def test_left_side(self):
        v = local_integrability_at(lambda x: 1.0 / np.sqrt(np.abs(x)), 0.0, "left", 1.0)
        assert v.is_convergent
        assert v.value == pytest.approx(2.0, rel=1e-5)

    def test_shifted_point(self):
        v = local_integrability_at(lambda x: 1.0 / np.abs(x - 3.0) ** 0.25, 3.0, "right", 1.0)
        assert v.is_convergent
        assert v.value == pytest.approx(4.0 / 3.0, rel=1e-5)


class TestVerdictShape:
    def test_partial_sums_kept(self):
        v = improper_integral(lambda u: 1.0 / u, 1.0)
        assert len(v.partial_sums) >= 8
        assert np.all(np.diff(v.partial_sums) >= -1e-12)

    def test_str_forms(self):
        c = improper_integral(lambda u: np.exp(-u), 0.0)
        d = improper_integral(lambda u: 1.0 / u, 1.0)
        assert "Convergent" in str(c)
        assert "Divergent" in str(d)
        assert isinstance(c, IntegralVerdict)

    def test_tight_config_still_fast(self):
        cfg = QuadratureConfig(panel_rel_tol=1e-12)
        v = improper_integral(lambda u: np.exp(-(u**2)), 0.0, config=cfg)
        assert v.value == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-9)
