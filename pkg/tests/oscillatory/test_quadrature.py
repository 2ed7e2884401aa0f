"""Tests for the adaptive oscillatory quadrature."""

import math

import mpmath as mp
import numpy as np
import pytest

from hardy_moments.errors import DomainError, NonFiniteSample, ToleranceNotMet
from hardy_moments.numerics import PrecisionContext
from hardy_moments.oscillatory import (
    PanelSelectionStrategy,
    ScalarIntegrand,
    VectorIntegrand,
    hardy_phase_rate,
    integrate_oscillatory,
)
from hardy_moments.oscillatory.quadrature import _PANEL_CHUNK


class TestPanelSelection:
    """Cutting [T1, T2] into panels."""

    def test_constant_rate(self):
        """A rate of 2 pi with a quarter oscillation per panel gives width 1/4."""
        strategy = PanelSelectionStrategy(0.0, 1.0, lambda t: 2 * math.pi, 0.25)
        np.testing.assert_array_equal(strategy.select_edges(), [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_panels_cover_interval(self):
        """Panels are contiguous, ordered and end exactly at T2."""
        panels = PanelSelectionStrategy(10.0, 500.0, lambda t: hardy_phase_rate(t, 3)).select_panels()
        assert panels[0].a == 10.0
        assert panels[-1].b == 500.0
        assert all(p.b == q.a for p, q in zip(panels, panels[1:]))
        assert [p.index for p in panels] == list(range(len(panels)))

    def test_width_respects_rate(self):
        """No panel is wider than the allowed fraction at either end."""
        rate = lambda t: 0.1 * t
        for panel in PanelSelectionStrategy(1.0, 200.0, rate).select_panels():
            assert panel.width <= 0.25 * 2 * math.pi / rate(panel.b) * (1 + 1e-12)

    def test_zero_rate_gives_one_panel(self):
        """Non-oscillating integrands get a single panel."""
        assert len(PanelSelectionStrategy(0.0, 5.0, lambda t: 0.0).select_panels()) == 1

    def test_hardy_phase_rate(self):
        """The rate is 1 at t <= 2 pi and grows like (1/2) log t."""
        assert hardy_phase_rate(1.0) == 1.0
        assert hardy_phase_rate(2 * math.pi, 2.0) == 2.0
        rates = hardy_phase_rate(np.array([2 * math.pi, 2 * math.pi * math.e ** 2]))
        np.testing.assert_allclose(rates, [1.0, 2.0])


class TestIntegrateOscillatory:
    """Values, error estimates and failure modes."""

    def test_cosine(self):
        """int_0^100 cos t dt = sin 100."""
        result = integrate_oscillatory(VectorIntegrand(np.cos, lambda t: 1.0), 0, 100)
        assert abs(result.value - math.sin(100)) < 1e-12
        assert result.err_est <= 1e-8 * 10

    def test_fresnel(self):
        """int_0^20 e^{i t^2} dt against the Fresnel integrals."""
        integrand = VectorIntegrand(lambda t: np.exp(1j * t * t), lambda t: 2 * t + 1)
        value, err = integrate_oscillatory(integrand, 0, 20, tol=1e-10)
        scale = math.sqrt(math.pi / 2)
        x = 20 * math.sqrt(2 / math.pi)
        expected = complex(scale * float(mp.fresnelc(x)), scale * float(mp.fresnels(x)))
        assert abs(value - expected) < 1e-9
        assert err <= 1e-10

    def test_mp_backend(self):
        """A plain mpmath callable is integrated at working precision."""
        ctx = PrecisionContext(128)
        result = integrate_oscillatory(mp.cos, 0, 10, ctx=ctx, phase_rate=lambda t: 1.0)
        with mp.workprec(128):
            assert abs(result.value - mp.sin(10)) < mp.mpf(10) ** -20

    def test_rule_pair_estimate(self):
        """Both rules are exact for degree 13, so the estimate vanishes there but not for degree 20."""
        exact = integrate_oscillatory(VectorIntegrand(lambda t: t ** 13, lambda t: 0.0), 0, 1)
        assert exact.panels == 1
        assert abs(exact.value - 1 / 14) < 1e-15
        assert exact.err_est < 1e-15
        rough = integrate_oscillatory(VectorIntegrand(lambda t: t ** 20, lambda t: 0.0), 0, 1, tol=1.0)
        assert rough.err_est > 1e-12
        assert abs(rough.value - 1 / 21) < 1e-15

    def test_deterministic(self):
        """Repeated runs give bit-identical results."""
        integrand = VectorIntegrand(lambda t: np.exp(0.5j * t * np.log(t)))
        first = integrate_oscillatory(integrand, 10, 3000)
        second = integrate_oscillatory(integrand, 10, 3000)
        assert first.value == second.value
        assert first.leaves == second.leaves

    def test_tolerance_not_met(self):
        """A jump defeats the rule pair once bisection depth runs out."""
        integrand = VectorIntegrand(lambda t: np.sign(t - 0.3), lambda t: 1.0)
        with pytest.raises(ToleranceNotMet) as info:
            integrate_oscillatory(integrand, 0, 1, tol=1e-14, max_depth=2)
        assert abs(info.value.value - 0.4) < 0.1
        assert info.value.err_est > 1e-14

    def test_non_finite(self):
        """nan samples are reported."""
        integrand = VectorIntegrand(lambda t: np.full(np.shape(t), np.nan))
        with pytest.raises(NonFiniteSample):
            integrate_oscillatory(integrand, 0, 1)

    def test_non_finite_mp(self):
        """nan samples are reported on the mp backend too."""
        with pytest.raises(NonFiniteSample):
            integrate_oscillatory(ScalarIntegrand(lambda t: mp.nan), 0, 1)

    @pytest.mark.parametrize("T1,T2,tol", [(5, 5, None), (5, 1, None), (0, 1, 0.0)])
    def test_domain(self, T1, T2, tol):
        """Empty intervals and non-positive tolerances are refused."""
        with pytest.raises(DomainError):
            integrate_oscillatory(VectorIntegrand(np.cos), T1, T2, tol=tol)

    def test_result_unpacks(self):
        """QuadratureResult unpacks as (value, err_est)."""
        result = integrate_oscillatory(VectorIntegrand(lambda t: np.ones_like(t)), 0, 2)
        value, err = result
        assert abs(value - 2.0) < 1e-14
        assert err == result.err_est
        assert result.panels >= 1


class TestPanelChunks:
    """Panel counts on either side of a chunk boundary."""

    @pytest.mark.parametrize("n", [3, _PANEL_CHUNK - 1, _PANEL_CHUNK, _PANEL_CHUNK + 1, 2 * _PANEL_CHUNK + 1])
    def test_every_panel_is_counted(self, n):
        """Unit panels over [0, n] integrate cos to sin n whatever n is modulo the chunk."""
        integrand = VectorIntegrand(np.cos, lambda t: math.pi / 2)
        result = integrate_oscillatory(integrand, 0, n)
        assert result.panels == n
        assert result.leaves == n
        assert abs(result.value - math.sin(n)) < 1e-9


class TestQuadratureProperties:
    """Linearity, additivity and agreement with closed forms."""

    @staticmethod
    def chirp(t):
        return np.exp(0.5j * t * np.log(t))

    def test_linearity(self):
        """I(2f + 3g) = 2 I(f) + 3 I(g) up to the tolerances."""
        rate = lambda t: hardy_phase_rate(t, 2.0)
        f = self.chirp
        g = lambda t: np.cos(0.7 * t)
        tol = 1e-10
        combined = integrate_oscillatory(VectorIntegrand(lambda t: 2 * f(t) + 3 * g(t), rate), 10, 400, tol=tol)
        first = integrate_oscillatory(VectorIntegrand(f, rate), 10, 400, tol=tol)
        second = integrate_oscillatory(VectorIntegrand(g, rate), 10, 400, tol=tol)
        assert abs(combined.value - (2 * first.value + 3 * second.value)) <= 6 * tol

    def test_additivity(self):
        """I over [10, 50] plus I over [50, 120] equals I over [10, 120]."""
        integrand = VectorIntegrand(self.chirp, lambda t: hardy_phase_rate(t, 2.0))
        tol = 1e-10
        left = integrate_oscillatory(integrand, 10, 50, tol=tol)
        right = integrate_oscillatory(integrand, 50, 120, tol=tol)
        whole = integrate_oscillatory(integrand, 10, 120, tol=tol)
        assert abs(left.value + right.value - whole.value) <= 3 * tol

    @pytest.mark.parametrize("seed", range(20))
    def test_random_fresnel(self, seed):
        """A e^{i c t^2} over [0, L] against the Fresnel integrals."""
        rng = np.random.default_rng(seed)
        c = rng.uniform(0.05, 2.0)
        length = rng.uniform(5.0, 30.0)
        height = rng.uniform(0.5, 3.0)
        integrand = VectorIntegrand(lambda t: height * np.exp(1j * c * t * t), lambda t: 2 * c * t + 1)
        value, err = integrate_oscillatory(integrand, 0, length, tol=1e-10 * height)
        with mp.workprec(96):
            scale = mp.sqrt(mp.pi / (2 * mp.mpf(c)))
            x = mp.mpf(length) * mp.sqrt(2 * mp.mpf(c) / mp.pi)
            expected = complex(height * scale * mp.fresnelc(x), height * scale * mp.fresnels(x))
        assert abs(value - expected) < 1e-9 * height
        assert err <= 1e-10 * height
