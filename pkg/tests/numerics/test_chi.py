"""Tests for chi, theta, Z and chi powers."""

from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest

from hardy_moments.errors import DomainError
from hardy_moments.numerics import (
    ComplexArg,
    PrecisionContext,
    eval_chi,
    eval_chi_power,
    eval_theta,
    eval_Z,
    eval_zeta,
)


class TestChi:
    """The functional-equation factor."""

    @pytest.mark.parametrize("t", [5, 50, 500])
    def test_unimodular_on_critical_line(self, ctx, t):
        """|chi(1/2 + it)| = 1."""
        value = eval_chi(ComplexArg.critical(t), ctx)
        assert abs(abs(value) - 1) < mp.mpf(2) ** -100

    def test_functional_equation(self, ctx):
        """zeta(s) = chi(s) zeta(1 - s) off the line."""
        s = ComplexArg("0.3", 20)
        lhs = eval_zeta(s, ctx)
        rhs = eval_chi(s, ctx) * eval_zeta(s.reflected(), ctx)
        assert abs(lhs - rhs) < mp.mpf(2) ** -95

    def test_reflection_identity(self, ctx):
        """chi(s) chi(1 - s) = 1."""
        s = ComplexArg("0.7", -12)
        product = eval_chi(s, ctx) * eval_chi(s.reflected(), ctx)
        assert abs(product - 1) < mp.mpf(2) ** -100

    def test_real_values(self, ctx):
        """chi(1/2) = 1 and chi vanishes at 0 and the negative even integers."""
        assert abs(eval_chi(ComplexArg("0.5", 0), ctx) - 1) < mp.mpf(2) ** -110
        assert eval_chi(ComplexArg(0, 0), ctx) == 0
        assert eval_chi(ComplexArg(-2, 0), ctx) == 0

    def test_pole(self, ctx):
        """chi has poles at positive odd integers."""
        with pytest.raises(DomainError):
            eval_chi(ComplexArg(3, 0), ctx)


class TestTheta:
    """The Riemann-Siegel phase."""

    def test_zero(self, ctx):
        """theta(0) = 0."""
        assert abs(eval_theta(0, ctx).theta) < mp.mpf(2) ** -120

    @pytest.mark.parametrize("t", [1, 17, 1000])
    def test_matches_mpmath(self, ctx, t):
        """theta agrees with mpmath.siegeltheta."""
        phase = eval_theta(t, ctx)
        with mp.workprec(200):
            assert abs(phase.theta - mp.siegeltheta(t)) < mp.mpf(2) ** -100 * (1 + abs(phase.theta))

    def test_negative_t(self, ctx):
        """theta is evaluated on t >= 0 only."""
        with pytest.raises(DomainError):
            eval_theta(-1, ctx)


class TestHardyZ:
    """Hardy's Z-function."""

    @pytest.mark.parametrize("t", [3, 20, 150])
    def test_matches_mpmath(self, ctx, t):
        """Z agrees with mpmath.siegelz."""
        with mp.workprec(200):
            reference = mp.siegelz(t)
        assert abs(eval_Z(t, ctx) - reference) < mp.mpf(2) ** -100

    def test_even(self, ctx):
        """Z(-t) = Z(t)."""
        assert eval_Z(-7, ctx) == eval_Z(7, ctx)

    def test_first_zero(self, ctx):
        """Z changes sign across the first zero."""
        assert eval_Z(14, ctx) * eval_Z("14.3", ctx) < 0

    def test_modulus_matches_zeta(self, ctx):
        """|Z(t)| = |zeta(1/2 + it)|."""
        z = eval_Z(40, ctx)
        zeta = eval_zeta(ComplexArg.critical(40), ctx)
        assert abs(abs(z) - abs(zeta)) < mp.mpf(2) ** -100


class TestChiPower:
    """chi^alpha on the theta branch."""

    def test_integer_power_matches_chi(self, ctx):
        """alpha = 1 reproduces chi(1/2 + it)."""
        value = eval_chi_power(30, 1, ctx)
        assert abs(value - eval_chi(ComplexArg.critical(30), ctx)) < mp.mpf(2) ** -95

    def test_unimodular(self, ctx):
        """Fractional powers stay on the unit circle."""
        assert abs(abs(eval_chi_power(100, "0.3", ctx)) - 1) < mp.mpf(2) ** -100

    def test_floor(self, ctx):
        """Heights below 1 are refused."""
        with pytest.raises(DomainError):
            eval_chi_power("0.5", 1, ctx)


def random_points(count: int, seed: int) -> list:
    """Exact rational s with sigma in [-2, 3] and 1 <= |t| <= 200."""
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(count):
        sigma = Fraction(int(rng.integers(-64, 97)), 32)
        t = Fraction(int(rng.integers(8, 1601)), 8) * (1 if rng.random() < 0.5 else -1)
        points.append(ComplexArg(sigma, t))
    return points


class TestFunctionalEquationSampled:
    """The functional equation at scattered rational points."""

    @pytest.mark.parametrize("s", random_points(25, seed=11), ids=str)
    def test_reflection(self, ctx, s):
        """chi(s) chi(1 - s) = 1 and zeta(s) = chi(s) zeta(1 - s)."""
        chi = eval_chi(s, ctx)
        chi_reflected = eval_chi(s.reflected(), ctx)
        zeta = eval_zeta(s, ctx)
        zeta_reflected = eval_zeta(s.reflected(), ctx)
        with ctx.workprec():
            eps = ctx.eps_mpf
            assert abs(chi * chi_reflected - 1) <= 100 * eps
            assert abs(zeta - chi * zeta_reflected) <= 100 * eps * (1 + abs(zeta_reflected))


class TestChiAsymptotics:
    """chi(sigma + it) = (t/2pi)^{1/2 - sigma - it} e^{i(t + pi/4)} (1 + O(1/t))."""

    @pytest.mark.parametrize("sigma", ["0.4", "0.5", "0.6"])
    @pytest.mark.parametrize("t", [100, 1000, 10**4, 10**5])
    def test_leading_term(self, ctx, sigma, t):
        """The relative deviation from the leading term is at most 10/t."""
        value = eval_chi(ComplexArg(sigma, t), ctx)
        with ctx.workprec():
            tt = mp.mpf(t)
            leading = (tt / (2 * mp.pi)) ** (mp.mpf(0.5) - mp.mpf(sigma) - 1j * tt) * mp.expj(tt + mp.pi / 4)
            assert tt * abs(value - leading) <= 10 * abs(leading)


class TestPrecisionGain:
    """Raising the working precision never loses accuracy."""

    @pytest.mark.parametrize("s", [ComplexArg("0.5", 40), ComplexArg("-1.25", "17.5"), ComplexArg(2, -300)], ids=str)
    def test_more_bits_no_worse(self, s):
        """zeta at 192 bits is at least as close to a 400-bit reference as at 96."""
        low = eval_zeta(s, PrecisionContext(96))
        high = eval_zeta(s, PrecisionContext(192))
        with mp.workprec(400):
            reference = mp.zeta(s.to_mpc())
            assert abs(high - reference) <= abs(low - reference)
            assert abs(high - reference) < mp.mpf(2) ** -170 * (1 + abs(reference))
