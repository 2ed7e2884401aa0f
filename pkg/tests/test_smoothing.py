"""Tests for the smoothing kernel rho."""

from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest

from hardy_moments.errors import DomainError
from hardy_moments.smoothing import DEFAULT_KERNEL, SmoothingKernel, rho, rho_derivatives


class TestRho:
    """Values and the reciprocal partition of unity."""

    @pytest.mark.parametrize("u,expected", [("0.1", 1), ("0.5", 1), (1, "0.5"), (2, 0), (50, 0)])
    def test_values(self, u, expected):
        """rho is 1 on (0, 1/2], 1/2 at 1 and 0 on [2, inf)."""
        with mp.workprec(128):
            assert abs(rho(u) - mp.mpf(expected)) < mp.mpf(2) ** -120

    @pytest.mark.parametrize("u", ["0.6", "0.9", "1.3", Fraction(7, 4)])
    def test_partition_of_unity(self, u):
        """rho(u) + rho(1/u) = 1."""
        with mp.workprec(128):
            uu = mp.mpf(Fraction(u).numerator) / Fraction(u).denominator
            assert abs(rho(uu) + rho(1 / uu) - 1) < mp.mpf(2) ** -115

    def test_monotone(self):
        """rho decreases across the transition band."""
        u = np.linspace(0.5, 2.0, 301)
        values = rho(u)
        assert np.all(np.diff(values) <= 0)
        assert values[0] == 1.0 and values[-1] == 0.0

    def test_array_matches_scalar(self):
        """The binary64 kernel agrees with the mpmath one."""
        u = np.array([0.3, 0.7, 1.0, 1.4, 1.99, 3.0])
        expected = np.array([float(rho(float(x))) for x in u])
        np.testing.assert_allclose(rho(u), expected, atol=1e-14)

    @pytest.mark.parametrize("u", [0, -1])
    def test_domain(self, u):
        """u must be positive."""
        with pytest.raises(DomainError):
            rho(u)

    def test_domain_array(self):
        """Arrays with non-positive entries are refused."""
        with pytest.raises(DomainError):
            rho(np.array([1.0, 0.0]))


class TestDerivatives:
    """rho' and rho''."""

    @pytest.mark.parametrize("u", ["0.7", "1.1", "1.8"])
    def test_against_numerical_differentiation(self, u):
        """Closed-form derivatives match mpmath.diff."""
        with mp.workprec(128):
            uu = mp.mpf(u)
            d1, d2 = rho_derivatives(uu)
            assert abs(d1 - mp.diff(rho, uu)) < mp.mpf(10) ** -25
            assert abs(d2 - mp.diff(rho, uu, 2)) < mp.mpf(10) ** -20

    def test_vanish_outside_band(self):
        """Both derivatives are 0 off (1/2, 2)."""
        assert rho_derivatives("0.25") == (0, 0)
        assert rho_derivatives(3) == (0, 0)

    def test_array_matches_scalar(self):
        """Vectorised derivatives agree with the mpmath ones."""
        u = np.array([0.6, 1.0, 1.5])
        d1, d2 = DEFAULT_KERNEL.rho_derivatives_array(u)
        expected = [tuple(float(v) for v in rho_derivatives(float(x))) for x in u]
        np.testing.assert_allclose(d1, [e[0] for e in expected], rtol=1e-12, atol=1e-15)
        np.testing.assert_allclose(d2, [e[1] for e in expected], rtol=1e-12, atol=1e-15)

    def test_derivative_bounds(self):
        """Recorded bounds dominate sampled derivatives."""
        c1, c2 = DEFAULT_KERNEL.derivative_bounds
        d1, d2 = DEFAULT_KERNEL.rho_derivatives_array(np.linspace(0.51, 1.99, 999))
        assert np.max(np.abs(d1)) <= c1
        assert np.max(np.abs(d2)) <= c2


class TestKernelBand:
    """Custom transition bands."""

    def test_wider_band(self):
        """A [1/3, 3] kernel keeps the partition of unity."""
        kernel = SmoothingKernel(Fraction(1, 3), Fraction(3))
        with mp.workprec(128):
            assert abs(kernel.rho(mp.mpf("0.4")) + kernel.rho(1 / mp.mpf("0.4")) - 1) < mp.mpf(10) ** -30
            assert kernel.rho(mp.mpf("0.34")) < 1

    def test_rejects_asymmetric_band(self):
        """The band must be [1/b, b]."""
        with pytest.raises(DomainError):
            SmoothingKernel(Fraction(1, 2), Fraction(3))
