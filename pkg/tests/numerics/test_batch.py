"""Tests for the binary64 evaluation engine."""

import mpmath as mp
import numpy as np
import pytest

from hardy_moments.numerics import hardy_z_batch, theta_batch, zeta_critical_batch, zeta_em_batch


class TestThetaBatch:
    """Vectorised theta."""

    def test_matches_mpmath(self):
        """theta agrees with mpmath to binary64 accuracy."""
        t = np.array([0.0, 1.0, 14.0, 250.0, 5000.0])
        expected = np.array([float(mp.siegeltheta(x)) for x in t])
        np.testing.assert_allclose(theta_batch(t), expected, rtol=1e-13, atol=1e-12)


class TestZetaEmBatch:
    """Euler-Maclaurin zeta in binary64."""

    def test_off_line(self):
        """Values at sigma = 0.75 match mpmath."""
        t = np.array([2.0, 30.0, 300.0])
        expected = np.array([complex(mp.zeta(mp.mpc(0.75, x))) for x in t])
        np.testing.assert_allclose(zeta_em_batch(0.75, t), expected, rtol=1e-10)

    def test_empty(self):
        """An empty input gives an empty output."""
        assert zeta_em_batch(0.5, np.array([])).shape == (0,)


class TestHardyZBatch:
    """Vectorised Z on both sides of the Riemann-Siegel switch."""

    def test_below_switch(self):
        """Euler-Maclaurin branch is accurate to about 1e-10."""
        t = np.linspace(10.0, 900.0, 37)
        expected = np.array([float(mp.siegelz(x)) for x in t])
        np.testing.assert_allclose(hardy_z_batch(t), expected, atol=1e-9)

    def test_above_switch(self):
        """Riemann-Siegel branch is accurate to better than 1e-6."""
        t = np.array([1000.5, 2345.6, 10000.25, 54321.0])
        expected = np.array([float(mp.siegelz(x)) for x in t])
        np.testing.assert_allclose(hardy_z_batch(t), expected, atol=1e-6)

    def test_even_and_shape(self):
        """Z(-t) = Z(t) and the input shape is kept."""
        t = np.array([[20.0, 40.0], [60.0, 80.0]])
        np.testing.assert_array_equal(hardy_z_batch(-t), hardy_z_batch(t))
        assert hardy_z_batch(t).shape == (2, 2)

    def test_zeta_critical(self):
        """zeta(1/2 + it) is Z rotated back by theta."""
        t = np.array([25.0, 1500.0])
        expected = np.array([complex(mp.zeta(mp.mpc(0.5, x))) for x in t])
        np.testing.assert_allclose(zeta_critical_batch(t), expected, atol=1e-6)

    @pytest.mark.parametrize("t", [1000.0 - 1e-9, 1000.0])
    def test_switch_point_continuity(self, t):
        """Both branches agree where they meet."""
        assert abs(hardy_z_batch(np.array([t]))[0] - float(mp.siegelz(t))) < 1e-6
