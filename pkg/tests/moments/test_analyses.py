"""Tests for the moment analyses at small heights."""

import math

import mpmath as mp
import numpy as np
import pytest

from hardy_moments.errors import CapacityExceeded, OutOfRange, TableTooSmall, UnknownKind
from hardy_moments.moments import (
    HardyPowerIntegrand,
    MomentDependencies,
    MomentKind,
    MomentSpec,
    analysis_for,
    check_S1_bound,
    jA_window_sums,
    run_moment,
    verify_hardy_and_calibrations,
    verify_J_dyadic,
    verify_theorem2,
)
from hardy_moments.moments.analyses import Theorem1Analysis
from hardy_moments.numerics import PrecisionContext


@pytest.fixture
def deps(small_table):
    """float64 backend with the shared table."""
    return MomentDependencies(ctx=PrecisionContext(128), table=small_table)


class TestHardyPowerIntegrand:
    """Z^a zeta^b chi^alpha on both backends."""

    @pytest.mark.parametrize("a,b,alpha", [(1, 1, 0.0), (2, 1, 0.0), (3, 0, 0.3), (2, 0, 0.0)])
    def test_backends_agree(self, a, b, alpha):
        """float64 and mp evaluations agree below the Riemann-Siegel switch."""
        ctx = PrecisionContext(128)
        t = np.array([12.5, 77.0, 300.25])
        fast = HardyPowerIntegrand(a, b, alpha, "float64", ctx).evaluate(t)
        exact = [complex(HardyPowerIntegrand(a, b, alpha, "mp", ctx).evaluate(float(x))) for x in t]
        np.testing.assert_allclose(fast, exact, rtol=1e-8, atol=1e-8)

    def test_phase_rate_multiplier(self):
        """Each factor contributes one theta-rate, plus the chi rotation."""
        assert HardyPowerIntegrand(2, 1).multiplier == 4
        assert HardyPowerIntegrand(3, 0, -0.25).multiplier == 3.5

    def test_rejects_trivial_powers(self):
        """a = b = 0 is not a moment."""
        with pytest.raises(ValueError):
            HardyPowerIntegrand(0, 0)


class TestIntegralKinds:
    """Integral analyses at heights where they run in seconds."""

    def test_second_moment(self, deps):
        """int_0^100 Z^2 is real and close to T log T + (2 gamma - 1 - log 2pi) T."""
        report = verify_hardy_and_calibrations("second_moment", 100, deps)
        assert abs(report.lhs.imag) < 1e-8
        assert report.residual < 0.1 * abs(report.main)
        assert report.consistent
        assert report.notes["err_est"] <= deps.tolerance(10) + deps.tolerance(90)

    def test_z3_dyadic_window(self, deps, small_table):
        """The cubic dyadic main term is the plain d3 sum over [(T/2pi)^{3/2}, (T/pi)^{3/2}]."""
        report = verify_hardy_and_calibrations("z3_dyadic", 100, deps)
        assert report.notes["terms"] == 179 - 64 + 1
        with mp.workprec(128):
            expected = 2 * mp.pi * mp.sqrt(mp.mpf(2) / 3) * mp.fsum(
                int(small_table.d3[n]) * mp.power(n, -mp.mpf(1) / 6) * mp.cospi(3 * mp.cbrt(n) ** 2 + mp.mpf(1) / 8)
                for n in range(64, 180)
            )
            assert abs(report.main - complex(expected)) <= 1e-12 * abs(expected)
        assert report.consistent

    def test_hardy_z_backends_agree(self):
        """int_0^20 Z agrees on the float64 and mp backends."""
        fast = verify_hardy_and_calibrations("hardy_z", 20, MomentDependencies(backend="float64"))
        exact = verify_hardy_and_calibrations("hardy_z", 20, MomentDependencies(backend="mp"))
        assert abs(fast.lhs - exact.lhs) < 1e-6
        assert exact.main == 0

    def test_theorem1_report(self, deps):
        """int_0^T Z zeta produces a consistent report with quadrature notes."""
        report = run_moment(MomentSpec("th1", T=200), deps)
        assert report.spec.kind is MomentKind.TH1
        assert report.consistent
        assert report.notes["panels"] > 0 and report.notes["leaves"] >= report.notes["panels"]
        assert report.prec_bits == 128

    def test_j_dyadic_needs_table(self):
        """Divisor-weighted kinds refuse to run without a table."""
        with pytest.raises(TableTooSmall):
            verify_J_dyadic(1000, MomentDependencies())

    def test_j_dyadic_halving_note(self, deps):
        """The J window at T = 200 has no integral endpoint."""
        report = verify_J_dyadic(200, deps)
        assert report.notes["halved"] is False
        assert math.isfinite(report.ratio)

    def test_not_a_calibration(self, deps):
        """Only calibration kinds go through the calibration entry point."""
        with pytest.raises(UnknownKind):
            verify_hardy_and_calibrations("th1", 1000, deps)

    def test_analysis_kind_mismatch(self, deps):
        """An analysis refuses kinds it does not implement."""
        with pytest.raises(UnknownKind):
            Theorem1Analysis(MomentSpec("th3", T=1000), deps)

    def test_registry(self, deps):
        """Every kind has a registered analysis."""
        specs = [MomentSpec("th1", T=100), MomentSpec("th2", N=100, A=1), MomentSpec("th3", T=100),
                 MomentSpec("th4", T=100, alpha=0), MomentSpec("hardy_z", T=100),
                 MomentSpec("second_moment", T=100), MomentSpec("z3_dyadic", T=100),
                 MomentSpec("j_dyadic", T=100), MomentSpec("i_dyadic", T=100),
                 MomentSpec("s1_bound", T=10, delta=0.5, c=1)]
        assert {spec.kind for spec in specs} == set(MomentKind)
        for spec in specs:
            assert spec.kind in analysis_for(spec, deps).kinds


class TestTheorem2:
    """Exact-sum identity, no quadrature."""

    def test_small_N(self, deps):
        """N = 100, A = 1: window sizes and a stable summation order."""
        report = verify_theorem2(100, 1, deps)
        assert report.notes["lhs_terms"] == 183
        assert report.notes["main_terms"] == 2
        assert report.notes["reversed_delta"] <= report.notes["reversed_limit"]
        assert abs(report.lhs) <= 10 * report.notes["trivial_bound"]
        assert report.consistent

    def test_deterministic(self, deps):
        """Repeated runs give identical lhs and main."""
        first = verify_theorem2(300, 2, deps)
        second = verify_theorem2(300, 2, deps)
        assert (first.lhs, first.main) == (second.lhs, second.main)

    def test_table_limit(self, deps):
        """N = 1000 reads d(k) beyond 2000."""
        with pytest.raises(TableTooSmall):
            verify_theorem2(1000, 1, deps)


class TestJAWindowSums:
    """Both sides of the J_A identity from T."""

    def test_windows(self, small_table):
        """At T = 200, A = 1 the windows are [180, 507] and [6, 7]."""
        sums = jA_window_sums(200, 1, small_table)
        assert sums.lhs_terms == 507 - 180 + 1
        assert sums.rhs_terms == 2
        assert sums.bound > 0 and sums.trivial_bound > 0

    def test_out_of_range(self, small_table):
        """At T = 1000 the cubic window passes the table."""
        with pytest.raises(OutOfRange):
            jA_window_sums(1000, 1, small_table)


class TestS1Bound:
    """The d3-weighted exponential sum."""

    def test_zero_phase_is_exact(self, small_table):
        """c = 0 reduces to the integer sum of d3 over [T1, 2 T1]."""
        report = check_S1_bound(500, 0.5, 0, small_table)
        assert report.lhs == complex(small_table.range_sum_d3(500, 1000))
        assert report.notes["terms"] == 501

    def test_triangle_inequality(self, small_table):
        """|sum| never exceeds sum d3."""
        report = check_S1_bound(800, 0.75, 1.3, small_table)
        assert abs(report.lhs) <= small_table.range_sum_d3(800, 1600)
        assert report.main == 0

    def test_capacity(self, small_table):
        """T1 above 10^6 is refused."""
        with pytest.raises(CapacityExceeded):
            check_S1_bound(10**6 + 1, 0.5, 1, small_table)
