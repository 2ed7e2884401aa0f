"""One analysis per moment kind, and the verify_* entry points.

Integrals run through integrate_oscillatory on the Hardy-power integrands;
integrals from 0 split off [0, head_t0] and integrate it on a finer panel
grid. Divisor-weighted main terms come from the exact divisor table.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import mpmath as mp
import numpy as np

from ..config import Config
from ..divisor.summatory import sum_alt_d_sqrt_window, sum_d3_window, window_endpoints
from ..divisor.table import DivisorTable
from ..errors import UnknownKind
from ..numerics.constants import constants
from ..numerics.precision import PrecisionContext, to_mpf
from ..oscillatory.quadrature import integrate_oscillatory
from .integrands import HardyPowerIntegrand
from .moment_context import (
    MomentAnalysis,
    MomentDependencies,
    MomentKind,
    MomentReport,
    MomentSpec,
    MomentTerms,
    required_table_limit,
)

logger = logging.getLogger(__name__)


def _integral(deps: MomentDependencies, a: int, b: int, T1, T2, alpha: float = 0.0) -> tuple:
    """Integrate Z^a zeta^b chi^alpha over [T1, T2]; returns (value, notes)."""
    g = HardyPowerIntegrand(a, b, alpha, deps.backend, deps.ctx)
    pieces = []
    start = float(T1)
    if start < deps.head_t0:
        head_end = min(float(T2), deps.head_t0)
        pieces.append(integrate_oscillatory(g, T1, head_end, deps.tolerance(head_end - start), deps.ctx,
                                            oscillations=Config.HEAD_OSCILLATIONS))
        start = head_end
    if start < float(T2):
        pieces.append(integrate_oscillatory(g, start, T2, deps.tolerance(float(T2) - start), deps.ctx))
    value = pieces[0].value
    for piece in pieces[1:]:
        value = value + piece.value
    notes = {
        "err_est": math.fsum(p.err_est for p in pieces),
        "panels": sum(p.panels for p in pieces),
        "leaves": sum(p.leaves for p in pieces),
    }
    return value, notes


def _window(lo, hi, ctx: PrecisionContext) -> range:
    """Integers in [lo, hi], endpoints included."""
    ends = window_endpoints(lo, hi, ctx)
    return range(max(ends.first, 1), ends.last + 1)


def _ordered_sum(indices, term, reverse: bool = False):
    total = mp.mpc(0)
    for k in (reversed(indices) if reverse else indices):
        total += term(k)
    return total


# -- integral kinds ------------------------------------------------------------------


class Theorem1Analysis(MomentAnalysis):
    """int_0^T Z zeta against (2 sqrt2 pi / 3) e^{pi i/8} (T/2pi)^{3/4} (L/2 + 2 gamma - 2 log 2 - 2/3)."""
    kinds = (MomentKind.TH1,)

    def evaluate(self) -> MomentTerms:
        ctx = self.deps.ctx
        lhs, notes = _integral(self.deps, 1, 1, 0, self.spec.T)
        gamma = constants(ctx).euler_gamma
        with ctx.workprec(16):
            T = to_mpf(self.spec.T)
            log_ratio = mp.log(T / (2 * mp.pi))
            main = (2 * mp.sqrt(2) * mp.pi / 3 * mp.expjpi(mp.mpf(1) / 8) * (T / (2 * mp.pi)) ** mp.mpf(0.75)
                    * (log_ratio / 2 + 2 * gamma - 2 * mp.log(2) - mp.mpf(2) / 3))
            bound = mp.sqrt(T) * mp.log(T) ** 2
        return MomentTerms(lhs, main, bound, notes)


class JDyadicAnalysis(MomentAnalysis):
    """int_T^{2T} Z zeta against 2 sqrt2 pi e^{pi i/8} sum' (-1)^k d(k) k^{1/2}."""
    kinds = (MomentKind.J_DYADIC,)

    def evaluate(self) -> MomentTerms:
        ctx = self.deps.ctx
        table = self.deps.require_table(required_table_limit(self.spec))
        T = self.spec.T
        lhs, notes = _integral(self.deps, 1, 1, T, 2 * T)
        with ctx.workprec(16):
            TT = to_mpf(T)
            total, ends = sum_alt_d_sqrt_window(mp.sqrt(TT / (2 * mp.pi)), mp.sqrt(TT / mp.pi), table, ctx)
            main = 2 * mp.sqrt(2) * mp.pi * mp.expjpi(mp.mpf(1) / 8) * total
            bound = mp.sqrt(TT) * mp.log(TT)
        notes["halved"] = ends.halved
        return MomentTerms(lhs, main, bound, notes)


class Theorem3Analysis(MomentAnalysis):
    """int_0^T Z^2 zeta against T (L^2/2 + a1 L + a2)."""
    kinds = (MomentKind.TH3,)

    def evaluate(self) -> MomentTerms:
        ctx = self.deps.ctx
        lhs, notes = _integral(self.deps, 2, 1, 0, self.spec.T)
        c = constants(ctx)
        with ctx.workprec(16):
            T = to_mpf(self.spec.T)
            log_ratio = mp.log(T / (2 * mp.pi))
            main = T * (log_ratio ** 2 / 2 + c.a1 * log_ratio + c.a2)
            bound = T ** (mp.mpf(0.75) + self.spec.eps_slack)
        return MomentTerms(lhs, main, bound, notes)


class IDyadicAnalysis(MomentAnalysis):
    """int_T^{2T} Z^2 zeta against 2 pi sum' d3(k) over [T/2pi, T/pi]."""
    kinds = (MomentKind.I_DYADIC,)

    def evaluate(self) -> MomentTerms:
        ctx = self.deps.ctx
        table = self.deps.require_table(required_table_limit(self.spec))
        T = self.spec.T
        lhs, notes = _integral(self.deps, 2, 1, T, 2 * T)
        with ctx.workprec(16):
            TT = to_mpf(T)
            total, ends = sum_d3_window(TT / (2 * mp.pi), TT / mp.pi, table, ctx)
            main = 2 * mp.pi * total
            bound = TT ** mp.mpf(0.75) * mp.log(TT) ** 2
        notes["halved"] = ends.halved
        return MomentTerms(lhs, main, bound, notes)


class Theorem4Analysis(MomentAnalysis):
    """|int_T^{2T} Z^3 chi^alpha| against T^{1 -+ alpha/6 + eps}."""
    kinds = (MomentKind.TH4,)

    def evaluate(self) -> MomentTerms:
        T, alpha = self.spec.T, float(self.spec.alpha)
        lhs, notes = _integral(self.deps, 3, 0, T, 2 * T, alpha)
        with self.deps.ctx.workprec(16):
            exponent = 1 - abs(alpha) / 6 + self.spec.eps_slack
            bound = to_mpf(T) ** exponent
        notes["branch"] = "alpha>=0" if alpha >= 0 else "alpha<0"
        return MomentTerms(lhs, mp.mpc(0), bound, notes)


class CalibrationAnalysis(MomentAnalysis):
    """The classical first, second and dyadic third moments of Z."""
    kinds = (MomentKind.HARDY_Z, MomentKind.SECOND_MOMENT, MomentKind.Z3_DYADIC)

    def evaluate(self) -> MomentTerms:
        kind = self.spec.kind
        ctx = self.deps.ctx
        T = self.spec.T
        eps = self.spec.eps_slack
        if kind is MomentKind.HARDY_Z:
            lhs, notes = _integral(self.deps, 1, 0, 0, T)
            with ctx.workprec(16):
                return MomentTerms(lhs, mp.mpc(0), to_mpf(T) ** (mp.mpf(1) / 4 + eps), notes)
        if kind is MomentKind.SECOND_MOMENT:
            lhs, notes = _integral(self.deps, 2, 0, 0, T)
            gamma = constants(ctx).euler_gamma
            with ctx.workprec(16):
                TT = to_mpf(T)
                main = TT * mp.log(TT) + (2 * gamma - 1 - mp.log(2 * mp.pi)) * TT
                return MomentTerms(lhs, main, TT ** (mp.mpf(1) / 3 + eps), notes)
        table = self.deps.require_table(required_table_limit(self.spec))
        lhs, notes = _integral(self.deps, 3, 0, T, 2 * T)
        with ctx.workprec(16):
            TT = to_mpf(T)

            def weight(n):
                return int(table.d3[n]) * mp.power(n, -mp.mpf(1) / 6) * mp.cospi(3 * mp.cbrt(n) ** 2 + mp.mpf(1) / 8)

            # plain sum: no endpoint halving in the cubic-moment formula
            window = _window((TT / (2 * mp.pi)) ** mp.mpf(1.5), (TT / mp.pi) ** mp.mpf(1.5), ctx)
            _require_windows(table, window)
            main = 2 * mp.pi * mp.sqrt(mp.mpf(2) / 3) * _ordered_sum(window, weight)
            notes["terms"] = len(window)
            return MomentTerms(lhs, main, TT ** (mp.mpf(3) / 4 + eps), notes)


# -- exact-sum kinds -----------------------------------------------------------------


@dataclass(frozen=True)
class JAWindowSums:
    """Both sides of the identity between the two evaluations of int_T^{2T} Z zeta A^{it}.

    Attributes:
        lhs: sum d(k) k^{-1/6} e^{3 pi i (Ak)^{2/3}} over the cubic window.
        rhs: sqrt3 A^{-4/3} sum d(k) k^{1/2} e^{-pi i (k/A)^2} over the square-root window.
        bound: Error-term shape with unit constants.
        trivial_bound: Size of either side from the trivial estimate.
        lhs_terms: Number of terms on the left.
        rhs_terms: Number of terms on the right.
    """
    lhs: mp.mpc
    rhs: mp.mpc
    bound: mp.mpf
    trivial_bound: mp.mpf
    lhs_terms: int
    rhs_terms: int


def _ja_sides(cubic: range, root: range, A, table: DivisorTable, reverse: bool = False):
    A = to_mpf(A)
    sixth = -mp.mpf(1) / 6

    def cubic_term(k):
        return int(table.d[k]) * mp.power(k, sixth) * mp.expjpi(3 * mp.cbrt(A * k) ** 2)

    def root_term(k):
        return int(table.d[k]) * mp.sqrt(k) * mp.expjpi(-(k / A) ** 2)

    lhs = _ordered_sum(cubic, cubic_term, reverse)
    rhs = mp.sqrt(3) * mp.power(A, -mp.mpf(4) / 3) * _ordered_sum(root, root_term, reverse)
    return lhs, rhs


def _require_windows(table: DivisorTable, *windows):
    for window in windows:
        if len(window):
            table.require(window[-1], "exponential sum")


def jA_window_sums(T, A, table: DivisorTable, ctx: Optional[PrecisionContext] = None,
                   eps_slack: float = Config.EPS_SLACK) -> JAWindowSums:
    """Both sides of the J_A identity for the windows attached to height T.

    The cubic window is (1/A)(T/2pi)^{3/2} <= k <= (1/A)(T/pi)^{3/2}, the
    square-root window A(T/2pi)^{1/2} <= k <= A(T/pi)^{1/2}.

    Args:
        T: Height.
        A: Amplitude parameter.
        table: Divisor table covering both windows.
        ctx: Precision context.
        eps_slack: Exponent slack of the bound.

    Returns:
        JAWindowSums.

    Raises:
        OutOfRange: If a window passes the table limit.
    """
    ctx = ctx or PrecisionContext()
    with ctx.workprec(16):
        TT, AA = to_mpf(T), to_mpf(A)
        low, high = TT / (2 * mp.pi), TT / mp.pi
        cubic = _window(low ** mp.mpf(1.5) / AA, high ** mp.mpf(1.5) / AA, ctx)
        root = _window(AA * mp.sqrt(low), AA * mp.sqrt(high), ctx)
        _require_windows(table, cubic, root)
        lhs, rhs = _ja_sides(cubic, root, AA, table)
        bound = (AA ** (-mp.mpf(5) / 6) * TT ** (mp.mpf(3) / 4 + eps_slack)
                 + AA ** (mp.mpf(1) / 6) * TT ** (mp.mpf(1) / 4 + eps_slack)
                 + AA ** (-mp.mpf(1) / 3) * TT ** (mp.mpf(1) / 3 + eps_slack))
        trivial = AA ** (mp.mpf(1) / 6) * TT ** mp.mpf(0.75) * mp.log(TT)
    with ctx.workprec():
        return JAWindowSums(+lhs, +rhs, +bound, +trivial, len(cubic), len(root))


class Theorem2Analysis(MomentAnalysis):
    """sum_{N <= k <= 2 sqrt2 N} d(k) k^{-1/6} e^{3 pi i (Ak)^{2/3}} against its dual sum."""
    kinds = (MomentKind.TH2,)

    def evaluate(self) -> MomentTerms:
        ctx = self.deps.ctx
        N, eps = self.spec.N, self.spec.eps_slack
        table = self.deps.require_table(required_table_limit(self.spec))
        with ctx.workprec(16):
            A = to_mpf(self.spec.A)
            NN = mp.mpf(N)
            start = mp.power(A, mp.mpf(4) / 3) * mp.cbrt(NN)
            cubic = _window(NN, 2 * mp.sqrt(2) * NN, ctx)
            root = _window(start, mp.sqrt(2) * start, ctx)
            lhs, main = _ja_sides(cubic, root, A, table)
            reversed_lhs, _ = _ja_sides(cubic, root, A, table, reverse=True)
            log_n = mp.log(NN)
            bound = (mp.power(A, -mp.mpf(1) / 3) * NN ** (mp.mpf(1) / 2 + eps)
                     + mp.cbrt(A) * NN ** (mp.mpf(1) / 6) * log_n
                     + mp.power(A, -mp.mpf(1) / 9) * NN ** (mp.mpf(2) / 9 + eps))
            trivial = mp.power(A, mp.mpf(2) / 3) * mp.sqrt(NN) * log_n
            notes = {
                "trivial_bound": float(trivial),
                "lhs_over_trivial": float(abs(lhs) / trivial),
                "reversed_delta": float(abs(lhs - reversed_lhs)),
                "reversed_limit": float(10 * ctx.eps_mpf * max(1, len(cubic))),
                "lhs_terms": len(cubic),
                "main_terms": len(root),
            }
        logger.debug("th2 N=%d A=%s: %d + %d terms", N, self.spec.A, len(cubic), len(root))
        return MomentTerms(lhs, main, bound, notes)


class S1BoundAnalysis(MomentAnalysis):
    """sum_{T1 <= n <= 2 T1} d3(n) e^{2 pi i c n^delta} against the triple-sum bound."""
    kinds = (MomentKind.S1_BOUND,)

    def evaluate(self) -> MomentTerms:
        table = self.deps.require_table(required_table_limit(self.spec))
        T1 = int(self.spec.T)
        delta, c = float(self.spec.delta), float(self.spec.c)
        n = np.arange(T1, 2 * T1 + 1, dtype=np.float64)
        weights = table.d3[T1:2 * T1 + 1].astype(np.float64)
        if c == 0:
            terms = weights.astype(np.complex128)
        else:
            terms = weights * np.exp(2j * np.pi * np.mod(c * n ** delta, 1.0))
        lhs = complex(math.fsum(terms.real), math.fsum(terms.imag))
        eps = self.spec.eps_slack
        bound = T1 ** (1 + eps) * (T1 ** ((delta - 4 / 3) / 4) + T1 ** (-1 / 6) + T1 ** (-delta))
        return MomentTerms(lhs, 0j, bound, {"terms": int(n.size)})


_ANALYSES = {}
for _cls in (Theorem1Analysis, JDyadicAnalysis, Theorem2Analysis, Theorem3Analysis, IDyadicAnalysis,
             Theorem4Analysis, CalibrationAnalysis, S1BoundAnalysis):
    for _kind in _cls.kinds:
        _ANALYSES[_kind] = _cls


def analysis_for(spec: MomentSpec, deps: MomentDependencies) -> MomentAnalysis:
    try:
        cls = _ANALYSES[spec.kind]
    except KeyError:
        raise UnknownKind(f"no analysis registered for {spec.kind}")
    return cls(spec, deps)


def run_moment(spec: MomentSpec, deps: MomentDependencies) -> MomentReport:
    """Run the analysis registered for spec.kind."""
    logger.debug("running %s", spec)
    return analysis_for(spec, deps).analyse()


def _deps(deps: Optional[MomentDependencies]) -> MomentDependencies:
    return deps if deps is not None else MomentDependencies()


def verify_theorem1(T, deps: Optional[MomentDependencies] = None) -> MomentReport:
    return run_moment(MomentSpec(MomentKind.TH1, T=T), _deps(deps))


def verify_J_dyadic(T, deps: MomentDependencies) -> MomentReport:
    return run_moment(MomentSpec(MomentKind.J_DYADIC, T=T), deps)


def verify_theorem2(N: int, A, deps: MomentDependencies, eps_slack: float = Config.EPS_SLACK) -> MomentReport:
    return run_moment(MomentSpec(MomentKind.TH2, N=N, A=A, eps_slack=eps_slack), deps)


def verify_theorem3(T, deps: Optional[MomentDependencies] = None, eps_slack: float = Config.EPS_SLACK) -> MomentReport:
    return run_moment(MomentSpec(MomentKind.TH3, T=T, eps_slack=eps_slack), _deps(deps))


def verify_I_dyadic(T, deps: MomentDependencies) -> MomentReport:
    return run_moment(MomentSpec(MomentKind.I_DYADIC, T=T), deps)


def verify_theorem4(T, alpha, deps: Optional[MomentDependencies] = None,
                    eps_slack: float = Config.EPS_SLACK) -> MomentReport:
    return run_moment(MomentSpec(MomentKind.TH4, T=T, alpha=alpha, eps_slack=eps_slack), _deps(deps))


def verify_hardy_and_calibrations(kind, T, deps: Optional[MomentDependencies] = None,
                                  eps_slack: float = Config.EPS_SLACK) -> MomentReport:
    """Run HARDY_Z, SECOND_MOMENT or Z3_DYADIC at height T.

    Raises:
        UnknownKind: For any other kind.
    """
    kind = MomentKind.parse(kind)
    if not kind.is_calibration:
        raise UnknownKind(f"{kind.value} is not a calibration kind")
    return run_moment(MomentSpec(kind, T=T, eps_slack=eps_slack), _deps(deps))


def check_S1_bound(T1: int, delta, c, table: DivisorTable, eps_slack: float = Config.EPS_SLACK) -> MomentReport:
    """Evaluate the d3-weighted exponential sum over [T1, 2 T1] against its bound.

    Raises:
        CapacityExceeded: If T1 exceeds the cost guard.
        DomainError: If delta is 0 or 1.
    """
    spec = MomentSpec(MomentKind.S1_BOUND, T=T1, delta=delta, c=c, eps_slack=eps_slack)
    return run_moment(spec, MomentDependencies(table=table))
