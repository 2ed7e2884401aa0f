"""Main terms of the single-k smoothed integrals arising from the AFE.

Every kind integrates rho(k / L(t)) e^{2 pi i f(t)} over [T, 2T] with

    f(t) = (sign beta / 2pi) (t log(t/2pi) - t - t log q),   L(t) = coef (t/2pi)^power,

where q = q(k) places the stationary point at t0 = 2 pi q. The main term is

    e^{+-pi i/4} rho(k / L(t0)) (2 pi sqrt(q) / sqrt(beta)) e^{-2 pi i sign beta q},

halved when t0 is an endpoint and zero when t0 lies outside [T, 2T].
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

import mpmath as mp
import numpy as np

from ..config import Config
from ..errors import DomainError, UnknownKind
from ..numerics.precision import PrecisionContext, to_mpf
from ..smoothing import DEFAULT_KERNEL, SmoothingKernel
from .stationary_phase import Amplitude, PhaseFunction, PhaseProblem

logger = logging.getLogger(__name__)


class PredictorKind(Enum):
    J1 = "J1"
    J2 = "J2"
    JA1 = "JA1"
    JA2_first = "JA2_first"
    JA2_second = "JA2_second"
    I1_th3 = "I1_th3"
    I2_th3 = "I2_th3"
    I1_th4_alpha = "I1_th4_alpha"
    I2_th4_alpha = "I2_th4_alpha"

    @classmethod
    def parse(cls, value) -> "PredictorKind":
        if isinstance(value, cls):
            return value
        for kind in cls:
            if str(value).lower() == kind.value.lower():
                return kind
        raise UnknownKind(f"unknown predictor kind {value!r}")


@dataclass(frozen=True)
class PredictorParams:
    """Outer parameters of the single-k integrals.

    Attributes:
        T: Left end of the dyadic range [T, 2T].
        A: Amplitude parameter of the J_A integrals.
        alpha: Exponent of chi^alpha for the fourth-moment kinds.
    """
    T: object
    A: object = 1
    alpha: object = 0

    def __post_init__(self):
        if float(self.T) <= 0 or float(self.A) <= 0:
            raise DomainError(f"predictor needs T > 0 and A > 0, got T={self.T}, A={self.A}")
        if not -0.5 < float(self.alpha) < 0.5:
            raise DomainError(f"alpha must lie in (-1/2, 1/2), got {self.alpha}")


@dataclass(frozen=True)
class _Family:
    sign: int
    beta: Callable
    centre: Callable
    coef: Callable
    power: Fraction


def _third(x):
    return mp.cbrt(x)


_FAMILIES = {
    PredictorKind.J1: _Family(1, lambda p: mp.mpf(1) / 2, lambda k, p, b: mp.mpf(k) ** 2,
                              lambda p: mp.mpf(2), Fraction(1)),
    PredictorKind.J2: _Family(-1, lambda p: mp.mpf(3) / 2, lambda k, p, b: _third(k) ** 2,
                              lambda p: mp.mpf(1) / 2, Fraction(1)),
    PredictorKind.JA1: _Family(1, lambda p: mp.mpf(1) / 2, lambda k, p, b: (k / to_mpf(p.A)) ** 2,
                               lambda p: 8 * to_mpf(p.A), Fraction(1, 2)),
    PredictorKind.JA2_first: _Family(-1, lambda p: mp.mpf(3) / 2, lambda k, p, b: _third(k * to_mpf(p.A)) ** 2,
                                     lambda p: 1 / (8 * to_mpf(p.A)), Fraction(3, 2)),
    PredictorKind.JA2_second: _Family(-1, lambda p: mp.mpf(3) / 2, lambda k, p, b: _third(k * to_mpf(p.A)) ** 2,
                                      lambda p: 4 / to_mpf(p.A), Fraction(3, 2)),
    PredictorKind.I1_th3: _Family(1, lambda p: mp.mpf(1), lambda k, p, b: mp.mpf(k),
                                  lambda p: mp.mpf(2), Fraction(3, 2)),
    PredictorKind.I2_th3: _Family(-1, lambda p: mp.mpf(2), lambda k, p, b: mp.sqrt(k),
                                  lambda p: mp.mpf(1) / 2, Fraction(3, 2)),
    PredictorKind.I1_th4_alpha: _Family(1, lambda p: mp.mpf(3) / 2 - to_mpf(p.alpha),
                                        lambda k, p, b: mp.power(k, 1 / b), lambda p: mp.mpf(2), Fraction(3, 2)),
    PredictorKind.I2_th4_alpha: _Family(-1, lambda p: mp.mpf(3) / 2 + to_mpf(p.alpha),
                                        lambda k, p, b: mp.power(k, 1 / b), lambda p: mp.mpf(2), Fraction(3, 2)),
}


@dataclass(frozen=True)
class _Resolved:
    sign: int
    beta: mp.mpf
    q: mp.mpf
    coef: mp.mpf
    power: mp.mpf


def _resolve(kind: PredictorKind, k: int, params: PredictorParams) -> _Resolved:
    family = _FAMILIES[kind]
    beta = family.beta(params)
    return _Resolved(family.sign, beta, family.centre(k, params, beta), family.coef(params),
                     mp.mpf(family.power.numerator) / family.power.denominator)


def _check_k(k) -> int:
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k}")
    return int(k)


def predict_afe_integral(kind, k: int, params: PredictorParams, kernel: SmoothingKernel = DEFAULT_KERNEL,
                         ctx: Optional[PrecisionContext] = None):
    """Main term of the k-th single-k integral over [T, 2T].

    Args:
        kind: PredictorKind or its name.
        k: Summation index, k >= 1.
        params: Outer parameters.
        kernel: Smoothing kernel.
        ctx: Precision context.

    Returns:
        mpc main term; 0 outside the resonance window.

    Raises:
        UnknownKind: For an unrecognised kind.
    """
    kind = PredictorKind.parse(kind)
    k = _check_k(k)
    ctx = ctx or PrecisionContext()
    with ctx.workprec(32):
        fam = _resolve(kind, k, params)
        T = to_mpf(params.T)
        t0 = 2 * mp.pi * fam.q
        slack = mp.mpf(Config.ENDPOINT_REL_TOL)
        if t0 < T * (1 - slack) or t0 > 2 * T * (1 + slack):
            return mp.mpc(0)
        halved = abs(t0 - T) <= slack * T or abs(t0 - 2 * T) <= 2 * slack * T
        weight = kernel.rho(k / (fam.coef * fam.q ** fam.power))
        if weight == 0:
            return mp.mpc(0)
        main = (mp.expjpi(fam.sign * mp.mpf(1) / 4) * weight * 2 * mp.pi * mp.sqrt(fam.q) / mp.sqrt(fam.beta)
                * mp.expjpi(-2 * fam.sign * fam.beta * fam.q))
        if halved:
            main /= 2
    with ctx.workprec():
        return +main


def _phase_function(fam: _Resolved) -> PhaseFunction:
    scale = fam.sign * fam.beta / (2 * mp.pi)
    log_q = mp.log(fam.q)
    scale_f, log_q_f = float(scale), float(log_q)
    two_pi_f = 2 * np.pi
    return PhaseFunction(
        value=lambda t: scale * (t * mp.log(t / (2 * mp.pi)) - t - t * log_q),
        first=lambda t: scale * (mp.log(t / (2 * mp.pi)) - log_q),
        second=lambda t: scale / t,
        third=lambda t: -scale / t ** 2,
        fourth=lambda t: 2 * scale / t ** 3,
        array=lambda t: scale_f * (t * np.log(t / two_pi_f) - t - t * log_q_f),
    )


def _amplitude(fam: _Resolved, k: int, kernel: SmoothingKernel) -> Amplitude:
    p = fam.power
    pf, coef_f = float(p), float(fam.coef)

    def u(t):
        return k / (fam.coef * (t / (2 * mp.pi)) ** p)

    def first(t):
        d1, _ = kernel.rho_derivatives(u(t))
        return d1 * (-p * u(t) / t)

    def second(t):
        d1, d2 = kernel.rho_derivatives(u(t))
        ut = u(t)
        return d2 * (p * ut / t) ** 2 + d1 * p * (p + 1) * ut / t ** 2

    return Amplitude(
        value=lambda t: kernel.rho(u(t)),
        first=first,
        second=second,
        array=lambda t: kernel.rho_array(k / (coef_f * (np.asarray(t) / (2 * np.pi)) ** pf)),
    )


def phase_problem(kind, k: int, params: PredictorParams, kernel: SmoothingKernel = DEFAULT_KERNEL,
                  ctx: Optional[PrecisionContext] = None) -> PhaseProblem:
    """The single-k integral over [T, 2T] as a generic PhaseProblem (H = 1)."""
    kind = PredictorKind.parse(kind)
    k = _check_k(k)
    ctx = ctx or PrecisionContext()
    with ctx.workprec(32):
        fam = _resolve(kind, k, params)
        T = to_mpf(params.T)
        return PhaseProblem.with_scales(T, 2 * T, _phase_function(fam), _amplitude(fam, k, kernel), 1)
