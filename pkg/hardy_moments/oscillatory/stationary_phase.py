"""Stationary-phase estimate of int_a^b phi(x) e^{2 pi i f(x)} dx.

For one-signed f'' of size 1/A on [a, b] and a root c of f', the integral is

    e^{+-pi i/4} phi(c) e^{2 pi i f(c)} / sqrt|f''(c)|
        + O(H A / U) + O(H min(1/|f'(a)|, sqrt A)) + O(H min(1/|f'(b)|, sqrt A)),

the sign of the quarter turn following the sign of f''. The main term is
halved when c is an endpoint and absent when f' has no root on [a, b].
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import mpmath as mp
import numpy as np

from ..config import Config
from ..errors import ConditionViolation, DomainError
from ..numerics.precision import PrecisionContext, to_mpf
from .quadrature import VectorIntegrand

logger = logging.getLogger(__name__)

_CURVATURE_SAMPLES = 33


def _vectorized(fn: Callable) -> Callable:
    return np.vectorize(lambda x: complex(fn(mp.mpf(float(x)))), otypes=[np.complex128])


@dataclass(frozen=True)
class PhaseFunction:
    """Phase f with derivatives, as mpmath callables.

    Attributes:
        value: f.
        first: f'.
        second: f''.
        third: f''' when known.
        fourth: f'''' when known.
        array: Optional numpy version of f used for direct quadrature.
    """
    value: Callable
    first: Callable
    second: Callable
    third: Optional[Callable] = None
    fourth: Optional[Callable] = None
    array: Optional[Callable] = None

    @classmethod
    def quadratic(cls, curvature=1, center=0) -> "PhaseFunction":
        """f(x) = curvature (x - center)^2 / 2."""
        k, x0 = to_mpf(curvature), to_mpf(center)
        kf, x0f = float(k), float(x0)
        return cls(
            value=lambda x: k * (x - x0) ** 2 / 2,
            first=lambda x: k * (x - x0),
            second=lambda x: k + 0 * x,
            third=lambda x: mp.mpf(0),
            fourth=lambda x: mp.mpf(0),
            array=lambda x: kf * (x - x0f) ** 2 / 2,
        )


@dataclass(frozen=True)
class Amplitude:
    """Amplitude phi with two derivatives, as mpmath callables."""
    value: Callable
    first: Callable
    second: Callable
    array: Optional[Callable] = None

    @classmethod
    def constant(cls, height=1) -> "Amplitude":
        h = to_mpf(height)
        hf = float(h)
        return cls(lambda x: h, lambda x: mp.mpf(0), lambda x: mp.mpf(0),
                   lambda x: np.full(np.shape(x), hf))


@dataclass(frozen=True)
class PhaseProblem:
    """int_a^b phi e^{2 pi i f} together with the scales H, A_scale, U.

    Attributes:
        a: Left endpoint.
        b: Right endpoint.
        phase: Phase function.
        amplitude: Amplitude.
        H: Amplitude scale.
        A_scale: Curvature scale, |f''| ~ 1/A_scale.
        U: Length scale, b - a <= U and A_scale < U.
    """
    a: mp.mpf
    b: mp.mpf
    phase: PhaseFunction
    amplitude: Amplitude
    H: mp.mpf
    A_scale: mp.mpf
    U: mp.mpf

    def __post_init__(self):
        for name in ("a", "b", "H", "A_scale", "U"):
            object.__setattr__(self, name, to_mpf(getattr(self, name)))
        if not self.a < self.b:
            raise DomainError(f"phase problem needs a < b, got [{self.a}, {self.b}]")
        if not (self.H > 0 and 0 < self.A_scale < self.U):
            raise DomainError("phase problem needs H > 0 and 0 < A_scale < U")
        if self.b - self.a > self.U * (1 + mp.mpf(2) ** -40):
            raise DomainError(f"interval length {mp.nstr(self.b - self.a, 8)} exceeds U = {mp.nstr(self.U, 8)}")

    @classmethod
    def with_scales(cls, a, b, phase: PhaseFunction, amplitude: Amplitude, H=1) -> "PhaseProblem":
        """Derive A_scale = 1/|f''(midpoint)| and U = max(b - a, 2 A_scale)."""
        a, b = to_mpf(a), to_mpf(b)
        curvature = abs(phase.second((a + b) / 2))
        if curvature == 0:
            raise ConditionViolation("f'' vanishes at the midpoint")
        scale = 1 / curvature
        return cls(a, b, phase, amplitude, H, scale, max(b - a, 2 * scale))

    @classmethod
    def quadratic(cls, a, b, curvature=1, center=0, H=1) -> "PhaseProblem":
        """int_a^b H e^{pi i curvature (x - center)^2} dx."""
        return cls.with_scales(a, b, PhaseFunction.quadratic(curvature, center), Amplitude.constant(H), H)

    def check_curvature(self):
        """Sample f'' on [a, b] and confirm it is one-signed and of size 1/A_scale.

        Raises:
            ConditionViolation: If f'' vanishes, changes sign, or leaves
                [1/16, 16] / A_scale at a sample.
        """
        ratio = mp.mpf(Config.CURVATURE_RATIO)
        signs = set()
        for j in range(_CURVATURE_SAMPLES):
            x = self.a + (self.b - self.a) * j / (_CURVATURE_SAMPLES - 1)
            f2 = self.phase.second(x)
            if f2 == 0:
                raise ConditionViolation(f"f'' vanishes at x = {mp.nstr(x, 10)}")
            signs.add(f2 > 0)
            scaled = self.A_scale * abs(f2)
            if not 1 / ratio <= scaled <= ratio:
                raise ConditionViolation(
                    f"A_scale |f''| = {mp.nstr(scaled, 5)} at x = {mp.nstr(x, 10)} is outside [1/{ratio}, {ratio}]"
                )
        if len(signs) > 1:
            raise ConditionViolation("f'' changes sign on [a, b]")

    def integrand(self) -> VectorIntegrand:
        """phi e^{2 pi i f} as a float64 integrand for direct quadrature."""
        f = self.phase.array or _vectorized(self.phase.value)
        phi = self.amplitude.array or _vectorized(self.amplitude.value)
        first, second = self.phase.first, self.phase.second

        def rate(t):
            x = mp.mpf(float(t))
            return 2 * math.pi * (abs(float(first(x))) + math.sqrt(abs(float(second(x)))))

        return VectorIntegrand(lambda t: phi(t) * np.exp(2j * np.pi * f(t)), rate)


@dataclass(frozen=True)
class StationaryPhaseResult:
    """Main term, stationary point and error budget.

    Attributes:
        main: Main term, 0 when f' has no root.
        c: Stationary point, or None.
        error_budget: Sum of the three error terms with unit constants.
        halved: Whether c sits on an endpoint.
    """
    main: mp.mpc
    c: Optional[mp.mpf]
    error_budget: mp.mpf
    halved: bool


def _endpoint_term(problem: PhaseProblem, slope):
    root_a = mp.sqrt(problem.A_scale)
    if slope == 0:
        return problem.H * root_a
    return problem.H * min(1 / abs(slope), root_a)


def _locate_root(problem: PhaseProblem, f1a, f1b, tol_x):
    """Return (c, halved) for the root of f' on [a, b], or (None, False)."""
    first, second = problem.phase.first, problem.phase.second
    if abs(f1a) <= abs(second(problem.a)) * tol_x:
        return problem.a, True
    if abs(f1b) <= abs(second(problem.b)) * tol_x:
        return problem.b, True
    if (f1a > 0) == (f1b > 0):
        return None, False
    lo, hi, f_lo = problem.a, problem.b, f1a
    while hi - lo > tol_x:
        mid = (lo + hi) / 2
        f_mid = first(mid)
        if f_mid == 0:
            return mid, False
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return (lo + hi) / 2, False


def stationary_phase(problem: PhaseProblem, ctx: Optional[PrecisionContext] = None) -> StationaryPhaseResult:
    """Main term and error budget of a phase problem.

    The stationary point is found by bisection of f' down to 2^-60 (b - a).

    Args:
        problem: Phase problem.
        ctx: Precision context.

    Returns:
        StationaryPhaseResult.

    Raises:
        ConditionViolation: If f'' is not one-signed of size 1/A_scale.
    """
    ctx = ctx or PrecisionContext()
    with ctx.workprec(16):
        problem.check_curvature()
        tol_x = mp.ldexp(problem.b - problem.a, -Config.BISECTION_BITS)
        f1a = problem.phase.first(problem.a)
        f1b = problem.phase.first(problem.b)
        budget = (problem.H * problem.A_scale / problem.U
                  + _endpoint_term(problem, f1a) + _endpoint_term(problem, f1b))
        c, halved = _locate_root(problem, f1a, f1b, tol_x)
        if c is None:
            main = mp.mpc(0)
        else:
            f2 = problem.phase.second(c)
            turn = mp.expjpi(mp.mpf(1) / 4 if f2 > 0 else -mp.mpf(1) / 4)
            main = turn * problem.amplitude.value(c) * mp.expjpi(2 * problem.phase.value(c)) / mp.sqrt(abs(f2))
            if halved:
                main /= 2
    logger.debug("stationary phase on [%s, %s]: c=%s halved=%s",
                 mp.nstr(problem.a, 8), mp.nstr(problem.b, 8), None if c is None else mp.nstr(c, 12), halved)
    with ctx.workprec():
        return StationaryPhaseResult(+main, None if c is None else +c, +budget, halved)
