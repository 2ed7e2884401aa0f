"""The functional-equation factor chi, the Riemann-Siegel phase and Hardy's Z.

chi(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) is evaluated through
logarithms so that neither sin nor Gamma is formed at large |t|. On the
critical line the phase theta(t) fixes the branch of every power chi^alpha.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from ..config import Config
from ..errors import DomainError, ImaginaryResidueTooLarge
from .precision import ComplexArg, PrecisionContext, to_mpf
from .zeta import eval_zeta

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThetaPhase:
    """Riemann-Siegel phase at t, continuous from theta(0) = 0."""
    t: mp.mpf
    theta: mp.mpf


def _phase_bits(t) -> int:
    """Bits lost when exponentiating a phase of size ~ t log t."""
    t = abs(float(t))
    return int(t * math.log(t + 2.0) + 2).bit_length() + 8


def _log_sin_half_pi(z):
    """log sin(pi z / 2) for Im z > 0, free of overflow."""
    w = mp.pi * z / 2
    return -1j * w + mp.log(1 - mp.expj(2 * w)) - mp.log(2) + 1j * mp.pi / 2


def _chi_real(sigma: Fraction, ctx: PrecisionContext):
    if sigma.denominator == 1:
        n = sigma.numerator
        if n >= 1 and n % 2 == 1:
            raise DomainError(f"chi has a pole at s = {n}")
        if n <= 0 and n % 2 == 0:
            return mp.mpc(0)
        if n >= 2:
            # even n: sin and Gamma degenerate together, reflect
            return 1 / _chi_real(1 - sigma, ctx)
    s = mp.mpf(sigma.numerator) / sigma.denominator
    return mp.mpc(mp.power(2, s) * mp.power(mp.pi, s - 1) * mp.sinpi(s / 2) * mp.gamma(1 - s))


def eval_chi(s: ComplexArg, ctx: PrecisionContext):
    """Evaluate chi(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s).

    Args:
        s: Evaluation point.
        ctx: Precision context.

    Returns:
        mpc value of chi(s).

    Raises:
        DomainError: At the poles s = 1, 3, 5, ...
    """
    extra = _phase_bits(s.t) + 8
    with ctx.workprec(extra):
        if s.is_real:
            value = _chi_real(s.sigma, ctx)
        else:
            upper = s if s.t > 0 else s.conjugate()
            z = upper.to_mpc()
            log_chi = (
                z * mp.log(2)
                + (z - 1) * mp.log(mp.pi)
                + _log_sin_half_pi(z)
                + mp.loggamma(1 - z)
            )
            value = mp.exp(log_chi)
            if s.t < 0:
                value = mp.conj(value)
    with ctx.workprec():
        return +value


def eval_theta(t, ctx: PrecisionContext) -> ThetaPhase:
    """Riemann-Siegel theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi.

    The principal log-Gamma branch is continuous along 1/4 + it/2, so
    theta is continuous in t with theta(0) = 0.

    Args:
        t: Non-negative real.
        ctx: Precision context.

    Returns:
        ThetaPhase at t.

    Raises:
        DomainError: If t < 0.
    """
    with ctx.workprec(_phase_bits(t)):
        tt = to_mpf(t)
        if tt < 0:
            raise DomainError(f"theta is evaluated for t >= 0 only, got {mp.nstr(tt, 8)}")
        theta = mp.im(mp.loggamma(mp.mpc(0.25, tt / 2))) - tt / 2 * mp.log(mp.pi)
    with ctx.workprec():
        return ThetaPhase(+tt, +theta)


def _hardy_parts(t, ctx: PrecisionContext):
    """Return (Z(t), theta(t)) for t >= 0, checking that Z comes out real."""
    inner = ctx.with_extra(_phase_bits(t))
    phase = eval_theta(t, inner)
    zeta = eval_zeta(ComplexArg.critical(t), inner)
    with inner.workprec():
        rotated = mp.expj(phase.theta) * zeta
    residue = abs(mp.im(rotated))
    allowed = Config.IMAGINARY_TOL_FACTOR * ctx.eps_mpf * (1 + abs(phase.t)) * (1 + abs(rotated))
    if residue > allowed:
        raise ImaginaryResidueTooLarge(
            f"|Im e^(i theta) zeta| = {mp.nstr(residue, 5)} at t = {mp.nstr(phase.t, 12)} "
            f"exceeds {mp.nstr(allowed, 5)}"
        )
    with ctx.workprec():
        return +mp.re(rotated), +phase.theta


def eval_Z(t, ctx: PrecisionContext):
    """Hardy's function Z(t) = e^{i theta(t)} zeta(1/2 + it).

    Negative t is mapped through evenness Z(-t) = Z(t).

    Args:
        t: Real argument.
        ctx: Precision context.

    Returns:
        mpf value of Z(t).

    Raises:
        ImaginaryResidueTooLarge: If the rotated value is not real to tolerance.
    """
    with ctx.workprec(8):
        tt = abs(to_mpf(t))
    value, _ = _hardy_parts(tt, ctx)
    return value


def eval_chi_power(t, alpha, ctx: PrecisionContext):
    """chi^alpha(1/2 + it) on the branch e^{-2 i alpha theta(t)}.

    Args:
        t: Real, t >= 1.
        alpha: Real exponent.
        ctx: Precision context.

    Returns:
        Unimodular mpc value.

    Raises:
        DomainError: If t is below the supported floor.
    """
    if float(t) < Config.CHI_POWER_T0:
        raise DomainError(f"chi power needs t >= {Config.CHI_POWER_T0}, got {float(t)}")
    phase = eval_theta(t, ctx.with_extra(_phase_bits(t)))
    with ctx.workprec(_phase_bits(t)):
        value = mp.expj(-2 * to_mpf(alpha) * phase.theta)
    with ctx.workprec():
        return +value
