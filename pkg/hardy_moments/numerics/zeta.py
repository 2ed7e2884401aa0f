"""Riemann zeta by Euler-Maclaurin summation with an explicit remainder bound."""

import logging
import math

import mpmath as mp

from ..config import Config
from ..errors import DomainError, PoleAtOne, PrecisionExhausted
from .precision import ComplexArg, PrecisionContext

logger = logging.getLogger(__name__)


def truncation_length(s: ComplexArg, ctx: PrecisionContext) -> int:
    """Number N of explicit terms, chosen so the Bernoulli tail shrinks geometrically."""
    t = abs(float(s.t))
    sigma = abs(float(s.sigma))
    return max(8, math.ceil((t + sigma + ctx.prec_bits + 2) / math.pi))


def _extra_bits(s: ComplexArg, n_terms: int) -> int:
    growth = max(0.0, 1.0 - float(s.sigma)) * math.log2(n_terms)
    return n_terms.bit_length() + math.ceil(growth) + 8


def eval_zeta(s: ComplexArg, ctx: PrecisionContext):
    """Evaluate zeta(s).

    zeta(s) = sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2
              + sum_{k=1}^{M} B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1} + R_M,
    with |R_M| <= |s+2M+1| / (sigma+2M+1) * |T_{M+1}| once sigma + 2M + 1 > 0.

    Args:
        s: Evaluation point.
        ctx: Precision context.

    Returns:
        mpc value of zeta(s) rounded to ctx.prec_bits.

    Raises:
        PoleAtOne: If s = 1.
        DomainError: If |t| exceeds the supported range.
        PrecisionExhausted: If the remainder bound does not reach eps.
    """
    if s.sigma == 1 and s.t == 0:
        raise PoleAtOne("zeta has a pole at s = 1")
    if abs(s.t) > Config.T_MAX:
        raise DomainError(f"|t| = {float(abs(s.t)):.6g} exceeds the supported range {Config.T_MAX:.0e}")

    n_terms = truncation_length(s, ctx)
    extra = _extra_bits(s, n_terms)
    max_terms = 2 * ctx.prec_bits + 64
    sigma = float(s.sigma)

    with ctx.workprec(extra):
        z = s.to_mpc()
        target = ctx.eps_mpf / 4
        head = mp.fsum(mp.power(n, -z) for n in range(1, n_terms))
        big_n = mp.mpf(n_terms)
        n_pow = mp.power(big_n, -z)
        tail = big_n * n_pow / (z - 1) + n_pow / 2

        poch = z                      # s(s+1)...(s+2k-2)
        scale = n_pow / big_n         # N^{-s-2k+1}
        n_sq = big_n * big_n
        fact = mp.mpf(2)              # (2k)!
        term = mp.bernoulli(2) / fact * poch * scale
        converged = False
        for k in range(1, max_terms + 1):
            tail += term
            poch *= (z + 2 * k - 1) * (z + 2 * k)
            scale /= n_sq
            fact *= (2 * k + 1) * (2 * k + 2)
            term = mp.bernoulli(2 * k + 2) / fact * poch * scale
            denominator = sigma + 2 * k + 1
            if denominator > 0 and abs(z + 2 * k + 1) / denominator * abs(term) <= target:
                converged = True
                break
        if not converged:
            raise PrecisionExhausted(
                f"Euler-Maclaurin tail for s={float(s.sigma)}+{float(s.t)}i did not reach "
                f"2^-{ctx.prec_bits - ctx.guard_bits} within {max_terms} terms"
            )
        value = head + tail

    logger.debug("zeta(%s+%si): N=%d, M=%d, extra=%d bits", float(s.sigma), float(s.t), n_terms, k, extra)
    with ctx.workprec():
        return +value
