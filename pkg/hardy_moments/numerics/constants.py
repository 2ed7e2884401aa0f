"""Euler's constant, the first Stieltjes constant and friends.

The values come from mpmath and are cross-checked against independent
Euler-Maclaurin expansions of the harmonic-type sums that define them.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp

from ..config import Config
from ..errors import PrecisionExhausted
from .precision import PrecisionContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Constants:
    """Constants entering the moment main terms.

    Attributes:
        euler_gamma: Euler's constant gamma.
        stieltjes_1: First Stieltjes constant gamma_1.
        pi: pi.
        log_2pi: log(2 pi).
    """
    euler_gamma: mp.mpf
    stieltjes_1: mp.mpf
    pi: mp.mpf
    log_2pi: mp.mpf

    @property
    def a1(self):
        """Linear coefficient 3 gamma - 1 of the d3 summatory polynomial."""
        return 3 * self.euler_gamma - 1

    @property
    def a2(self):
        """Constant coefficient 3 gamma_1 + 3 gamma^2 - 3 gamma + 1."""
        g = self.euler_gamma
        return 3 * self.stieltjes_1 + 3 * g * g - 3 * g + 1


def _em_tail(prec_bits, coefficient):
    """Sum B_{2j} * coefficient(j) until terms drop below 2^-(prec_bits+8)."""
    floor = mp.ldexp(mp.mpf(1), -(prec_bits + 8))
    total = mp.mpf(0)
    last = None
    for j in range(1, 4 * prec_bits):
        term = mp.bernoulli(2 * j) * coefficient(j)
        size = abs(term)
        if size < floor:
            return total
        if last is not None and size > last:
            break
        total += term
        last = size
    raise PrecisionExhausted(f"Euler-Maclaurin series for constants stalled at {prec_bits} bits")


def euler_gamma_series(prec_bits: int):
    """gamma = H_n - log n - 1/(2n) + sum_j B_{2j} / (2j n^{2j})."""
    n = max(64, prec_bits)
    with mp.workprec(prec_bits + 20):
        harmonic = mp.fsum(mp.mpf(1) / k for k in range(1, n + 1))
        nn = mp.mpf(n)
        tail = _em_tail(prec_bits, lambda j: 1 / (2 * j * nn ** (2 * j)))
        return harmonic - mp.log(nn) - 1 / (2 * nn) + tail


def stieltjes_1_series(prec_bits: int):
    """gamma_1 from the Euler-Maclaurin expansion of sum_{k<=n} log k / k."""
    n = max(64, prec_bits)
    with mp.workprec(prec_bits + 20):
        nn = mp.mpf(n)
        log_n = mp.log(nn)
        partial = mp.fsum(mp.log(k) / k for k in range(2, n + 1))
        odd_harmonic = {}

        def harmonic(m):
            if m not in odd_harmonic:
                odd_harmonic[m] = mp.fsum(mp.mpf(1) / i for i in range(1, m + 1))
            return odd_harmonic[m]

        tail = _em_tail(prec_bits, lambda j: (log_n - harmonic(2 * j - 1)) / (2 * j * nn ** (2 * j)))
        return partial - log_n ** 2 / 2 - log_n / (2 * nn) + tail


@lru_cache(maxsize=8)
def _constants_at(prec_bits: int) -> Constants:
    with mp.workprec(prec_bits + 10):
        gamma = +mp.euler
        gamma_1 = mp.stieltjes(1)
        pi = +mp.pi
        log_2pi = mp.log(2 * mp.pi)
    tolerance = mp.ldexp(mp.mpf(1), -(prec_bits - Config.GUARD_BITS))
    with mp.workprec(prec_bits + 10):
        gamma_err = abs(euler_gamma_series(prec_bits) - gamma)
        gamma_1_err = abs(stieltjes_1_series(prec_bits) - gamma_1)
    if gamma_err > tolerance or gamma_1_err > tolerance:
        raise PrecisionExhausted(
            f"constant validation failed at {prec_bits} bits: "
            f"|d gamma|={mp.nstr(gamma_err, 5)}, |d gamma_1|={mp.nstr(gamma_1_err, 5)}"
        )
    logger.debug("constants validated at %d bits", prec_bits)
    return Constants(gamma, gamma_1, pi, log_2pi)


def constants(ctx: PrecisionContext) -> Constants:
    """Return validated constants accurate to at least ctx's precision.

    Values are computed once at max(ctx.prec_bits, 256) bits and cached.

    Args:
        ctx: Precision context.

    Returns:
        Constants instance.
    """
    return _constants_at(max(ctx.prec_bits, Config.CONSTANTS_PREC_BITS))
