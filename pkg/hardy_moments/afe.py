"""Smoothed approximate functional equation for zeta^k, k = 1, 2, 3.

    zeta^k(s) = sum_m rho(m/x) d_k(m) m^{-s} + chi^k(s) sum_m rho(m/y) d_k(m) m^{s-1} + E,

with x y = (t/2pi)^k. Because rho vanishes on [2, inf), both sums stop
exactly at m < 2x and m < 2y.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import mpmath as mp

from .config import Config
from .divisor.table import DivisorTable
from .errors import DomainError, TableTooSmall
from .numerics.chi import eval_chi
from .numerics.precision import ComplexArg, PrecisionContext, to_mpf
from .smoothing import DEFAULT_KERNEL, SmoothingKernel

logger = logging.getLogger(__name__)

_SPLIT_BITS = 192


@dataclass(frozen=True)
class AfeSplit:
    """Lengths x, y of the two AFE sums, with y derived so that x y = (t/2pi)^k.

    Attributes:
        k: Power of zeta, 1..3.
        x: Length of the first sum.
        t: Height on the line.
        y: (t/2pi)^k / x.
    """
    k: int
    x: mp.mpf
    t: mp.mpf
    y: mp.mpf = field(init=False)

    def __post_init__(self):
        if self.k not in (1, 2, 3):
            raise DomainError(f"AFE is implemented for k in 1..3, got {self.k}")
        with mp.workprec(_SPLIT_BITS):
            x, t = to_mpf(self.x), to_mpf(self.t)
            if t <= 0:
                raise DomainError(f"AFE needs t > 0, got {mp.nstr(t, 8)}")
            y = (t / (2 * mp.pi)) ** self.k / x
        if x < 1 or y < 1:
            raise DomainError(f"AFE split needs x, y >= 1, got x={mp.nstr(x, 8)}, y={mp.nstr(y, 8)}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_x(cls, k: int, t, x) -> "AfeSplit":
        return cls(k, x, t)

    @classmethod
    def balanced(cls, k: int, t, ratio=1) -> "AfeSplit":
        """x = ratio (t/2pi)^{k/2}, so ratio = 1 is the symmetric split x = y."""
        with mp.workprec(_SPLIT_BITS):
            tt = to_mpf(t)
            x = to_mpf(ratio) * (tt / (2 * mp.pi)) ** (mp.mpf(k) / 2)
        return cls(k, x, tt)

    @classmethod
    def standard(cls, k: int, t) -> "AfeSplit":
        """The splits used in the moment proofs: x = y for k = 1, x = 4y for k = 2, 3."""
        return cls.balanced(k, t, 1 if k == 1 else 2)

    @property
    def sum_lengths(self) -> tuple:
        """Largest m of each sum: m < 2x and m < 2y."""
        return (int(mp.ceil(2 * self.x)) - 1, int(mp.ceil(2 * self.y)) - 1)


@dataclass(frozen=True)
class AfeSums:
    """The two smoothed sums and chi^k(s); value = first + chi_k * second."""
    first: mp.mpc
    second: mp.mpc
    chi_k: mp.mpc

    @property
    def value(self):
        return self.first + self.chi_k * self.second


def _check_inputs(split: AfeSplit, sigma, table: Optional[DivisorTable]):
    sigma = to_mpf(sigma)
    if not (mp.mpf(1) / 2 <= sigma < 1):
        raise DomainError(f"AFE needs sigma in [1/2, 1), got {mp.nstr(sigma, 8)}")
    if split.t < Config.AFE_T0:
        raise DomainError(f"AFE needs t >= {Config.AFE_T0}, got {mp.nstr(split.t, 8)}")
    if split.k > 1:
        needed = max(split.sum_lengths)
        if table is None or table.limit < needed:
            have = 0 if table is None else table.limit
            raise TableTooSmall(f"AFE with k={split.k} needs d_k up to {needed}, table limit is {have}")


def afe_sums(split: AfeSplit, sigma, table: Optional[DivisorTable],
             kernel: SmoothingKernel = DEFAULT_KERNEL, ctx: Optional[PrecisionContext] = None) -> AfeSums:
    """Evaluate both smoothed sums of the AFE in ascending m.

    Args:
        split: Sum lengths and height.
        sigma: Real part of s, in [1/2, 1).
        table: Divisor table covering max(2x, 2y) when k > 1.
        kernel: Smoothing kernel.
        ctx: Precision context.

    Returns:
        AfeSums.

    Raises:
        DomainError: Outside sigma in [1/2, 1) or t >= 10.
        TableTooSmall: If the table is too short.
    """
    ctx = ctx or PrecisionContext()
    _check_inputs(split, sigma, table)
    s_arg = ComplexArg(sigma, split.t)
    chi = eval_chi(s_arg, ctx)
    len_x, len_y = split.sum_lengths
    d_k = (lambda m: 1) if split.k == 1 else (lambda m: table.d_k(split.k, m))
    with ctx.workprec(16):
        s = s_arg.to_mpc()
        first = mp.mpc(0)
        for m in range(1, len_x + 1):
            first += kernel.rho(m / split.x) * d_k(m) * mp.power(m, -s)
        second = mp.mpc(0)
        for m in range(1, len_y + 1):
            second += kernel.rho(m / split.y) * d_k(m) * mp.power(m, s - 1)
        chi_k = chi ** split.k
    logger.debug("AFE k=%d t=%s: %d + %d terms", split.k, mp.nstr(split.t, 8), len_x, len_y)
    with ctx.workprec():
        return AfeSums(+first, +second, +chi_k)


def zeta_power_afe(split: AfeSplit, sigma, table: Optional[DivisorTable],
                   kernel: SmoothingKernel = DEFAULT_KERNEL, ctx: Optional[PrecisionContext] = None):
    """zeta^k(sigma + it) from the smoothed approximate functional equation.

    Args:
        split: Sum lengths and height.
        sigma: Real part of s, in [1/2, 1).
        table: Divisor table (may be None for k = 1).
        kernel: Smoothing kernel.
        ctx: Precision context.

    Returns:
        mpc approximation of zeta^k(s).
    """
    ctx = ctx or PrecisionContext()
    sums = afe_sums(split, sigma, table, kernel, ctx)
    with ctx.workprec():
        return +sums.value


def afe_error_budget(split: AfeSplit, sigma) -> float:
    """t^{k(1-sigma)/3 - 1} + t^{k(1/2-sigma) - 2} y^sigma log^{k-1} t with unit constants."""
    t = float(split.t)
    y = float(split.y)
    k = split.k
    sigma = float(sigma)
    return t ** (k * (1 - sigma) / 3 - 1) + t ** (k * (0.5 - sigma) - 2) * y ** sigma * math.log(t) ** (k - 1)
