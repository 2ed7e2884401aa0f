"""Summatory divisor functions and their asymptotic main terms.

Each summatory op returns the exact sum, the predicted main term and the
residual exact - main. Window sums follow the convention that a term whose
index equals an integral window endpoint is halved; a one-point window with
lo = hi = integer is halved once.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import mpmath as mp
import numpy as np

from ..config import Config
from ..errors import DomainError, OutOfRange
from ..numerics.constants import constants
from ..numerics.precision import PrecisionContext, to_mpf
from .table import DivisorTable


@dataclass(frozen=True)
class SummatoryResult:
    """exact, main and residual = exact - main for one summatory query."""
    exact: object
    main: mp.mpf
    residual: mp.mpf


@dataclass(frozen=True)
class WindowEndpoints:
    """Integer range covered by a real window [lo, hi] and its halving flags."""
    first: int
    last: int
    halve_first: bool
    halve_last: bool

    @property
    def empty(self) -> bool:
        return self.last < self.first

    @property
    def halved(self) -> bool:
        return self.halve_first or self.halve_last


def _integrality_tol(x, ctx: PrecisionContext):
    return max(8 * ctx.eps_mpf, mp.mpf(Config.ENDPOINT_REL_TOL)) * max(1, abs(x))


def window_endpoints(lo, hi, ctx: Optional[PrecisionContext] = None) -> WindowEndpoints:
    """Resolve a real window [lo, hi] into integers, flagging integral endpoints.

    Endpoints count as integral within max(8 eps, 2^-48) relative tolerance,
    since window edges usually derive from binary64 parameters.

    Args:
        lo: Lower edge.
        hi: Upper edge.
        ctx: Precision context.

    Returns:
        WindowEndpoints.
    """
    ctx = ctx or PrecisionContext()
    with ctx.workprec(16):
        lo, hi = to_mpf(lo), to_mpf(hi)
        first = int(mp.ceil(lo - _integrality_tol(lo, ctx)))
        last = int(mp.floor(hi + _integrality_tol(hi, ctx)))
        halve_first = abs(first - lo) <= _integrality_tol(lo, ctx)
        halve_last = abs(last - hi) <= _integrality_tol(hi, ctx)
    if first == last and halve_first and halve_last:
        halve_last = False
    return WindowEndpoints(first, last, bool(halve_first), bool(halve_last))


def halved_window_sum(lo, hi, weight: Callable[[int], object], limit: Optional[int] = None,
                      ctx: Optional[PrecisionContext] = None):
    """sum' over lo <= k <= hi of weight(k), halving integral endpoint terms.

    The sum runs in ascending k.

    Args:
        lo: Lower window edge (>= 1).
        hi: Upper window edge.
        weight: Map k -> mpmath number.
        limit: Largest admissible k, if any.
        ctx: Precision context.

    Returns:
        Tuple (value, WindowEndpoints).

    Raises:
        OutOfRange: If the window starts below 1 or ends past limit.
    """
    ctx = ctx or PrecisionContext()
    ends = window_endpoints(lo, hi, ctx)
    if ends.first < 1 and not ends.empty:
        raise OutOfRange(f"window starts at {ends.first}, must be >= 1")
    if limit is not None and ends.last > limit:
        raise OutOfRange(f"window reaches k = {ends.last}, table limit is {limit}")
    with ctx.workprec(16):
        total = mp.mpf(0)
        for k in range(ends.first, ends.last + 1):
            term = weight(k)
            if (k == ends.first and ends.halve_first) or (k == ends.last and ends.halve_last):
                term = term / 2
            total += term
    with ctx.workprec():
        return +total, ends


def _check_x(x, table: DivisorTable) -> int:
    if int(x) != x or x < 1:
        raise DomainError(f"summatory functions take a positive integer x, got {x}")
    x = int(x)
    table.require(x, "summatory sum")
    return x


def sum_alt_d(x: int, table: DivisorTable, ctx: Optional[PrecisionContext] = None) -> SummatoryResult:
    """sum_{k <= x} (-1)^k d(k) against (x/2)(log x + 2 gamma - 1 - 2 log 2)."""
    ctx = ctx or PrecisionContext()
    x = _check_x(x, table)
    exact = int(table.prefix_alt_d[x])
    gamma = constants(ctx).euler_gamma
    with ctx.workprec():
        xx = mp.mpf(x)
        main = xx / 2 * (mp.log(xx) + 2 * gamma - 1 - 2 * mp.log(2))
        return SummatoryResult(exact, main, exact - main)


def _alt_sqrt_exact(x: int, table: DivisorTable) -> float:
    k = np.arange(1, x + 1, dtype=np.float64)
    signs = np.where(np.arange(1, x + 1) % 2 == 0, 1.0, -1.0)
    return math.fsum(signs * table.d[1:x + 1] * np.sqrt(k))


def sum_alt_d_sqrt(x: int, table: DivisorTable, ctx: Optional[PrecisionContext] = None) -> SummatoryResult:
    """sum_{k <= x} (-1)^k d(k) k^{1/2} against (1/3) x^{3/2}(log x + 2 gamma - 2 log 2 - 2/3).

    The exact sum is accumulated with correctly rounded binary64 terms and
    an exact float summation, so its absolute error is below 2^-52 sum |terms|.
    """
    ctx = ctx or PrecisionContext()
    x = _check_x(x, table)
    gamma = constants(ctx).euler_gamma
    with ctx.workprec():
        exact = mp.mpf(_alt_sqrt_exact(x, table))
        xx = mp.mpf(x)
        main = xx ** mp.mpf(1.5) / 3 * (mp.log(xx) + 2 * gamma - 2 * mp.log(2) - mp.mpf(2) / 3)
        return SummatoryResult(exact, main, exact - main)


def sum_d3(x: int, table: DivisorTable, ctx: Optional[PrecisionContext] = None) -> SummatoryResult:
    """sum_{n <= x} d3(n) against x((1/2) log^2 x + a1 log x + a2)."""
    ctx = ctx or PrecisionContext()
    x = _check_x(x, table)
    exact = int(table.prefix_d3[x])
    c = constants(ctx)
    with ctx.workprec():
        xx = mp.mpf(x)
        log_x = mp.log(xx)
        main = xx * (log_x ** 2 / 2 + c.a1 * log_x + c.a2)
        return SummatoryResult(exact, main, exact - main)


def sum_alt_d_sqrt_halved(lo, hi, table: DivisorTable, ctx: Optional[PrecisionContext] = None):
    """sum' over lo <= k <= hi of (-1)^k d(k) k^{1/2}.

    Args:
        lo: Lower edge, >= 1.
        hi: Upper edge, <= table.limit.
        table: Divisor table.
        ctx: Precision context.

    Returns:
        mpf value.

    Raises:
        OutOfRange: If the window leaves [1, table.limit].
    """
    value, _ = sum_alt_d_sqrt_window(lo, hi, table, ctx)
    return value


def sum_alt_d_sqrt_window(lo, hi, table: DivisorTable, ctx: Optional[PrecisionContext] = None):
    """Like sum_alt_d_sqrt_halved, also returning the WindowEndpoints."""
    if to_mpf(lo) < 1 or to_mpf(hi) < to_mpf(lo):
        raise OutOfRange(f"window [{lo}, {hi}] must satisfy 1 <= lo <= hi")

    def weight(k):
        sign = 1 if k % 2 == 0 else -1
        return sign * int(table.d[k]) * mp.sqrt(k)

    return halved_window_sum(lo, hi, weight, table.limit, ctx)


def sum_d3_window(lo, hi, table: DivisorTable, ctx: Optional[PrecisionContext] = None):
    """sum' over lo <= k <= hi of d3(k), returning (value, WindowEndpoints)."""
    return halved_window_sum(lo, hi, lambda k: mp.mpf(int(table.d3[k])), table.limit, ctx)
