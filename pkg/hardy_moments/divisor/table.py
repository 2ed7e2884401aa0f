"""Sieved divisor functions d(n) and d3(n) with prefix sums."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..config import Config
from ..errors import CapacityExceeded, DomainError, OutOfRange

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DivisorTable:
    """Exact d(n) and d3(n) for 1 <= n <= limit.

    Index 0 of every array is a zero placeholder so that d[n] is d(n).

    Attributes:
        limit: Largest n covered.
        d: int32 array of d(n).
        d3: int32 array of d3(n).
    """
    limit: int
    d: np.ndarray
    d3: np.ndarray
    prefix_d: np.ndarray = field(init=False, repr=False)
    prefix_d3: np.ndarray = field(init=False, repr=False)
    prefix_alt_d: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.d.shape != (self.limit + 1,) or self.d3.shape != (self.limit + 1,):
            raise DomainError(f"divisor arrays must have length limit + 1 = {self.limit + 1}")
        signs = np.where(np.arange(self.limit + 1) % 2 == 0, 1, -1).astype(np.int64)
        object.__setattr__(self, "prefix_d", np.cumsum(self.d, dtype=np.int64))
        object.__setattr__(self, "prefix_d3", np.cumsum(self.d3, dtype=np.int64))
        object.__setattr__(self, "prefix_alt_d", np.cumsum(signs * self.d, dtype=np.int64))

    def __getstate__(self):
        return {"limit": self.limit, "d": self.d, "d3": self.d3}

    def __setstate__(self, state):
        object.__setattr__(self, "limit", state["limit"])
        object.__setattr__(self, "d", state["d"])
        object.__setattr__(self, "d3", state["d3"])
        self.__post_init__()

    def covers(self, n) -> bool:
        return n <= self.limit

    def require(self, n, what: str = "query"):
        """Raise OutOfRange unless n <= limit."""
        if n > self.limit:
            raise OutOfRange(f"{what} reaches n = {n}, table limit is {self.limit}")

    def d_k(self, k: int, n: int) -> int:
        """d_k(n) for k in {1, 2, 3}."""
        if k == 1:
            return 1
        self.require(n)
        if k == 2:
            return int(self.d[n])
        if k == 3:
            return int(self.d3[n])
        raise DomainError(f"divisor functions d_k are tabulated for k in 1..3, got {k}")

    def range_sum_d(self, lo: int, hi: int) -> int:
        """sum_{lo <= n <= hi} d(n)."""
        self.require(hi)
        return int(self.prefix_d[hi] - self.prefix_d[max(lo, 1) - 1]) if hi >= lo else 0

    def range_sum_d3(self, lo: int, hi: int) -> int:
        """sum_{lo <= n <= hi} d3(n)."""
        self.require(hi)
        return int(self.prefix_d3[hi] - self.prefix_d3[max(lo, 1) - 1]) if hi >= lo else 0


def _sieve_divisor_counts(n_max: int) -> np.ndarray:
    """d(n) by pairing each divisor with its cofactor; O(N log N) work in 2 sqrt(N) slices."""
    d = np.zeros(n_max + 1, dtype=np.int32)
    root = math.isqrt(n_max)
    for k in range(1, root + 1):
        d[k::k] += 1
    for q in range(1, n_max // (root + 1) + 1):
        # divisors k > root: positions q*k for root < k <= n_max // q
        d[q * (root + 1): q * (n_max // q) + 1: q] += 1
    return d


def _convolve_with_one(d: np.ndarray) -> np.ndarray:
    """d3(n) = sum_{m | n} d(m), split as in the divisor sieve."""
    n_max = d.size - 1
    d3 = np.zeros(n_max + 1, dtype=np.int32)
    root = math.isqrt(n_max)
    for m in range(1, root + 1):
        d3[m::m] += d[m]
    for q in range(1, n_max // (root + 1) + 1):
        top = n_max // q
        d3[q * (root + 1): q * top + 1: q] += d[root + 1: top + 1]
    return d3


def build_table(n_max: int) -> DivisorTable:
    """Sieve d(n) and d3(n) for n <= n_max.

    Args:
        n_max: Table limit, 1 <= n_max <= 10^8.

    Returns:
        DivisorTable.

    Raises:
        CapacityExceeded: Above the memory guard.
    """
    n_max = int(n_max)
    if n_max < 1:
        raise DomainError(f"table limit must be positive, got {n_max}")
    if n_max > Config.TABLE_LIMIT_GUARD:
        raise CapacityExceeded(f"table limit {n_max} exceeds the guard {Config.TABLE_LIMIT_GUARD}")
    logger.info("building divisor table up to %d", n_max)
    d = _sieve_divisor_counts(n_max)
    d3 = _convolve_with_one(d)
    d[0] = 0
    d3[0] = 0
    return DivisorTable(n_max, d, d3)


def hyperbola_sum_d(x: int) -> int:
    """sum_{n <= x} d(n) = 2 sum_{a <= sqrt x} floor(x/a) - floor(sqrt x)^2."""
    x = int(x)
    root = math.isqrt(x)
    return 2 * sum(x // a for a in range(1, root + 1)) - root * root
