"""The smooth cutoff rho with rho(u) + rho(1/u) = 1.

rho(u) = psi(log u / log 2) where, with g(v) = 2v / (1 - v^2),

    psi(v) = 1 / (1 + e^{g(v)})   for |v| < 1,
    psi(v) = 1 for v <= -1,  psi(v) = 0 for v >= 1.

psi is C-infinity and psi(v) + psi(-v) = 1, so rho equals 1 on (0, 1/2],
vanishes on [2, inf) and satisfies the reciprocal partition exactly.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import mpmath as mp
import numpy as np
from scipy.special import expit

from .errors import DomainError
from .numerics.precision import to_mpf


def _is_array(u) -> bool:
    return isinstance(u, np.ndarray)


@dataclass(frozen=True)
class SmoothingKernel:
    """Canonical smoothing kernel with transition band [lower_edge, upper_edge].

    Attributes:
        lower_edge: rho is 1 on (0, lower_edge].
        upper_edge: rho is 0 on [upper_edge, inf).
    """
    lower_edge: Fraction = field(default=Fraction(1, 2))
    upper_edge: Fraction = field(default=Fraction(2))

    def __post_init__(self):
        if self.lower_edge * self.upper_edge != 1 or not self.lower_edge < 1:
            raise DomainError("the transition band must be [1/b, b] with b > 1")

    # -- psi on the log scale -------------------------------------------------

    @staticmethod
    def _psi_parts(v):
        """Return (p, g', g'') for |v| < 1 in mpmath."""
        one_minus, one_plus = 1 - v, 1 + v
        g = 2 * v / (one_minus * one_plus)
        p = 1 / (1 + mp.exp(g))
        dg = 1 / one_minus ** 2 + 1 / one_plus ** 2
        d2g = 2 / one_minus ** 3 - 2 / one_plus ** 3
        return p, dg, d2g

    def _log_scale(self, u):
        return mp.log(u) / mp.log(to_mpf(self.upper_edge))

    # -- public evaluation ----------------------------------------------------

    def rho(self, u):
        """Evaluate rho(u).

        Args:
            u: Positive real (mpf, float, int, Fraction) or numpy array of floats.

        Returns:
            mpf in [0, 1], or a float array for array input.

        Raises:
            DomainError: If u <= 0.
        """
        if _is_array(u):
            return self.rho_array(u)
        uu = to_mpf(u)
        if uu <= 0:
            raise DomainError(f"rho is defined for u > 0, got {mp.nstr(uu, 8)}")
        v = self._log_scale(uu)
        if v <= -1:
            return mp.mpf(1)
        if v >= 1:
            return mp.mpf(0)
        p, _, _ = self._psi_parts(v)
        return p

    def rho_array(self, u: np.ndarray) -> np.ndarray:
        """Vectorised binary64 rho."""
        u = np.asarray(u, dtype=np.float64)
        if np.any(u <= 0):
            raise DomainError("rho is defined for u > 0")
        v = np.log(u) / np.log(float(self.upper_edge))
        inside = np.abs(v) < 1
        vi = np.where(inside, v, 0.0)
        g = 2 * vi / ((1 - vi) * (1 + vi))
        return np.where(inside, expit(-g), np.where(v <= -1, 1.0, 0.0))

    def rho_derivatives(self, u):
        """Return (rho'(u), rho''(u)).

        Args:
            u: Positive real.

        Returns:
            Tuple of mpf; both vanish outside the transition band.

        Raises:
            DomainError: If u <= 0.
        """
        uu = to_mpf(u)
        if uu <= 0:
            raise DomainError(f"rho is defined for u > 0, got {mp.nstr(uu, 8)}")
        v = self._log_scale(uu)
        if abs(v) >= 1:
            return mp.mpf(0), mp.mpf(0)
        p, dg, d2g = self._psi_parts(v)
        dpsi = -p * (1 - p) * dg
        d2psi = -(dpsi * (1 - 2 * p) * dg + p * (1 - p) * d2g)
        log_b = mp.log(to_mpf(self.upper_edge))
        d1 = dpsi / (uu * log_b)
        d2 = d2psi / (uu * log_b) ** 2 - dpsi / (uu * uu * log_b)
        return d1, d2

    def rho_derivatives_array(self, u: np.ndarray):
        """Vectorised binary64 (rho', rho'')."""
        u = np.asarray(u, dtype=np.float64)
        log_b = np.log(float(self.upper_edge))
        v = np.log(u) / log_b
        inside = np.abs(v) < 1
        vi = np.where(inside, v, 0.0)
        g = 2 * vi / ((1 - vi) * (1 + vi))
        p = expit(-g)
        q = expit(g)                    # 1 - p without cancellation
        dg = 1 / (1 - vi) ** 2 + 1 / (1 + vi) ** 2
        d2g = 2 / (1 - vi) ** 3 - 2 / (1 + vi) ** 3
        dpsi = -p * q * dg
        d2psi = -(dpsi * (q - p) * dg + p * q * d2g)
        d1 = np.where(inside, dpsi / (u * log_b), 0.0)
        d2 = np.where(inside, d2psi / (u * log_b) ** 2 - dpsi / (u * u * log_b), 0.0)
        return d1, d2

    @cached_property
    def derivative_bounds(self) -> tuple:
        """Recorded (C1, C2) with |rho'| <= C1 and |rho''| <= C2, from dense sampling."""
        u = np.geomspace(float(self.lower_edge), float(self.upper_edge), 8193)
        d1, d2 = self.rho_derivatives_array(u)
        return float(np.max(np.abs(d1))) * 1.01, float(np.max(np.abs(d2))) * 1.01


DEFAULT_KERNEL = SmoothingKernel()


def rho(u):
    """rho(u) for the canonical kernel."""
    return DEFAULT_KERNEL.rho(u)


def rho_derivatives(u):
    """(rho'(u), rho''(u)) for the canonical kernel."""
    return DEFAULT_KERNEL.rho_derivatives(u)
