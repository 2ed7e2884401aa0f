"""Integrands Z(t)^a zeta(1/2+it)^b chi^alpha(1/2+it) of the moment integrals.

Since zeta(1/2+it) = e^{-i theta(t)} Z(t) and chi^alpha = e^{-2 i alpha theta(t)},
every such integrand equals Z^{a+b} e^{-i (b + 2 alpha) theta}.
"""

from typing import Optional

import mpmath as mp
import numpy as np

from ..errors import DomainError
from ..numerics.batch import hardy_z_batch, theta_batch
from ..numerics.chi import eval_theta, eval_Z
from ..numerics.precision import PrecisionContext
from ..oscillatory.quadrature import Integrand, hardy_phase_rate


class HardyPowerIntegrand(Integrand):
    """g(t) = Z(t)^a zeta(1/2+it)^b chi^alpha(1/2+it).

    Attributes:
        a: Power of Z.
        b: Power of zeta.
        alpha: Power of chi.
        backend: "float64" or "mp".
    """

    def __init__(self, a: int, b: int, alpha: float = 0.0, backend: str = "float64",
                 ctx: Optional[PrecisionContext] = None):
        if a < 0 or b < 0 or a + b == 0:
            raise DomainError(f"integrand powers must be non-negative and not both zero, got a={a}, b={b}")
        if backend not in ("float64", "mp"):
            raise DomainError(f"backend must be 'float64' or 'mp', got {backend!r}")
        self.a = a
        self.b = b
        self.alpha = float(alpha)
        self.backend = backend
        self.ctx = ctx or PrecisionContext()
        self.rotation = b + 2 * self.alpha
        self.multiplier = a + b + abs(self.rotation)

    def evaluate(self, t):
        if self.backend == "float64":
            t = np.asarray(t, dtype=np.float64)
            z = hardy_z_batch(t)
            value = z ** (self.a + self.b)
            if self.rotation == 0:
                return value.astype(np.complex128)
            return value * np.exp(-1j * self.rotation * theta_batch(t))
        z = eval_Z(t, self.ctx)
        with self.ctx.workprec(16):
            value = mp.mpc(z ** (self.a + self.b))
            if self.rotation != 0:
                theta = eval_theta(t, self.ctx).theta
                value *= mp.expj(-self.rotation * theta)
            return value

    def phase_rate(self, t: float) -> float:
        return hardy_phase_rate(t, self.multiplier)
