"""Adaptive panel quadrature for oscillatory integrands.

[T1, T2] is cut into panels that each hold a fixed fraction of one
oscillation at the local phase rate. Every panel is integrated with the
15-point Gauss-Legendre rule; the 7-point Gauss-Legendre rule on the same
panel gives the error estimate. The two node sets are not nested, so a panel
costs 22 evaluations rather than the 15 of a Gauss-Kronrod pair; in exchange
both rules come from gauss_legendre_mp at any working precision, where no
Kronrod table is available. Panels whose estimate exceeds their share of
the tolerance are bisected, up to a maximum depth. Leaves are reduced in
ascending order of their left edge, so results do not depend on evaluation
order.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Optional

import mpmath as mp
import numpy as np

from ..config import Config
from ..errors import DomainError, NonFiniteSample, ToleranceNotMet
from ..numerics.precision import PrecisionContext, to_mpf
from .gauss import gauss_legendre, gauss_legendre_mp

logger = logging.getLogger(__name__)

HIGH_ORDER = 15
LOW_ORDER = 7
_TWO_PI = 2.0 * math.pi
_PANEL_CHUNK = 4096
_ROUNDOFF = 1e-14


def hardy_phase_rate(t, multiplier: float = 1.0):
    """Phase-rate bound multiplier * ((1/2) log(max(t, 2pi)/2pi) + 1) in radians per unit t.

    Each factor Z(t) oscillates no faster than theta'(t) ~ (1/2) log(t/2pi);
    the +1 keeps panels short near small t.
    """
    tt = np.maximum(np.asarray(t, dtype=np.float64), _TWO_PI)
    rate = multiplier * (0.5 * np.log(tt / _TWO_PI) + 1.0)
    return float(rate) if rate.ndim == 0 else rate


class Integrand(ABC):
    """Integrand handle for integrate_oscillatory.

    Attributes:
        backend: "float64" for array evaluation, "mp" for pointwise mpmath.
    """
    backend = "float64"

    @abstractmethod
    def evaluate(self, t):
        """Return g(t); an array of t for float64, one mpf for mp."""

    def phase_rate(self, t: float) -> float:
        """Local phase rate in radians per unit t."""
        return hardy_phase_rate(t)


class VectorIntegrand(Integrand):
    """Wraps a numpy function t -> complex array."""
    backend = "float64"

    def __init__(self, fn: Callable, rate: Optional[Callable] = None):
        self.fn = fn
        self.rate = rate

    def evaluate(self, t):
        return np.asarray(self.fn(t), dtype=np.complex128)

    def phase_rate(self, t: float) -> float:
        return hardy_phase_rate(t) if self.rate is None else float(self.rate(t))


class ScalarIntegrand(Integrand):
    """Wraps a pointwise mpmath function t -> mpc."""
    backend = "mp"

    def __init__(self, fn: Callable, rate: Optional[Callable] = None):
        self.fn = fn
        self.rate = rate

    def evaluate(self, t):
        return mp.mpc(self.fn(t))

    def phase_rate(self, t: float) -> float:
        return hardy_phase_rate(t) if self.rate is None else float(self.rate(t))


@dataclass(frozen=True)
class PanelInfo:
    """One top-level panel [a, b]."""
    index: int
    a: float
    b: float

    @property
    def width(self) -> float:
        return self.b - self.a


class PanelSelectionStrategy:
    """Strategy for cutting [T1, T2] into panels of bounded oscillation count."""

    def __init__(self, T1: float, T2: float, phase_rate: Callable, oscillations: float = Config.PANEL_OSCILLATIONS):
        """Initialize with the interval and the phase-rate callback.

        Args:
            T1: Left edge.
            T2: Right edge.
            phase_rate: t -> radians per unit t.
            oscillations: Fraction of one oscillation allowed per panel.
        """
        self.T1 = float(T1)
        self.T2 = float(T2)
        self.phase_rate = phase_rate
        self.oscillations = oscillations

    def panel_width(self, t: float) -> float:
        rate = float(self.phase_rate(t))
        if not rate > 0 or not math.isfinite(rate):
            return math.inf
        return self.oscillations * _TWO_PI / rate

    def select_edges(self) -> np.ndarray:
        """Panel edges T1 = e_0 < e_1 < ... < e_P = T2."""
        edges = [self.T1]
        t = self.T1
        while t < self.T2:
            width = self.panel_width(t)
            width = min(width, self.panel_width(min(t + width, self.T2)))
            end = min(t + width, self.T2)
            if end <= t:
                raise DomainError(f"phase rate at t = {t} leaves no room for a panel")
            edges.append(end)
            t = end
        return np.asarray(edges, dtype=np.float64)

    def select_panels(self) -> list:
        edges = self.select_edges()
        return [PanelInfo(i, float(a), float(b)) for i, (a, b) in enumerate(zip(edges[:-1], edges[1:]))]


@dataclass(frozen=True)
class QuadratureResult:
    """Integral value, summed error estimate and panel statistics.

    Unpacks as (value, err_est).
    """
    value: object
    err_est: float
    panels: int
    leaves: int

    def __iter__(self):
        return iter((self.value, self.err_est))


def _rule_pair_float(integrand: Integrand, a: np.ndarray, b: np.ndarray):
    x_hi, w_hi = gauss_legendre(HIGH_ORDER)
    x_lo, w_lo = gauss_legendre(LOW_ORDER)
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    nodes = mid[:, None] + half[:, None] * np.concatenate([x_hi, x_lo])[None, :]
    values = integrand.evaluate(nodes.ravel()).reshape(nodes.shape)
    if not np.all(np.isfinite(values)):
        bad = nodes[~np.isfinite(values)][0]
        raise NonFiniteSample(f"integrand is not finite at t = {bad!r}")
    q_hi = half * (values[:, :HIGH_ORDER] @ w_hi)
    q_lo = half * (values[:, HIGH_ORDER:] @ w_lo)
    return q_hi, np.abs(q_hi - q_lo)


def _integrate_float(integrand, edges, tol, span, max_depth):
    leaf_a, leaf_q, leaf_err = [], [], []
    for start in range(0, edges.size - 1, _PANEL_CHUNK):
        stop = min(start + _PANEL_CHUNK, edges.size - 1)
        a = edges[start:stop]
        b = edges[start + 1:stop + 1]
        depth = 0
        while a.size:
            q, err = _rule_pair_float(integrand, a, b)
            allowed = np.maximum(tol * (b - a) / span, _ROUNDOFF * np.abs(q))
            done = (err <= allowed) | (depth >= max_depth)
            leaf_a.append(a[done])
            leaf_q.append(q[done])
            leaf_err.append(err[done])
            a, b = a[~done], b[~done]
            if a.size:
                mid = 0.5 * (a + b)
                a, b = np.concatenate([a, mid]), np.concatenate([mid, b])
                depth += 1
    order = np.argsort(np.concatenate(leaf_a), kind="stable")
    q = np.concatenate(leaf_q)[order]
    err = np.concatenate(leaf_err)[order]
    value = complex(math.fsum(q.real), math.fsum(q.imag))
    return value, math.fsum(err), int(q.size)


def _integrate_mp(integrand, edges, tol, span, max_depth, ctx: PrecisionContext):
    x_hi, w_hi = gauss_legendre_mp(HIGH_ORDER, ctx.prec_bits + 16)
    x_lo, w_lo = gauss_legendre_mp(LOW_ORDER, ctx.prec_bits + 16)

    def rule(a, b):
        half, mid = (b - a) / 2, (a + b) / 2
        q_hi = mp.mpc(0)
        q_lo = mp.mpc(0)
        for x, w in zip(x_hi, w_hi):
            q_hi += w * _checked(integrand, mid + half * x)
        for x, w in zip(x_lo, w_lo):
            q_lo += w * _checked(integrand, mid + half * x)
        return half * q_hi, abs(half * (q_hi - q_lo))

    def refine(a, b, depth):
        q, err = rule(a, b)
        allowed = max(tol * (b - a) / span, ctx.eps_mpf * abs(q))
        if err <= allowed or depth >= max_depth:
            return [(q, err)]
        mid = (a + b) / 2
        return refine(a, mid, depth + 1) + refine(mid, b, depth + 1)

    leaves = []
    with ctx.workprec(16):
        for a, b in zip(edges[:-1], edges[1:]):
            leaves.extend(refine(a, b, 0))
        value = mp.fsum(q for q, _ in leaves)
        err = mp.fsum(e for _, e in leaves)
    with ctx.workprec():
        return +value, float(err), len(leaves)


def _checked(integrand: Integrand, t):
    value = integrand.evaluate(t)
    if not mp.isfinite(value):
        raise NonFiniteSample(f"integrand is not finite at t = {mp.nstr(t, 15)}")
    return value


def integrate_oscillatory(g, T1, T2, tol=None, ctx: Optional[PrecisionContext] = None, *,
                          phase_rate: Optional[Callable] = None,
                          oscillations: float = Config.PANEL_OSCILLATIONS,
                          max_depth: int = Config.QUADRATURE_MAX_DEPTH) -> QuadratureResult:
    """Integrate g over [T1, T2] with phase-adapted Gauss-Legendre panels.

    Args:
        g: Integrand, or a plain callable treated as a pointwise mpmath integrand.
        T1: Left edge.
        T2: Right edge, T2 > T1.
        tol: Absolute tolerance; default 1e-8 * sqrt(T2 - T1).
        ctx: Precision context for the mp backend.
        phase_rate: Overrides the integrand's phase-rate callback.
        oscillations: Fraction of one oscillation allowed per panel.
        max_depth: Maximum number of bisections of a panel.

    Returns:
        QuadratureResult.

    Raises:
        DomainError: If T2 <= T1 or tol <= 0.
        NonFiniteSample: If the integrand returns inf or nan.
        ToleranceNotMet: If the summed error estimate exceeds tol.
    """
    if not isinstance(g, Integrand):
        g = ScalarIntegrand(g)
    ctx = ctx or PrecisionContext()
    lo, hi = float(T1), float(T2)
    if not hi > lo:
        raise DomainError(f"integration needs T1 < T2, got [{T1}, {T2}]")
    span = hi - lo
    if tol is None:
        tol = Config.DEFAULT_TOL_SCALE * math.sqrt(span)
    tol = float(tol)
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    rate = phase_rate or g.phase_rate
    edges = PanelSelectionStrategy(lo, hi, rate, oscillations).select_edges()
    if g.backend == "mp":
        with ctx.workprec(16):
            mp_edges = [to_mpf(T1)] + [mp.mpf(float(e)) for e in edges[1:-1]] + [to_mpf(T2)]
        value, err, leaves = _integrate_mp(g, mp_edges, tol, span, max_depth, ctx)
    else:
        value, err, leaves = _integrate_float(g, edges, tol, span, max_depth)
    panels = edges.size - 1
    logger.debug("integrated [%.6g, %.6g]: %d panels, %d leaves, err %.3g", lo, hi, panels, leaves, err)
    if not err <= tol:
        raise ToleranceNotMet(
            f"quadrature over [{lo:.6g}, {hi:.6g}] reached err {err:.3g} > tol {tol:.3g}", value, err
        )
    return QuadratureResult(value, err, panels, leaves)
