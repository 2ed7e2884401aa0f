"""Gauss-Legendre nodes and weights on [-1, 1] in binary64 and at working precision."""

from functools import lru_cache

import mpmath as mp
import numpy as np
from numpy.polynomial.legendre import leggauss

from ..errors import PrecisionExhausted

_NEWTON_STEPS = 64


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple:
    """Binary64 (nodes, weights) of the n-point rule, nodes ascending."""
    nodes, weights = leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _legendre_with_derivative(n: int, x):
    """(P_n(x), P_n'(x)) by the three-term recurrence."""
    p_prev, p = mp.mpf(1), x
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    return p, n * (x * p - p_prev) / (x * x - 1)


@lru_cache(maxsize=32)
def gauss_legendre_mp(n: int, prec_bits: int) -> tuple:
    """(nodes, weights) of the n-point rule as mpf tuples at prec_bits.

    Nodes are polished by Newton's method on P_n starting from the binary64
    rule, then weights follow from w = 2 / ((1 - x^2) P_n'(x)^2).

    Raises:
        PrecisionExhausted: If Newton fails to settle a node.
    """
    seeds, _ = gauss_legendre(n)
    nodes, weights = [], []
    with mp.workprec(prec_bits + 24):
        target = mp.ldexp(mp.mpf(1), -(prec_bits + 8))
        for seed in seeds:
            x = mp.mpf(float(seed))
            for _ in range(_NEWTON_STEPS):
                p, dp = _legendre_with_derivative(n, x)
                step = p / dp
                x -= step
                if abs(step) <= target:
                    break
            else:
                raise PrecisionExhausted(f"Gauss-Legendre node {float(seed)} of order {n} did not converge")
            _, dp = _legendre_with_derivative(n, x)
            nodes.append(x)
            weights.append(2 / ((1 - x * x) * dp * dp))
    with mp.workprec(prec_bits):
        return tuple(+x for x in nodes), tuple(+w for w in weights)
