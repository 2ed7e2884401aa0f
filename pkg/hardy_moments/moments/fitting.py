"""Fitted constants for the unspecified O-constants of the error terms."""

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .moment_context import MomentKind, MomentReport


@dataclass(frozen=True)
class KindFit:
    """Fit summary of all reports of one kind.

    Attributes:
        kind: Moment kind.
        points: Number of reports.
        fitted_C: Largest ratio on the grid.
        slope: Least-squares slope of log residual against log bound.
        growth: Least-squares exponent of ratio against the grid height.
    """
    kind: MomentKind
    points: int
    fitted_C: float
    slope: Optional[float]
    growth: Optional[float]


def ols_log_fit(xs, ys) -> Optional[float]:
    """Slope of log y against log x by least squares; None with fewer than two usable points."""
    pairs = [(math.log(x), math.log(y)) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if len({p[0] for p in pairs}) < 2:
        return None
    X = np.vstack([np.ones(len(pairs)), [p[0] for p in pairs]]).T
    y = np.array([p[1] for p in pairs])
    beta, _, _, _ = np.linalg.lstsq(X, y, rcond=None)
    return float(beta[1])


def grid_height(report: MomentReport) -> float:
    """The parameter a kind grows along: N for th2, T (or T1) otherwise."""
    spec = report.spec
    return float(spec.N if spec.kind is MomentKind.TH2 else spec.T)


def fit_reports(reports: Iterable[MomentReport]) -> list:
    """Group reports by kind, in order of first appearance, and fit each group."""
    groups = {}
    for report in reports:
        groups.setdefault(report.spec.kind, []).append(report)
    fits = []
    for kind, group in groups.items():
        fits.append(KindFit(
            kind=kind,
            points=len(group),
            fitted_C=max(r.ratio for r in group),
            slope=ols_log_fit([r.bound for r in group], [r.residual for r in group]),
            growth=ols_log_fit([grid_height(r) for r in group], [r.ratio for r in group]),
        ))
    return fits
