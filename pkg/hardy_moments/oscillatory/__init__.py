"""Stationary-phase main terms and adaptive oscillatory quadrature."""

from .gauss import gauss_legendre, gauss_legendre_mp
from .predictors import PredictorKind, PredictorParams, phase_problem, predict_afe_integral
from .quadrature import (
    Integrand,
    PanelInfo,
    PanelSelectionStrategy,
    QuadratureResult,
    ScalarIntegrand,
    VectorIntegrand,
    hardy_phase_rate,
    integrate_oscillatory,
)
from .stationary_phase import Amplitude, PhaseFunction, PhaseProblem, StationaryPhaseResult, stationary_phase

__all__ = [
    'gauss_legendre', 'gauss_legendre_mp',
    'PredictorKind', 'PredictorParams', 'phase_problem', 'predict_afe_integral',
    'Integrand', 'PanelInfo', 'PanelSelectionStrategy', 'QuadratureResult', 'ScalarIntegrand',
    'VectorIntegrand', 'hardy_phase_rate', 'integrate_oscillatory',
    'Amplitude', 'PhaseFunction', 'PhaseProblem', 'StationaryPhaseResult', 'stationary_phase',
]
