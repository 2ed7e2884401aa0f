"""Numerical verification of moment formulas for Hardy's Z-function.

Packages:
    numerics: zeta, chi, theta and Z at arbitrary precision, plus a binary64 batch engine.
    divisor: d(n), d3(n) tables, summatory functions and the table cache.
    oscillatory: stationary phase and adaptive oscillatory quadrature.
    moments: the verification experiments.
"""

__version__ = "0.1.0"

from .errors import HardyMomentsError
from .numerics import ComplexArg, PrecisionContext, constants, eval_chi, eval_chi_power, eval_theta, eval_Z, eval_zeta
from .smoothing import DEFAULT_KERNEL, SmoothingKernel, rho, rho_derivatives
from .afe import AfeSplit, afe_error_budget, afe_sums, zeta_power_afe
from .moments import MomentDependencies, MomentKind, MomentReport, MomentSpec, run_moment

__all__ = [
    'HardyMomentsError',
    'ComplexArg', 'PrecisionContext', 'constants', 'eval_chi', 'eval_chi_power', 'eval_theta', 'eval_Z',
    'eval_zeta',
    'DEFAULT_KERNEL', 'SmoothingKernel', 'rho', 'rho_derivatives',
    'AfeSplit', 'afe_error_budget', 'afe_sums', 'zeta_power_afe',
    'MomentDependencies', 'MomentKind', 'MomentReport', 'MomentSpec', 'run_moment',
]
