"""Arbitrary-precision zeta, chi, theta and Z, plus a binary64 batch engine."""

from .precision import ComplexArg, PrecisionContext, to_fraction, to_mpf
from .constants import Constants, constants
from .zeta import eval_zeta
from .chi import ThetaPhase, eval_chi, eval_chi_power, eval_theta, eval_Z
from .batch import hardy_z_batch, theta_batch, zeta_critical_batch, zeta_em_batch

__all__ = [
    'ComplexArg', 'PrecisionContext', 'to_fraction', 'to_mpf',
    'Constants', 'constants',
    'eval_zeta', 'eval_chi', 'eval_theta', 'eval_Z', 'eval_chi_power', 'ThetaPhase',
    'hardy_z_batch', 'theta_batch', 'zeta_critical_batch', 'zeta_em_batch',
]
