"""Moment verification experiments."""

from .moment_context import (
    MomentAnalysis,
    MomentDependencies,
    MomentKind,
    MomentReport,
    MomentSpec,
    MomentTerms,
    required_table_limit,
)
from .integrands import HardyPowerIntegrand
from .analyses import (
    JAWindowSums,
    analysis_for,
    check_S1_bound,
    jA_window_sums,
    run_moment,
    verify_hardy_and_calibrations,
    verify_I_dyadic,
    verify_J_dyadic,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
    verify_theorem4,
)
from .fitting import KindFit, fit_reports, ols_log_fit

__all__ = [
    'MomentAnalysis', 'MomentDependencies', 'MomentKind', 'MomentReport', 'MomentSpec', 'MomentTerms',
    'required_table_limit', 'HardyPowerIntegrand',
    'JAWindowSums', 'analysis_for', 'check_S1_bound', 'jA_window_sums', 'run_moment',
    'verify_hardy_and_calibrations', 'verify_I_dyadic', 'verify_J_dyadic',
    'verify_theorem1', 'verify_theorem2', 'verify_theorem3', 'verify_theorem4',
    'KindFit', 'fit_reports', 'ols_log_fit',
]
