"""Exception hierarchy for hardy_moments.

Every error raised by the library derives from HardyMomentsError, and also
from the builtin that best describes it, so callers may catch either the
library root or the familiar ValueError / ArithmeticError / OSError.
"""


class HardyMomentsError(Exception):
    """Root of all library errors."""


class PoleAtOne(HardyMomentsError, ValueError):
    """Raised when zeta is requested at its pole s = 1."""


class DomainError(HardyMomentsError, ValueError):
    """Raised when an argument lies outside an operation's domain."""


class CapacityExceeded(HardyMomentsError, ValueError):
    """Raised when a requested table or sum exceeds the memory/cost guard."""


class OutOfRange(HardyMomentsError, ValueError):
    """Raised when a summatory query reaches past the divisor table."""


class TableTooSmall(HardyMomentsError, ValueError):
    """Raised when a divisor table cannot cover the requested sum length."""


class ConditionViolation(HardyMomentsError, ValueError):
    """Raised when a stationary-phase problem breaks its curvature conditions."""


class UnknownKind(HardyMomentsError, ValueError):
    """Raised for an unrecognised predictor or moment kind."""


class ConfigParseError(HardyMomentsError, ValueError):
    """Raised for malformed command lines, grids, plans or environment values."""


class PrecisionExhausted(HardyMomentsError, ArithmeticError):
    """Raised when a series cannot reach the requested tolerance."""


class ImaginaryResidueTooLarge(HardyMomentsError, ArithmeticError):
    """Raised when e^{i theta} zeta(1/2+it) is not real to tolerance."""


class NonFiniteSample(HardyMomentsError, ArithmeticError):
    """Raised when an integrand returns inf or nan."""


class ToleranceNotMet(HardyMomentsError, ArithmeticError):
    """Raised when adaptive quadrature stops short of its tolerance.

    Attributes:
        value: Best value obtained.
        err_est: Summed panel error estimate for that value.
    """

    def __init__(self, message, value, err_est):
        super().__init__(message)
        self.value = value
        self.err_est = err_est


class TableCacheError(HardyMomentsError, OSError):
    """Raised when a divisor cache file is unreadable or fails validation."""
