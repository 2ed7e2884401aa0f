"""Working precision and exact argument handling."""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import mpmath as mp

from ..config import Config
from ..errors import DomainError


def to_fraction(value) -> Fraction:
    """Convert a numeric input to an exact rational.

    Accepts int, Fraction, decimal or "p/q" strings, float (converted exactly)
    and mpmath mpf.

    Args:
        value: Input number.

    Returns:
        Fraction equal to the input.

    Raises:
        DomainError: If the value is not finite or not understood.
    """
    if isinstance(value, bool):
        raise DomainError(f"boolean is not a numeric argument: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"non-finite argument: {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"cannot parse numeric argument: {value!r}")
    if isinstance(value, mp.mpf):
        if not mp.isfinite(value):
            raise DomainError(f"non-finite argument: {value!r}")
        man, exp = value.man_exp
        if value < 0:
            man = -man
        return Fraction(int(man)) * Fraction(2) ** int(exp)
    raise DomainError(f"unsupported numeric type {type(value).__name__}")


def to_mpf(value):
    """Convert a numeric input to mpf at the current mpmath precision."""
    if isinstance(value, mp.mpf):
        return +value
    if isinstance(value, (int, Fraction, str)):
        fr = to_fraction(value)
        return mp.mpf(fr.numerator) / fr.denominator
    return mp.mpf(value)


@dataclass(frozen=True)
class PrecisionContext:
    """Binary working precision plus derived tolerance.

    Attributes:
        prec_bits: Working precision in bits, at least 64.
        guard_bits: Bits reserved against rounding, so eps = 2^-(prec_bits - guard_bits).
    """
    prec_bits: int = field(default_factory=Config.default_prec_bits)
    guard_bits: int = Config.GUARD_BITS

    def __post_init__(self):
        if int(self.prec_bits) != self.prec_bits or self.prec_bits < Config.MIN_PREC_BITS:
            raise DomainError(f"prec_bits must be an integer >= {Config.MIN_PREC_BITS}, got {self.prec_bits}")
        if not 0 <= self.guard_bits < self.prec_bits:
            raise DomainError(f"guard_bits must lie in [0, prec_bits), got {self.guard_bits}")

    @property
    def eps(self) -> float:
        return math.ldexp(1.0, -(self.prec_bits - self.guard_bits))

    @property
    def eps_mpf(self):
        return mp.ldexp(mp.mpf(1), -(self.prec_bits - self.guard_bits))

    def workprec(self, extra_bits: int = 0):
        """Context manager running mpmath at prec_bits + extra_bits."""
        return mp.workprec(self.prec_bits + max(0, int(extra_bits)))

    def with_extra(self, extra_bits: int) -> "PrecisionContext":
        return PrecisionContext(self.prec_bits + int(extra_bits), self.guard_bits)

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(2 * self.prec_bits, self.guard_bits)


@dataclass(frozen=True)
class ComplexArg:
    """The point s = sigma + i t, held as exact rationals.

    Attributes:
        sigma: Real part of s.
        t: Imaginary part of s.
    """
    sigma: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "sigma", to_fraction(self.sigma))
        object.__setattr__(self, "t", to_fraction(self.t))

    @classmethod
    def critical(cls, t) -> "ComplexArg":
        """Point 1/2 + it on the critical line."""
        return cls(Fraction(1, 2), t)

    @property
    def is_critical(self) -> bool:
        return self.sigma == Fraction(1, 2)

    @property
    def is_real(self) -> bool:
        return self.t == 0

    def reflected(self) -> "ComplexArg":
        """Return 1 - s."""
        return ComplexArg(1 - self.sigma, -self.t)

    def conjugate(self) -> "ComplexArg":
        return ComplexArg(self.sigma, -self.t)

    def to_mpc(self):
        """Value of s as mpc at the current precision."""
        return mp.mpc(to_mpf(self.sigma), to_mpf(self.t))
