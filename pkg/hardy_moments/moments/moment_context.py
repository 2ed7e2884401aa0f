"""Data structures for moment verification experiments.

Classes:
    MomentKind: The verifiable moment identities and bounds.
    MomentSpec: One experiment and its parameters.
    MomentReport: Left-hand side, main term, residual and bound of one experiment.
    MomentDependencies: Shared, read-only inputs of every analysis.
    MomentAnalysis: Interface of a single verification.
"""

import math
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import mpmath as mp

from ..config import Config
from ..divisor.table import DivisorTable
from ..errors import CapacityExceeded, DomainError, TableTooSmall, UnknownKind
from ..numerics.precision import PrecisionContext
from ..smoothing import DEFAULT_KERNEL, SmoothingKernel


class MomentKind(Enum):
    TH1 = "th1"
    TH2 = "th2"
    TH3 = "th3"
    TH4 = "th4"
    HARDY_Z = "hardy_z"
    SECOND_MOMENT = "second_moment"
    Z3_DYADIC = "z3_dyadic"
    J_DYADIC = "j_dyadic"
    I_DYADIC = "i_dyadic"
    S1_BOUND = "s1_bound"

    @classmethod
    def parse(cls, value) -> "MomentKind":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        for kind in cls:
            if text in (kind.value, kind.name.lower()):
                return kind
        raise UnknownKind(f"unknown moment kind {value!r}")

    @property
    def is_calibration(self) -> bool:
        return self in (MomentKind.HARDY_Z, MomentKind.SECOND_MOMENT, MomentKind.Z3_DYADIC)


# admissible T for each integral kind
_T_RANGES = {
    MomentKind.TH1: (1e2, 1e5),
    MomentKind.J_DYADIC: (1e2, 1e5),
    MomentKind.TH3: (1e2, 3e4),
    MomentKind.I_DYADIC: (1e2, 3e4),
    MomentKind.TH4: (1e2, 1e5),
    MomentKind.HARDY_Z: (Config.HEAD_T0, 1e5),
    MomentKind.SECOND_MOMENT: (Config.HEAD_T0, 1e5),
    MomentKind.Z3_DYADIC: (1e2, 1e4),
}
_ALPHA_LIMIT = 0.45


@dataclass(frozen=True)
class MomentSpec:
    """One verification experiment.

    Attributes:
        kind: Which identity or bound.
        T: Height (T1 for S1_BOUND); unused for TH2.
        N: Sum start for TH2.
        A: Amplitude parameter for TH2, A >= N^{-1/4}.
        alpha: chi exponent for TH4, |alpha| <= 0.45.
        eps_slack: Stand-in for the epsilon of the error exponents.
        delta: Exponent of the S1 phase, not 0 or 1.
        c: Coefficient of the S1 phase.
    """
    kind: MomentKind
    T: Optional[float] = None
    N: Optional[int] = None
    A: Optional[float] = None
    alpha: Optional[float] = None
    eps_slack: float = Config.EPS_SLACK
    delta: Optional[float] = None
    c: Optional[float] = None

    def __post_init__(self):
        kind = MomentKind.parse(self.kind)
        object.__setattr__(self, "kind", kind)
        if not (math.isfinite(self.eps_slack) and self.eps_slack >= 0):
            raise DomainError(f"eps_slack must be a finite non-negative number, got {self.eps_slack}")
        self._check_presence(kind)
        if kind is MomentKind.TH2:
            self._check_theorem2()
        elif kind is MomentKind.S1_BOUND:
            self._check_s1()
        else:
            low, high = _T_RANGES[kind]
            if not low <= float(self.T) <= high:
                raise DomainError(f"{kind.value} needs {low:g} <= T <= {high:g}, got T = {self.T}")
        if kind is MomentKind.TH4 and not abs(float(self.alpha)) <= _ALPHA_LIMIT:
            raise DomainError(f"th4 needs |alpha| <= {_ALPHA_LIMIT}, got {self.alpha}")

    def _check_presence(self, kind: MomentKind):
        wanted = {
            "T": kind is not MomentKind.TH2,
            "N": kind is MomentKind.TH2,
            "A": kind is MomentKind.TH2,
            "alpha": kind is MomentKind.TH4,
            "delta": kind is MomentKind.S1_BOUND,
            "c": kind is MomentKind.S1_BOUND,
        }
        for name, required in wanted.items():
            present = getattr(self, name) is not None
            if required and not present:
                raise DomainError(f"{kind.value} requires parameter {name}")
            if present and not required:
                raise DomainError(f"parameter {name} does not apply to {kind.value}")

    def _check_theorem2(self):
        if int(self.N) != self.N or self.N < 2:
            raise DomainError(f"th2 needs an integer N >= 2, got {self.N}")
        object.__setattr__(self, "N", int(self.N))
        if not float(self.A) >= self.N ** -0.25:
            raise DomainError(f"th2 needs A >= N^(-1/4) = {self.N ** -0.25:.6g}, got A = {self.A}")

    def _check_s1(self):
        if int(self.T) != self.T or self.T < 1:
            raise DomainError(f"s1_bound needs an integer T1 >= 1, got {self.T}")
        if self.T > Config.S1_T1_MAX:
            raise CapacityExceeded(f"s1_bound T1 = {self.T} exceeds {Config.S1_T1_MAX}")
        if float(self.delta) in (0.0, 1.0) or not math.isfinite(float(self.delta)):
            raise DomainError(f"s1_bound needs delta outside {{0, 1}}, got {self.delta}")


@dataclass(frozen=True)
class MomentReport:
    """Outcome of one experiment.

    Attributes:
        spec: The experiment.
        lhs: Computed left-hand side.
        main: Predicted main term.
        residual: |lhs - main|.
        bound: Error-term shape with unit constant.
        ratio: residual / bound.
        runtime_ms: Wall time of the computation.
        prec_bits: Working precision.
        notes: Diagnostics that stay out of the CSV (error estimates, halving, audits).
    """
    spec: MomentSpec
    lhs: complex
    main: complex
    residual: float
    bound: float
    ratio: float
    runtime_ms: int
    prec_bits: int
    notes: dict = field(default_factory=dict, compare=False)

    @classmethod
    def build(cls, spec: MomentSpec, lhs, main, bound, runtime_ms: int, prec_bits: int,
              notes: Optional[dict] = None) -> "MomentReport":
        """Round lhs and main to binary64 and derive residual and ratio from the rounded values."""
        lhs, main, bound = complex(lhs), complex(main), float(bound)
        if not bound > 0:
            raise DomainError(f"bound must be positive, got {bound}")
        residual = abs(lhs - main)
        return cls(spec, lhs, main, residual, bound, residual / bound, int(runtime_ms), int(prec_bits), notes or {})

    @property
    def consistent(self) -> bool:
        """Whether residual and ratio match a recomputation from lhs, main and bound."""
        return (self.residual == abs(self.lhs - self.main)
                and self.ratio == self.residual / self.bound
                and math.isfinite(self.ratio))


@dataclass(frozen=True)
class MomentDependencies:
    """Read-only inputs shared by all analyses.

    Attributes:
        ctx: Precision context.
        table: Divisor table, needed by the divisor-sum kinds.
        kernel: Smoothing kernel.
        tol: Quadrature tolerance override.
        backend: "float64" (batch engine) or "mp" (pointwise arbitrary precision).
        head_t0: Integrals from 0 treat [0, head_t0] on a finer panel grid.
    """
    ctx: PrecisionContext = field(default_factory=PrecisionContext)
    table: Optional[DivisorTable] = None
    kernel: SmoothingKernel = DEFAULT_KERNEL
    tol: Optional[float] = None
    backend: str = "float64"
    head_t0: float = Config.HEAD_T0

    def __post_init__(self):
        if self.backend not in ("float64", "mp"):
            raise DomainError(f"backend must be 'float64' or 'mp', got {self.backend!r}")

    def require_table(self, limit: int) -> DivisorTable:
        """Return the table if it covers limit.

        Raises:
            TableTooSmall: Otherwise.
        """
        if self.table is None or self.table.limit < limit:
            have = 0 if self.table is None else self.table.limit
            raise TableTooSmall(f"divisor table must reach {limit}, limit is {have}")
        return self.table

    def tolerance(self, span: float) -> float:
        if self.tol is not None:
            return float(self.tol)
        return max(Config.DEFAULT_TOL_SCALE * math.sqrt(span), Config.MOMENT_TOL_SCALE * span)


def required_table_limit(spec: MomentSpec) -> int:
    """Largest n at which the experiment reads d(n) or d3(n); 0 if none."""
    kind = spec.kind
    with mp.workprec(64):
        if kind is MomentKind.J_DYADIC:
            return int(mp.floor(mp.sqrt(mp.mpf(spec.T) / mp.pi))) + 1
        if kind is MomentKind.I_DYADIC:
            return int(mp.floor(mp.mpf(spec.T) / mp.pi)) + 1
        if kind is MomentKind.Z3_DYADIC:
            return int(mp.floor((mp.mpf(spec.T) / mp.pi) ** 1.5)) + 1
        if kind is MomentKind.TH2:
            top = mp.sqrt(2) * mp.power(mp.mpf(spec.A), mp.mpf(4) / 3) * mp.cbrt(spec.N)
            return int(mp.floor(max(2 * mp.sqrt(2) * spec.N, top))) + 1
        if kind is MomentKind.S1_BOUND:
            return 2 * int(spec.T)
    return 0


@dataclass(frozen=True)
class MomentTerms:
    """Raw outcome of an analysis before timing and rounding."""
    lhs: object
    main: object
    bound: object
    notes: dict = field(default_factory=dict)


class MomentAnalysis(ABC):
    """Abstract moment analysis interface.

    An analysis computes the left-hand side and predicted main term of one
    MomentSpec and returns them as a MomentReport.
    """
    kinds: tuple = ()

    def __init__(self, spec: MomentSpec, deps: MomentDependencies):
        if spec.kind not in self.kinds:
            raise UnknownKind(f"{type(self).__name__} cannot analyse {spec.kind.value}")
        self.spec = spec
        self.deps = deps

    @abstractmethod
    def evaluate(self) -> MomentTerms:
        """Compute lhs, main and bound for the spec."""

    def analyse(self) -> MomentReport:
        """Run the analysis and time it.

        Returns:
            MomentReport: The experiment outcome.
        """
        started = time.perf_counter()
        terms = self.evaluate()
        runtime_ms = int(round((time.perf_counter() - started) * 1000))
        return MomentReport.build(self.spec, terms.lhs, terms.main, terms.bound, runtime_ms,
                                  self.deps.ctx.prec_bits, terms.notes)
