"""Central configuration defaults.

Values here are defaults only; every numeric operation still receives its
PrecisionContext explicitly.
"""

import os

from .errors import ConfigParseError

PREC_ENV_VAR = "HML_PREC_BITS"


class Config:
    # --- Precision ---
    DEFAULT_PREC_BITS = 128
    GUARD_BITS = 16
    MIN_PREC_BITS = 64
    CONSTANTS_PREC_BITS = 256   # gamma, gamma_1 cached at no less than this

    # --- Ranges ---
    T_MAX = 10**7               # ceiling for |t| in zeta evaluation
    AFE_T0 = 10                 # validity floor of the smoothed AFE
    HEAD_T0 = 10                # [0, HEAD_T0] is integrated on a finer grid
    CHI_POWER_T0 = 1
    TABLE_LIMIT_GUARD = 10**8
    S1_T1_MAX = 10**6

    # --- Quadrature ---
    PANEL_OSCILLATIONS = 0.25
    HEAD_OSCILLATIONS = 1.0 / 16
    QUADRATURE_MAX_DEPTH = 12
    DEFAULT_TOL_SCALE = 1e-8    # tol = scale * sqrt(T2 - T1)
    MOMENT_TOL_SCALE = 1e-9     # moment integrals also allow scale * (T2 - T1)
    BISECTION_BITS = 60
    CURVATURE_RATIO = 16.0      # allowed spread of A * |f''| over [a, b]

    # --- Float64 engine ---
    EM_FLOAT_TERMS = 20
    RIEMANN_SIEGEL_T0 = 1000.0
    BATCH_MAX_ELEMENTS = 2**21

    # --- Checks and moments ---
    IMAGINARY_TOL_FACTOR = 100
    EPS_SLACK = 0.05
    ENDPOINT_REL_TOL = 2.0**-48  # integrality of window endpoints given as binary64

    @classmethod
    def default_prec_bits(cls) -> int:
        """Return the default precision, honouring HML_PREC_BITS.

        Returns:
            Precision in bits.

        Raises:
            ConfigParseError: If the environment value is not an integer >= 64.
        """
        raw = os.environ.get(PREC_ENV_VAR)
        if raw is None or raw.strip() == "":
            return cls.DEFAULT_PREC_BITS
        try:
            bits = int(raw)
        except ValueError:
            raise ConfigParseError(f"{PREC_ENV_VAR} must be an integer, got {raw!r}")
        if bits < cls.MIN_PREC_BITS:
            raise ConfigParseError(f"{PREC_ENV_VAR} must be >= {cls.MIN_PREC_BITS}, got {bits}")
        return bits
