"""Qubit battery under non-Markovian amplitude damping.

Quantum speed limit times, ergotropy (with its coherent/incoherent split)
and charging power along the exact reduced dynamics.
"""

__version__ = "0.1.0"

from .dynamics import (  # noqa: E402
    MARKOVIAN_PRESET,
    NON_MARKOVIAN_PRESET,
    ModelParams,
    Regime,
    build_trajectory,
    coupling_regime,
    g_function,
    propagate,
)
from .errors import ConfigError, NumericalError, QslBatteryError, UsageError  # noqa: E402
from .qsl import QuadratureSpec, qsl_at, qsl_sweep  # noqa: E402
from .thermo import ergotropy, ergotropy_breakdown, gibbs_state  # noqa: E402

__all__ = [
    "__version__",
    "MARKOVIAN_PRESET",
    "NON_MARKOVIAN_PRESET",
    "ModelParams",
    "Regime",
    "build_trajectory",
    "coupling_regime",
    "g_function",
    "propagate",
    "ConfigError",
    "NumericalError",
    "QslBatteryError",
    "UsageError",
    "QuadratureSpec",
    "qsl_at",
    "qsl_sweep",
    "ergotropy",
    "ergotropy_breakdown",
    "gibbs_state",
]
