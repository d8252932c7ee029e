"""Equilibrium thermodynamics of a quantum oscillator coupled to a linear heat bath."""

__version__ = "0.1.0"

from .asymptotics import SlopeFit, fit_third_law_slope, low_t_entropy, low_t_free_energy
from .baths import Discrete, Drude, Ohmic, memory_transform, validate
from .core_types import (
    FieldSpec,
    QuadratureSpec,
    Scales,
    ThermoPoint,
    ThermoResult,
    from_internal,
    to_internal,
)
from .errors import ConvergenceError, DomainError, NumericError, ValidationError
from .susceptibility import det_alpha, lambda_of, ohmic_bracket, spectral_weight
from .thermo import entropy, free_energy, sweep
from .wigner import compare_entropies, entropy_exact, entropy_wigner_closed, entropy_wigner_numeric

__all__ = [
    "ConvergenceError",
    "Discrete",
    "DomainError",
    "Drude",
    "FieldSpec",
    "NumericError",
    "Ohmic",
    "QuadratureSpec",
    "Scales",
    "SlopeFit",
    "ThermoPoint",
    "ThermoResult",
    "ValidationError",
    "compare_entropies",
    "det_alpha",
    "entropy",
    "entropy_exact",
    "entropy_wigner_closed",
    "entropy_wigner_numeric",
    "fit_third_law_slope",
    "free_energy",
    "from_internal",
    "lambda_of",
    "low_t_entropy",
    "low_t_free_energy",
    "memory_transform",
    "ohmic_bracket",
    "spectral_weight",
    "sweep",
    "to_internal",
    "validate",
]
