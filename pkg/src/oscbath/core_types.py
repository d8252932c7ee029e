"""Unit system and shared value types.

Internally every quantity is measured in units where hbar = k_B = m = omega0 = 1.
A temperature is therefore the dimensionless ratio ``theta = kT / (hbar omega0)``,
energies are in units of ``hbar omega0`` and entropies in units of ``k_B``.
:class:`Scales` converts between this system and SI values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy import constants

from .errors import ValidationError

__all__ = [
    "UNIT_TAGS",
    "Scales",
    "ThermoPoint",
    "FieldSpec",
    "QuadratureSpec",
    "IntegralDiagnostics",
    "ThermoResult",
    "to_internal",
    "from_internal",
]

UNIT_TAGS = ("frequency", "temperature", "energy", "entropy")


@dataclass(frozen=True)
class Scales:
    """Reference scales for converting SI values to internal units.

    Parameters
    ----------
    omega0_ref : float
        Bare oscillator angular frequency in rad/s.
    mass_ref : float
        Oscillator mass in kg. The force constant is ``mass_ref * omega0_ref**2``.
    """

    omega0_ref: float
    mass_ref: float = constants.m_e

    def __post_init__(self):
        bad = []
        if not (self.omega0_ref > 0 and math.isfinite(self.omega0_ref)):
            bad.append("omega0_ref must be > 0")
        if not (self.mass_ref > 0 and math.isfinite(self.mass_ref)):
            bad.append("mass_ref must be > 0")
        if bad:
            raise ValidationError(bad)

    @property
    def force_constant(self):
        return self.mass_ref * self.omega0_ref**2

    def unit(self, tag):
        """SI size of one internal unit of the quantity named by ``tag``."""
        if tag == "frequency":
            return self.omega0_ref
        if tag == "temperature":
            return constants.hbar * self.omega0_ref / constants.k
        if tag == "energy":
            return constants.hbar * self.omega0_ref
        if tag == "entropy":
            return constants.k
        raise ValidationError(f"unknown unit tag {tag!r}; expected one of {UNIT_TAGS}")


def to_internal(value, tag, scales):
    """Convert an SI ``value`` carrying unit ``tag`` to internal units."""
    return value / scales.unit(tag)


def from_internal(value, tag, scales):
    """Convert an internal-unit ``value`` back to SI."""
    return value * scales.unit(tag)


@dataclass(frozen=True)
class ThermoPoint:
    """Dimensionless temperature ``theta = kT / (hbar omega0)``.

    ``theta = 0`` is allowed; integral operations short-circuit it.
    """

    theta: float

    def __post_init__(self):
        if not (self.theta >= 0 and math.isfinite(self.theta)):
            raise ValidationError(f"theta must be finite and >= 0, got {self.theta!r}")

    @property
    def beta(self):
        return math.inf if self.theta == 0 else 1.0 / self.theta


@dataclass(frozen=True)
class FieldSpec:
    """Magnetic field expressed as the cyclotron ratio ``b = omega_c / omega0``."""

    b: float = 0.0

    def __post_init__(self):
        if not (self.b >= 0 and math.isfinite(self.b)):
            raise ValidationError(f"b must be finite and >= 0, got {self.b!r}")


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and limits for the frequency integral.

    Parameters
    ----------
    rel_tol, abs_tol : float
        The integral is accepted once the error estimate is below
        ``max(abs_tol, rel_tol * |value|)``.
    cutoff_lambda : float
        The integral is truncated at ``cutoff_lambda * max(theta, 1)``.
    max_subdivisions : int
        Maximum number of panel bisections before giving up.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    cutoff_lambda: float = 50.0
    max_subdivisions: int = 2000

    def __post_init__(self):
        bad = []
        if not self.rel_tol > 0:
            bad.append("rel_tol must be > 0")
        if not self.abs_tol > 0:
            bad.append("abs_tol must be > 0")
        if not self.cutoff_lambda >= 10:
            bad.append("cutoff_lambda must be >= 10")
        if not (isinstance(self.max_subdivisions, int) and self.max_subdivisions >= 1):
            bad.append("max_subdivisions must be an integer >= 1")
        if bad:
            raise ValidationError(bad)


@dataclass(frozen=True)
class IntegralDiagnostics:
    evals: int = 0
    est_abs_error: float = 0.0
    subdivisions_used: int = 0
    cutoff_used: float = 0.0

    def __add__(self, other):
        return IntegralDiagnostics(
            evals=self.evals + other.evals,
            est_abs_error=self.est_abs_error + other.est_abs_error,
            subdivisions_used=self.subdivisions_used + other.subdivisions_used,
            cutoff_used=max(self.cutoff_used, other.cutoff_used),
        )


@dataclass(frozen=True)
class ThermoResult:
    """Free energy (units of hbar omega0) and entropy (units of k) at one temperature.

    ``free_energy_total`` is the sum of the zero-field part and the
    field correction; ``est_abs_error`` bounds the free-energy error and
    ``entropy_est_error`` the entropy error.
    """

    free_energy_total: float
    free_energy_zero_field: float
    delta_free_energy_field: float
    entropy: float
    est_abs_error: float
    integrand_evals: int
    entropy_est_error: float = 0.0
    diagnostics: IntegralDiagnostics = field(default_factory=IntegralDiagnostics)

    @classmethod
    def zero(cls):
        return cls(0.0, 0.0, 0.0, 0.0, 0.0, 0)
