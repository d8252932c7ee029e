"""Heat-bath models and their Fourier-transformed memory functions.

All frequencies are in units of the bare oscillator frequency and the
oscillator mass is 1, so an Ohmic bath has ``mu(omega) = gamma``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError

__all__ = [
    "Ohmic",
    "Drude",
    "Discrete",
    "DEFAULT_OMEGA_CUT",
    "DEFAULT_ETA",
    "memory_transform",
    "memory_derivative",
    "validate",
    "check_bath",
]

DEFAULT_OMEGA_CUT = 10.0
DEFAULT_ETA = 1e-6


def _positive(x):
    try:
        return math.isfinite(x) and x > 0
    except TypeError:
        return False


@dataclass(frozen=True)
class Ohmic:
    """Frequency-independent friction, ``mu(omega) = gamma_tilde``."""

    gamma_tilde: float

    kind = "ohmic"

    def violations(self):
        if not _positive(self.gamma_tilde):
            return ["gamma_tilde must be > 0"]
        return []

    def _mu(self, z):
        return np.full_like(z, self.gamma_tilde, dtype=complex)

    def _dmu(self, z):
        return np.zeros_like(z, dtype=complex)


@dataclass(frozen=True)
class Drude:
    """Ohmic friction with a Drude cutoff, ``mu(omega) = gamma / (1 - i omega / Omega)``."""

    gamma_tilde: float
    omega_cut_tilde: float = DEFAULT_OMEGA_CUT

    kind = "drude"

    def violations(self):
        bad = []
        if not _positive(self.gamma_tilde):
            bad.append("gamma_tilde must be > 0")
        if not _positive(self.omega_cut_tilde):
            bad.append("omega_cut_tilde must be > 0")
        return bad

    def _mu(self, z):
        return self.gamma_tilde / (1.0 - 1j * z / self.omega_cut_tilde)

    def _dmu(self, z):
        d = 1.0 - 1j * z / self.omega_cut_tilde
        return self.gamma_tilde * (1j / self.omega_cut_tilde) / d**2


@dataclass(frozen=True)
class Discrete:
    """Finite independent-oscillator bath.

    Parameters
    ----------
    modes : sequence of (mass, frequency) pairs
        Bath oscillator masses and frequencies, both in internal units.
    eta_tilde : float
        Finite broadening standing in for the ``i0+`` prescription on the
        real axis.
    """

    modes: tuple
    eta_tilde: float = DEFAULT_ETA

    kind = "discrete"

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(tuple(m) for m in self.modes))

    def violations(self):
        bad = []
        if len(self.modes) == 0:
            bad.append("modes must be nonempty")
        for i, mode in enumerate(self.modes):
            if len(mode) != 2:
                bad.append(f"mode {i} must be a (mass, frequency) pair")
                continue
            m, w = mode
            if not _positive(m):
                bad.append(f"mode {i}: mass must be > 0")
            if not _positive(w):
                bad.append(f"mode {i}: frequency must be > 0")
        if not _positive(self.eta_tilde):
            bad.append("eta_tilde must be > 0")
        return bad

    @property
    def masses(self):
        return np.array([m for m, _ in self.modes], dtype=float)

    @property
    def frequencies(self):
        return np.array([w for _, w in self.modes], dtype=float)

    def _broaden(self, z):
        return np.where(z.imag == 0, z + 1j * self.eta_tilde, z)

    def _mu(self, z):
        zh = self._broaden(z)[..., None]
        mw2 = self.masses * self.frequencies**2
        wj = self.frequencies
        return 0.5j * np.sum(mw2 * (1.0 / (zh - wj) + 1.0 / (zh + wj)), axis=-1)

    def _dmu(self, z):
        zh = self._broaden(z)[..., None]
        mw2 = self.masses * self.frequencies**2
        wj = self.frequencies
        return -0.5j * np.sum(mw2 * (1.0 / (zh - wj) ** 2 + 1.0 / (zh + wj) ** 2), axis=-1)


def validate(bath):
    """Return the list of invariant violations of ``bath`` (empty if valid)."""
    if not isinstance(bath, (Ohmic, Drude, Discrete)):
        return [f"unsupported bath type {type(bath).__name__}"]
    return bath.violations()


def check_bath(bath):
    """Raise :class:`ValidationError` if ``bath`` is invalid."""
    bad = validate(bath)
    if bad:
        raise ValidationError(bad)
    return bath


def _as_upper_half_plane(omega):
    z = np.asarray(omega, dtype=complex)
    if np.any(z.imag < 0):
        raise DomainError("memory function is defined for Im(omega) >= 0 only")
    return z


def memory_transform(bath, omega):
    """Evaluate the transformed memory function ``mu(omega)``.

    Parameters
    ----------
    bath : Ohmic, Drude or Discrete
    omega : complex or array_like
        Frequencies in the closed upper half plane.

    Returns
    -------
    complex or ndarray of complex
    """
    z = _as_upper_half_plane(omega)
    out = bath._mu(z)
    return out[()] if np.ndim(out) == 0 else out


def memory_derivative(bath, omega):
    """Evaluate ``d mu / d omega`` analytically."""
    z = _as_upper_half_plane(omega)
    out = bath._dmu(z)
    return out[()] if np.ndim(out) == 0 else out
