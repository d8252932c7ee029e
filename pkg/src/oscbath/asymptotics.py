"""Low-temperature closed forms and a straight-line fit used to check the third law.

At low temperature only frequencies ``omega ~ theta`` contribute, where the
Ohmic spectral weight is ``3 gamma`` to leading order. Integrating gives
``F = -(pi/2) gamma theta^2`` and ``S = pi gamma theta``, independent of the
field.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = [
    "LOW_T_WINDOW",
    "DEFAULT_FIT_THETAS",
    "SlopeFit",
    "low_t_free_energy",
    "low_t_entropy",
    "fit_third_law_slope",
]

LOW_T_WINDOW = 0.05
# kept well below the window so the theta^3 correction does not bias the intercept
DEFAULT_FIT_THETAS = tuple(float(t) for t in np.geomspace(1e-4, 5e-3, 7))


def low_t_free_energy(gamma_tilde, theta):
    return -0.5 * math.pi * gamma_tilde * theta * theta


def low_t_entropy(gamma_tilde, theta):
    return math.pi * gamma_tilde * theta


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares line ``S = slope * theta + intercept``.

    ``intercept`` is the extrapolated zero-temperature entropy; the third
    law asks for it to vanish.
    """

    slope: float
    intercept: float
    residual_rms: float
    expected_slope: float
    n_samples: int

    @property
    def slope_rel_error(self):
        return abs(self.slope - self.expected_slope) / abs(self.expected_slope)

    def passes(self, rel_tol=1e-2, intercept_tol=1e-6):
        return self.slope_rel_error <= rel_tol and abs(self.intercept) < intercept_tol


def fit_third_law_slope(samples, theta_max=LOW_T_WINDOW, expected_slope=math.nan):
    """Fit a line to ``(theta, S)`` samples with ``theta <= theta_max``.

    Parameters
    ----------
    samples : iterable of (theta, S)
    theta_max : float
        Upper end of the low-temperature window, at most :data:`LOW_T_WINDOW`.
    expected_slope : float
        Reference slope, ``pi * gamma_tilde`` for an Ohmic bath.

    Raises
    ------
    ValidationError
        If ``theta_max`` exceeds the window or fewer than 3 samples remain.
    """
    if not (0 < theta_max <= LOW_T_WINDOW):
        raise ValidationError(f"theta_max must be in (0, {LOW_T_WINDOW}]")
    pts = [(float(t), float(s)) for t, s in samples if 0 <= t <= theta_max]
    if len(pts) < 3:
        raise ValidationError(f"need at least 3 samples with theta <= {theta_max}, got {len(pts)}")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    A = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (slope * x + intercept)
    return SlopeFit(
        slope=float(slope),
        intercept=float(intercept),
        residual_rms=float(np.sqrt(np.mean(resid**2))),
        expected_slope=float(expected_slope),
        n_samples=len(pts),
    )
