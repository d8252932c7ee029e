"""Generalized susceptibility of the oscillator and the free-energy spectral weight.

Only the determinant of the 3x3 susceptibility tensor is needed for the
thermodynamics. With the field along a fixed axis it factorizes as::

    det alpha = alpha0**3 / (1 - (b * omega * alpha0)**2)
              = 1 / (lam * (lam - b*omega) * (lam + b*omega))

where ``lam = 1 - omega**2 - i omega mu(omega)`` and ``alpha0 = 1 / lam``.
The second form is what the analytic spectral weight differentiates.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .baths import Discrete, memory_derivative, memory_transform
from .errors import DomainError, NumericError

__all__ = [
    "ResponsePoint",
    "lambda_of",
    "alpha0",
    "det_alpha",
    "response_point",
    "spectral_weight",
    "zero_field_weight",
    "field_weight",
    "spectral_weight_numeric",
    "ohmic_bracket",
    "resonance_frequencies",
]


def _b(field):
    return getattr(field, "b", field)


def _real_positive(omega):
    w = np.asarray(omega, dtype=float)
    if np.any(~(w > 0)):
        raise DomainError("omega must be > 0")
    return w


def _unwrap(x):
    return x[()] if np.ndim(x) == 0 else x


@dataclass(frozen=True)
class ResponsePoint:
    omega: float
    lambda_val: complex
    alpha0_val: complex
    det_alpha_val: complex


def _lambda(bath, w):
    return 1.0 - w**2 - 1j * w * memory_transform(bath, w)


def _dlambda(bath, w):
    return -2.0 * w - 1j * memory_transform(bath, w) - 1j * w * memory_derivative(bath, w)


def lambda_of(bath, omega):
    """Inverse zero-field susceptibility ``-omega^2 + 1 - i omega mu(omega)``."""
    return _unwrap(_lambda(bath, _real_positive(omega)))


def alpha0(bath, omega):
    return _unwrap(1.0 / _lambda(bath, _real_positive(omega)))


def det_alpha(bath, field, omega):
    """Determinant of the susceptibility tensor in a field of cyclotron ratio ``b``.

    Raises
    ------
    NumericError
        If ``1 - (b omega alpha0)^2`` vanishes (only possible without damping).
    """
    w = _real_positive(omega)
    b = _b(field)
    a0 = 1.0 / _lambda(bath, w)
    denom = 1.0 - (b * w * a0) ** 2
    bad = ~np.isfinite(denom) | (denom == 0)
    if np.any(bad):
        where = np.atleast_1d(w)[np.atleast_1d(bad)][0]
        raise NumericError(f"det alpha is singular at omega = {where!r}")
    return _unwrap(a0**3 / denom)


def response_point(bath, field, omega):
    lam = complex(lambda_of(bath, omega))
    return ResponsePoint(float(omega), lam, 1.0 / lam, complex(det_alpha(bath, field, omega)))


def _log_derivatives(bath, b, w):
    """d/domega of ln(lam), ln(lam - b w), ln(lam + b w)."""
    lam = _lambda(bath, w)
    dlam = _dlambda(bath, w)
    minus = lam - b * w
    plus = lam + b * w
    if np.any(lam == 0) or np.any(minus == 0) or np.any(plus == 0):
        raise NumericError("det alpha is singular on the evaluation grid")
    return dlam / lam, (dlam - b) / minus, (dlam + b) / plus


def spectral_weight(bath, field, omega):
    """``Im d/domega ln det alpha(omega + i0)``, the free-energy integrand weight.

    Evaluated analytically for every shipped bath. For an Ohmic bath this
    equals :func:`ohmic_bracket`.
    """
    w = _real_positive(omega)
    d0, dm, dp = _log_derivatives(bath, _b(field), w)
    return _unwrap(-(d0 + dm + dp).imag)


def zero_field_weight(bath, omega):
    """``3 Im d/domega ln alpha0``: the weight with the field switched off."""
    w = _real_positive(omega)
    lam = _lambda(bath, w)
    return _unwrap(-3.0 * (_dlambda(bath, w) / lam).imag)


def field_weight(bath, field, omega):
    """``-Im d/domega ln[1 - (b omega alpha0)^2]``, the field-correction weight.

    Equals ``spectral_weight(b) - spectral_weight(0)``; computed without the
    subtraction so that it is accurate when the correction is small.
    """
    w = _real_positive(omega)
    b = _b(field)
    if b == 0:
        return _unwrap(np.zeros_like(w))
    d0, dm, dp = _log_derivatives(bath, b, w)
    return _unwrap(-(dm + dp - 2.0 * d0).imag)


def spectral_weight_numeric(bath, field, omega, rel_step=1e-6):
    """Central-difference estimate of the spectral weight.

    Uses ``Im ln[det(omega+h) / det(omega-h)] / 2h`` with
    ``h = rel_step * max(omega, 1)``, which avoids branch cuts of the
    complex logarithm. Independent of the analytic chain rule.
    """
    w = _real_positive(omega)
    h = rel_step * np.maximum(w, 1.0)
    if np.any(w - h <= 0):
        h = np.minimum(h, 0.5 * w)
    ratio = np.asarray(det_alpha(bath, field, w + h)) / np.asarray(det_alpha(bath, field, w - h))
    return _unwrap(np.angle(ratio) / (2.0 * h))


def ohmic_bracket(gamma_tilde, b, omega):
    """Closed-form Ohmic spectral weight: three Lorentzian-like terms."""
    w = np.asarray(omega, dtype=float)
    g = gamma_tilde
    num = g * (w**2 + 1.0)
    damp = (w * g) ** 2
    out = (
        num / ((w**2 - 1.0) ** 2 + damp)
        + num / ((w**2 - 1.0 + b * w) ** 2 + damp)
        + num / ((w**2 - 1.0 - b * w) ** 2 + damp)
    )
    return _unwrap(out)


def _undamped_roots(bath, shift):
    """Positive real roots of ``lam(omega) + shift*omega`` for a discrete bath without broadening.

    ``lam = 1 - w^2 + w^2 sum_j m_j w_j^2 / (w^2 - w_j^2)``; multiplying through
    by ``prod_j (w^2 - w_j^2)`` gives a polynomial in ``w``.
    """
    P = np.polynomial.Polynomial
    wj = bath.frequencies
    mw2 = bath.masses * wj**2
    factors = [P([-wk**2, 0.0, 1.0]) for wk in wj]
    prod_all = P([1.0])
    for fac in factors:
        prod_all = prod_all * fac
    poly = P([1.0, shift, -1.0]) * prod_all
    for j in range(len(wj)):
        others = P([1.0])
        for k, fac in enumerate(factors):
            if k != j:
                others = others * fac
        poly = poly + P([0.0, 0.0, mw2[j]]) * others
    roots = poly.roots()
    real = roots[np.abs(roots.imag) <= 1e-9 * np.maximum(1.0, np.abs(roots.real))].real
    return sorted(float(r) for r in real if r > 0)


def resonance_frequencies(bath, field):
    """Frequencies where the spectral weight can be sharply peaked.

    Used as quadrature breakpoints. For continuum baths these are the centres
    of the three Lorentzian terms; for a discrete bath they are the normal
    modes of the coupled system (with and without the field shifts) together
    with the bare bath frequencies.
    """
    b = _b(field)
    if isinstance(bath, Discrete):
        pts = set(float(w) for w in bath.frequencies)
        for shift in {0.0, b, -b}:
            pts.update(_undamped_roots(bath, shift))
    else:
        root = np.sqrt(b * b + 4.0)
        pts = {1.0, 0.5 * (root - b), 0.5 * (root + b)}
    return sorted(p for p in pts if p > 0)
