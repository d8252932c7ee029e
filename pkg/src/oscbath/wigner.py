"""Thermal Wigner distribution of an undamped oscillator and two entropy formulas.

Substituting ``2 pi hbar W`` for the density matrix in ``-Tr rho log rho``
gives an entropy that is only right in the classical limit; the exact
oscillator entropy vanishes as ``theta -> 0`` while the Wigner-based value
tends to ``1 - log 2``. Units: hbar = k = m = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core_types import QuadratureSpec
from .errors import ConvergenceError, ValidationError

__all__ = [
    "WignerParams",
    "WignerMoments",
    "wigner_params",
    "wigner_value",
    "wigner_moments",
    "entropy_wigner_closed",
    "entropy_wigner_numeric",
    "entropy_exact",
    "compare_entropies",
]

_SIGMAS = 8.0


def _check(omega_tilde, theta):
    bad = []
    if not (omega_tilde > 0 and math.isfinite(omega_tilde)):
        bad.append("omega_tilde must be > 0")
    if not (theta > 0 and math.isfinite(theta)):
        bad.append("theta must be > 0")
    if bad:
        raise ValidationError(bad)


@dataclass(frozen=True)
class WignerParams:
    """Parameters of ``W(q, p) = N exp(-a H)``.

    Attributes
    ----------
    a_inv : float
        ``1/a = (omega/2) coth(omega / 2 theta)``, also the mean energy.
    norm_n : float
        ``N = omega a / (2 pi)``.
    n1 : float
        ``N1 = 2 pi N = 2 tanh(omega / 2 theta)``.
    """

    omega_tilde: float
    theta: float
    a_inv: float
    norm_n: float
    n1: float

    @property
    def a(self):
        return 1.0 / self.a_inv

    @property
    def sigma_q(self):
        return math.sqrt(self.a_inv) / self.omega_tilde

    @property
    def sigma_p(self):
        return math.sqrt(self.a_inv)


def wigner_params(omega_tilde, theta):
    _check(omega_tilde, theta)
    t = math.tanh(omega_tilde / (2.0 * theta))
    a_inv = 0.5 * omega_tilde / t
    return WignerParams(
        omega_tilde=omega_tilde,
        theta=theta,
        a_inv=a_inv,
        norm_n=omega_tilde / (2.0 * math.pi * a_inv),
        n1=2.0 * t,
    )


def _hamiltonian(q, p, omega):
    return 0.5 * p**2 + 0.5 * (omega * q) ** 2


def wigner_value(q, p, params):
    """Evaluate ``W(q, p)``; broadcasts over array arguments."""
    h = _hamiltonian(np.asarray(q, dtype=float), np.asarray(p, dtype=float), params.omega_tilde)
    out = params.norm_n * np.exp(-params.a * h)
    return out[()] if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class WignerMoments:
    normalization: float
    mean_energy: float
    entropy: float
    est_abs_error: float
    nodes_per_axis: int


def _tensor_rule(params, n):
    x, w = np.polynomial.legendre.leggauss(n)
    lq, lp = _SIGMAS * params.sigma_q, _SIGMAS * params.sigma_p
    q, wq = lq * x, lq * w
    p, wp = lp * x, lp * w
    Q, P = np.meshgrid(q, p, indexing="ij")
    return Q, P, np.outer(wq, wp)


def _moments(params, n):
    Q, P, Wt = _tensor_rule(params, n)
    H = _hamiltonian(Q, P, params.omega_tilde)
    W = params.norm_n * np.exp(-params.a * H)
    log_term = np.log(params.n1) - params.a * H  # log(2 pi W), exact where W underflows
    S_dens = np.where(W > 0, -W * log_term, 0.0)
    return (
        float(np.sum(Wt * W)),
        float(np.sum(Wt * W * H)),
        float(np.sum(Wt * S_dens)),
    )


def wigner_moments(omega_tilde, theta, quad=None, start_nodes=32, max_nodes=1024):
    """Normalization, mean energy and Wigner entropy by 2-D Gauss-Legendre quadrature.

    The domain is ``|q| <= 8 sigma_q``, ``|p| <= 8 sigma_p``. The node count
    doubles until successive results agree; the neglected Gaussian tail is
    bounded analytically and included in ``est_abs_error``.
    """
    quad = quad if quad is not None else QuadratureSpec()
    params = wigner_params(omega_tilde, theta)
    n = start_nodes
    prev = _moments(params, n)
    # mass beyond 8 sigma on either axis, weighted by a bound on H and |log 2piW|
    bound = (1.0 + _SIGMAS**2) * (1.0 + params.a_inv + abs(math.log(params.n1)))
    tail = 4.0 * math.erfc(_SIGMAS / math.sqrt(2.0)) * bound
    err = math.inf
    while n < max_nodes:
        n *= 2
        cur = _moments(params, n)
        err = max(abs(c - p) for c, p in zip(cur, prev)) + tail
        scale = max(abs(c) for c in cur)
        if err <= max(quad.abs_tol, quad.rel_tol * scale):
            return WignerMoments(*cur, est_abs_error=err, nodes_per_axis=n)
        prev = cur
    raise ConvergenceError(f"Wigner quadrature not converged with {n} nodes per axis (error {err:.3g})")


def entropy_wigner_closed(omega_tilde, theta):
    """Wigner-substitution entropy ``log[coth(omega/2theta)/2] + 1``."""
    _check(omega_tilde, theta)
    y = omega_tilde / (2.0 * theta)
    # log(coth y / 2) = -log(2 tanh y)
    return 1.0 - math.log(2.0 * math.tanh(y))


def entropy_wigner_numeric(omega_tilde, theta, quad=None):
    """Numerical ``-int int W log(2 pi W) dq dp``; must agree with the closed form."""
    return wigner_moments(omega_tilde, theta, quad).entropy


def entropy_exact(omega_tilde, theta):
    """Exact oscillator entropy ``-log[2 sinh y] + y coth y`` with ``y = omega / 2theta``.

    ``theta = 0`` returns 0.
    """
    if not (omega_tilde > 0):
        raise ValidationError("omega_tilde must be > 0")
    if theta == 0:
        return 0.0
    _check(omega_tilde, theta)
    y = omega_tilde / (2.0 * theta)
    one_minus = -math.expm1(-2.0 * y)
    e2 = math.exp(-2.0 * y)
    log_term = math.log(one_minus) if 2.0 * y < math.log(2.0) else math.log1p(-e2)
    # rewritten so that both terms stay finite for large y
    return -log_term + 2.0 * y * e2 / one_minus


def compare_entropies(omega_tilde, theta_grid):
    """Rows ``(theta, S_exact, S_wigner, S_wigner - S_exact)`` over a positive grid."""
    grid = [float(t) for t in theta_grid]
    if not grid or any(not t > 0 for t in grid):
        raise ValidationError("theta grid must be nonempty and positive")
    rows = []
    for t in grid:
        exact = entropy_exact(omega_tilde, t)
        wig = entropy_wigner_closed(omega_tilde, t)
        rows.append((t, exact, wig, wig - exact))
    return rows
