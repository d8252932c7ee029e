"""Free energy and entropy of the damped oscillator as single frequency integrals.

The free energy ascribed to the oscillator is::

    F(theta, b) = (1/pi) int_0^inf f(omega, theta) W_b(omega) domega

with ``f`` the free energy of a single oscillator (zero-point term
omitted) and ``W_b`` the spectral weight from :mod:`.susceptibility`. It is
split into a zero-field part and a field correction. The entropy is
``-dF/dtheta``, obtained by differentiating ``f`` under the integral.
"""
from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from .baths import check_bath
from .core_types import FieldSpec, IntegralDiagnostics, QuadratureSpec, ThermoPoint, ThermoResult
from .errors import ConvergenceError, ValidationError
from .quadrature import integrate_panels
from .susceptibility import field_weight, resonance_frequencies, zero_field_weight

__all__ = [
    "f_single",
    "df_dtheta",
    "integration_breakpoints",
    "free_energy",
    "entropy",
    "sweep",
]

_LARGE_X = 700.0


def f_single(omega, theta):
    """``theta * log(1 - exp(-omega/theta))``, the single-oscillator free energy.

    Accurate for every ``omega/theta > 0``; always <= 0.
    """
    w = np.asarray(omega, dtype=float)
    x = w / theta
    with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
        e = np.exp(-x)
        small = np.log(-np.expm1(-np.minimum(x, math.log(2.0))))
        mid = np.log1p(-e)
        out = np.where(x < math.log(2.0), small, mid)
        out = np.where(x > _LARGE_X, -e, out)
    out = theta * out
    return out[()] if out.ndim == 0 else out


def df_dtheta(omega, theta):
    """``d f / d theta = log(1 - e^-x) - x / (e^x - 1)`` with ``x = omega/theta``.

    Always <= 0, so ``-df/dtheta`` is the (nonnegative) entropy of a single
    oscillator.
    """
    w = np.asarray(omega, dtype=float)
    x = w / theta
    with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
        e = np.exp(-x)
        log_term = np.where(
            x < math.log(2.0),
            np.log(-np.expm1(-np.minimum(x, math.log(2.0)))),
            np.log1p(-e),
        )
        bose = x * e / (-np.expm1(-x))
        out = np.where(x > _LARGE_X, -(x + 1.0) * e, log_term - bose)
    return out[()] if out.ndim == 0 else out


def _cutoff(bath, field, theta, quad):
    peaks = resonance_frequencies(bath, field)
    return max(quad.cutoff_lambda * max(theta, 1.0), 2.0 * max(peaks, default=1.0))


def integration_breakpoints(bath, field, theta, quad):
    """Panel edges for the frequency integral.

    ``0``, the end of the tanh-sinh panel, a few multiples of ``theta`` for
    the Bose tail, every resonance centre, and the cutoff.
    """
    cut = _cutoff(bath, field, theta, quad)
    peaks = [p for p in resonance_frequencies(bath, field) if p < cut]
    first = min([theta] + [0.5 * p for p in peaks])
    pts = {first, cut}
    pts.update(p for p in peaks if p > first)
    pts.update(k * theta for k in (1.0, 5.0, 20.0) if first < k * theta < cut)
    return [0.0] + sorted(pts)


def _tail_bound(weight_at_cut, theta, cut, entropy):
    """Bound on the integral beyond the cutoff.

    Uses ``|log(1-y)| <= y/(1-y)`` with ``y = exp(-omega/theta)`` and a
    weight no larger than twice its value at the cutoff.
    """
    xc = cut / theta
    if xc > _LARGE_X:
        return 0.0
    y = math.exp(-xc)
    if entropy:
        mass = theta * (2.0 + xc) * y / (1.0 - y)
    else:
        mass = theta * theta * y / (1.0 - y)
    return 2.0 * abs(weight_at_cut) * mass / math.pi


def _prepare(bath, field, point, quad):
    check_bath(bath)
    field = field if isinstance(field, FieldSpec) else FieldSpec(float(field))
    point = point if isinstance(point, ThermoPoint) else ThermoPoint(float(point))
    quad = quad if quad is not None else QuadratureSpec()
    return field, point, quad


def _integrate(kernel, weight, bath, field, theta, quad, entropy, scale=0.0):
    """``(1/pi) int kernel * weight``; ``scale`` sets an absolute tolerance floor.

    The field correction is small and sign-changing, so its tolerance is
    taken relative to the zero-field magnitude passed in ``scale``.
    """
    abs_tol = max(quad.abs_tol, quad.rel_tol * math.pi * abs(scale))
    edges = integration_breakpoints(bath, field, theta, quad)
    cut = edges[-1]

    def integrand(w):
        return kernel(w, theta) * weight(w)

    try:
        res = integrate_panels(integrand, edges, quad.rel_tol, abs_tol, quad.max_subdivisions)
    except ConvergenceError as exc:
        snap = exc.diagnostics
        diag = IntegralDiagnostics(
            evals=getattr(snap, "evals", 0),
            est_abs_error=getattr(snap, "abs_error", math.inf) / math.pi,
            subdivisions_used=getattr(snap, "subdivisions", 0),
            cutoff_used=cut,
        )
        raise ConvergenceError(f"theta={theta!r}: {exc}", diagnostics=diag) from None
    tail = _tail_bound(float(weight(np.array([cut]))[0]), theta, cut, entropy)
    diag = IntegralDiagnostics(
        evals=res.evals,
        est_abs_error=res.abs_error / math.pi + tail,
        subdivisions_used=res.subdivisions,
        cutoff_used=cut,
    )
    return res.value / math.pi, diag


def _entropy_parts(bath, field, theta, quad):
    s0, d0 = _integrate(df_dtheta, lambda w: zero_field_weight(bath, w), bath, field, theta, quad, True)
    if field.b == 0:
        return -s0, d0
    s1, d1 = _integrate(
        df_dtheta, lambda w: field_weight(bath, field, w), bath, field, theta, quad, True, scale=s0
    )
    return -(s0 + s1), d0 + d1


def free_energy(bath, field=FieldSpec(), point=ThermoPoint(0.0), quad=None):
    """Free energy and entropy of the oscillator at one temperature.

    Parameters
    ----------
    bath : Ohmic, Drude or Discrete
    field : FieldSpec or float
        Cyclotron ratio ``b``.
    point : ThermoPoint or float
        Dimensionless temperature.
    quad : QuadratureSpec, optional

    Returns
    -------
    ThermoResult
        ``theta = 0`` returns exact zeros without integrating.

    Raises
    ------
    ValidationError
        Invalid bath or parameters.
    ConvergenceError
        Quadrature failed; ``diagnostics`` describes the failing integral.
    """
    field, point, quad = _prepare(bath, field, point, quad)
    theta = point.theta
    if theta == 0:
        return ThermoResult.zero()

    f0, d0 = _integrate(f_single, lambda w: zero_field_weight(bath, w), bath, field, theta, quad, False)
    if field.b == 0:
        f1, d1 = 0.0, IntegralDiagnostics(cutoff_used=d0.cutoff_used)
    else:
        f1, d1 = _integrate(
            f_single, lambda w: field_weight(bath, field, w), bath, field, theta, quad, False, scale=f0
        )
    s, ds = _entropy_parts(bath, field, theta, quad)
    diag = d0 + d1
    return ThermoResult(
        free_energy_total=f0 + f1,
        free_energy_zero_field=f0,
        delta_free_energy_field=f1,
        entropy=s,
        est_abs_error=diag.est_abs_error,
        integrand_evals=diag.evals + ds.evals,
        entropy_est_error=ds.est_abs_error,
        diagnostics=replace(diag, evals=diag.evals + ds.evals),
    )


def entropy(bath, field=FieldSpec(), point=ThermoPoint(0.0), quad=None):
    """Entropy ``S/k = -dF/dtheta`` by differentiation under the integral.

    ``theta = 0`` returns 0 without integrating.
    """
    field, point, quad = _prepare(bath, field, point, quad)
    if point.theta == 0:
        return 0.0
    s, _ = _entropy_parts(bath, field, point.theta, quad)
    return s


def sweep(bath, field=FieldSpec(), thetas=(), quad=None):
    """Evaluate :func:`free_energy` on a strictly increasing temperature grid.

    Returns a list of ``(theta, ThermoResult)``. On a quadrature failure the
    raised :class:`ConvergenceError` carries the results computed so far in
    ``partial``.
    """
    thetas = [float(t) for t in thetas]
    bad = []
    if not thetas:
        bad.append("thetas must be nonempty")
    if any(not (t >= 0 and math.isfinite(t)) for t in thetas):
        bad.append("thetas must be finite and >= 0")
    if any(b <= a for a, b in zip(thetas, thetas[1:])):
        bad.append("thetas must be strictly increasing (no duplicates)")
    if bad:
        raise ValidationError(bad)
    check_bath(bath)

    out = []
    for t in thetas:
        try:
            out.append((t, free_energy(bath, field, ThermoPoint(t), quad)))
        except ConvergenceError as exc:
            raise ConvergenceError(str(exc), diagnostics=exc.diagnostics, partial=out) from None
    return out
