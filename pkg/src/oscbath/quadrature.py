"""Panelled quadrature for integrands with a weak singularity at the left end.

The first panel is handled by tanh-sinh (double-exponential) quadrature,
which is insensitive to logarithmic endpoint singularities. The remaining
panels go through a globally adaptive 15-point Gauss-Kronrod scheme that
always bisects the panel with the largest error estimate.

Integrands are called with 1-D float arrays and must return arrays of the
same shape.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError

__all__ = ["QuadResult", "tanh_sinh", "gauss_kronrod", "integrate_panels"]

# Kronrod 15-point nodes and weights on [-1, 1] with the embedded 7-point
# Gauss rule (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[-2::-1]])
_KW = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[-2::-1]])
_GW = np.zeros(15)
_GW[1:7:2] = _WG[:3]
_GW[7] = _WG[3]
_GW[9:15:2] = _WG[2::-1]

_EPS = np.finfo(float).eps
_TS_TMAX = 4.0


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_error: float
    evals: int
    subdivisions: int


def gauss_kronrod(func, a, b):
    """One G7/K15 step on ``[a, b]``.

    Returns ``(value, error, evals)`` with the QUADPACK error heuristic.
    """
    value, err, _floor = _gk(func, a, b)
    return value, err, 15


def _gk(func, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fx = np.asarray(func(c + h * _NODES), dtype=float)
    kron = h * np.dot(_KW, fx)
    gauss = h * np.dot(_GW, fx)
    resabs = abs(h) * np.dot(_KW, np.abs(fx))
    mean = kron / (2.0 * h) if h != 0 else 0.0
    resasc = abs(h) * np.dot(_KW, np.abs(fx - mean))
    err = abs(kron - gauss)
    if resasc != 0 and err != 0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    floor = 50 * _EPS * resabs
    err = max(floor, err)
    return float(kron), float(err), float(floor)


def _ts_nodes(a, b, t):
    """Tanh-sinh abscissae and weights on [a, b], clustering at both ends."""
    with np.errstate(over="ignore"):
        u = 0.5 * math.pi * np.sinh(t)
        offset = (b - a) / (1.0 + np.exp(-2.0 * u))
        w = (b - a) * 0.25 * math.pi * np.cosh(t) / np.cosh(u) ** 2
    keep = (offset > 0) & np.isfinite(w) & (w > 0)
    return a + offset[keep], w[keep]


def tanh_sinh(func, a, b, rel_tol, abs_tol, max_level=10):
    """Tanh-sinh quadrature on ``[a, b]`` by successive halving of the step.

    The integrand is never evaluated at the endpoints, so integrable
    endpoint singularities are allowed.

    Returns
    -------
    QuadResult
        ``subdivisions`` holds the refinement level reached.

    Raises
    ------
    ConvergenceError
        If successive levels still disagree at ``max_level``.
    """
    h = 1.0
    t = np.arange(-_TS_TMAX, _TS_TMAX + 0.5 * h, h)
    x, w = _ts_nodes(a, b, t)
    total = float(np.dot(w, func(x))) if x.size else 0.0
    evals = x.size
    estimate = h * total
    err = math.inf
    for level in range(1, max_level + 1):
        h *= 0.5
        t = np.arange(-_TS_TMAX + h, _TS_TMAX, 2.0 * h)
        x, w = _ts_nodes(a, b, t)
        if x.size:
            total += float(np.dot(w, func(x)))
            evals += x.size
        new = h * total
        err = abs(new - estimate)
        estimate = new
        if level >= 3 and err <= max(abs_tol, rel_tol * abs(estimate)):
            return QuadResult(estimate, err, evals, level)
    raise ConvergenceError(
        f"tanh-sinh on [{a:g}, {b:g}] not converged at level {max_level} (error {err:.3g})"
    )


def integrate_panels(func, breakpoints, rel_tol, abs_tol, max_subdivisions, singular_left=True):
    """Integrate ``func`` over ``[breakpoints[0], breakpoints[-1]]``.

    Parameters
    ----------
    func : callable
        Vectorized integrand.
    breakpoints : sequence of float
        Strictly increasing panel edges. Sharp features should sit on edges.
    rel_tol, abs_tol : float
        Global acceptance: total error <= max(abs_tol, rel_tol * |total|).
        An error made up only of rounding floors (``50 eps int |f|`` per
        panel) is also accepted, since bisection cannot reduce it.
    max_subdivisions : int
        Maximum number of bisections of Gauss-Kronrod panels.
    singular_left : bool
        Use tanh-sinh on the first panel.

    Raises
    ------
    ConvergenceError
        With a :class:`QuadResult` snapshot in ``diagnostics`` when the
        bisection budget runs out.
    """
    edges = [float(e) for e in breakpoints]
    if len(edges) < 2 or any(b <= a for a, b in zip(edges, edges[1:])):
        raise ValueError("breakpoints must be strictly increasing with at least two entries")

    done = []  # (left, right, value, error) of panels that are not refined further
    evals = 0
    if singular_left:
        ts = tanh_sinh(func, edges[0], edges[1], rel_tol, abs_tol)
        done.append((edges[0], edges[1], ts.value, ts.abs_error))
        evals += ts.evals
        edges = edges[1:]

    heap = []
    floor = 0.0
    for a, b in zip(edges, edges[1:]):
        v, e, fl = _gk(func, a, b)
        evals += 15
        floor += fl
        heapq.heappush(heap, (-e, a, b, v, fl))

    def totals():
        value = math.fsum([p[2] for p in sorted(done)] + [p[3] for p in sorted(heap, key=lambda p: p[1])])
        error = math.fsum([p[3] for p in done] + [-p[0] for p in heap])
        return value, error

    def accepted(value, error):
        return error <= max(abs_tol, rel_tol * abs(value), 1.01 * (ts_error + floor))

    ts_error = done[0][3] if done else 0.0
    value, error = totals()
    subdivisions = 0
    while True:
        if accepted(value, error):
            # running sums drift; confirm with exact sums
            value, error = totals()
            if accepted(value, error):
                break
        if not heap or subdivisions >= max_subdivisions:
            value, error = totals()
            snap = QuadResult(value, error, evals, subdivisions)
            why = f"subdivision limit {max_subdivisions} reached" if heap else "panels cannot be refined"
            raise ConvergenceError(
                f"{why} with error {error:.3g} (value {value:.6g})",
                diagnostics=snap,
            )
        neg_e, a, b, v, fl = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            # interval cannot be split further in floating point
            done.append((a, b, v, -neg_e))
            continue
        value -= v
        error += neg_e
        floor -= fl
        for lo, hi in ((a, mid), (mid, b)):
            v2, e2, fl2 = _gk(func, lo, hi)
            evals += 15
            value += v2
            error += e2
            floor += fl2
            heapq.heappush(heap, (-e2, lo, hi, v2, fl2))
        subdivisions += 1

    return QuadResult(value, error, evals, subdivisions)
