"""Independent numerical ground truth for every closed-form check.

One adaptive initial-value integrator (embedded Dormand-Prince 5(4) pair
with cubic-Hermite dense output), one central-difference residual
evaluator, and one singularity-tolerant quadrature (tanh-sinh double
exponential).  Deliberately a single rule each: verification simplicity
beats configurability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import SampledProfile


@dataclass
class IVPProblem:
    """An initial-value problem y'(q) = rhs(y, q) on a coordinate span."""

    dimension: int
    rhs: Callable
    y0: Sequence[float]
    span: tuple[float, float]
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = math.inf

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.span[0] == self.span[1]:
            raise ValueError("degenerate coordinate span")
        y0 = np.asarray(self.y0, dtype=float)
        if y0.shape != (self.dimension,):
            raise ValueError("initial state size does not match dimension")
        self.y0 = y0


@dataclass
class ResidualReport:
    """Worst pointwise residual of a sampled profile against an ODE form."""

    max_abs: float
    location: float
    step: float


# Dormand-Prince 5(4) tableau.  Fifth-order solution is propagated; the
# embedded fourth-order difference provides the local error estimate.
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)
_DP_E = _DP_B5 - _DP_B4


class IVPSolution:
    """Accepted steps plus a cubic-Hermite dense interpolant."""

    def __init__(self, ts, ys, fs):
        self.ts = np.asarray(ts)
        self.ys = np.asarray(ys)
        self.fs = np.asarray(fs)
        self._sign = 1.0 if self.ts[-1] >= self.ts[0] else -1.0

    def __call__(self, t):
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        ts = self.ts * self._sign
        tq = t_arr * self._sign
        if np.any(tq < ts[0] - 1e-12) or np.any(tq > ts[-1] + 1e-12):
            raise ValueError("dense evaluation outside the integrated span")
        idx = np.clip(np.searchsorted(ts, tq, side="right") - 1, 0, len(ts) - 2)
        t0, t1 = self.ts[idx], self.ts[idx + 1]
        h = t1 - t0
        s = np.where(h != 0, (t_arr - t0) / np.where(h != 0, h, 1.0), 0.0)
        y0, y1 = self.ys[idx], self.ys[idx + 1]
        f0, f1 = self.fs[idx], self.fs[idx + 1]
        s = s[:, None]
        hcol = h[:, None]
        h00 = 2 * s**3 - 3 * s**2 + 1
        h10 = s**3 - 2 * s**2 + s
        h01 = -2 * s**3 + 3 * s**2
        h11 = s**3 - s**2
        out = h00 * y0 + h10 * hcol * f0 + h01 * y1 + h11 * hcol * f1
        return out[0] if np.isscalar(t) or np.asarray(t).ndim == 0 else out

    def profiles(self, coordinate: str, grid=None, names=None) -> list[SampledProfile]:
        """Dense-sample each state component onto a SampledProfile."""
        grid = self.ts if grid is None else np.asarray(grid, dtype=float)
        values = self(grid)
        values = np.atleast_2d(values)
        ncomp = self.ys.shape[1]
        names = names or [f"y{i}" for i in range(ncomp)]
        return [
            SampledProfile(coordinate, grid, values[:, i], {"component": names[i]})
            for i in range(ncomp)
        ]


def integrate_ivp(p: IVPProblem) -> IVPSolution:
    """Adaptive Dormand-Prince 5(4) integration with dense output.

    The local error estimate per step is kept below
    rel_tol * |y| + abs_tol componentwise.
    """
    t0, t1 = float(p.span[0]), float(p.span[1])
    direction = 1.0 if t1 > t0 else -1.0
    span = abs(t1 - t0)

    t = t0
    y = p.y0.astype(float).copy()
    f = np.asarray(p.rhs(y, t), dtype=float)
    if f.shape != y.shape:
        raise ValueError("rhs output size does not match state dimension")

    # initial step from the scale of y and f
    scale0 = p.abs_tol + p.rel_tol * np.abs(y)
    d0 = np.max(np.abs(y) / scale0)
    d1 = np.max(np.abs(f) / scale0)
    h = 0.01 * span if d1 == 0 or d0 == 0 else min(0.01 * span, 0.01 * d0 / d1)
    h = min(h, p.max_step, span)

    ts, ys, fs = [t], [y.copy()], [f.copy()]
    k = np.empty((7, p.dimension))
    min_step = 1e-14 * max(span, abs(t0), 1.0)

    while (t1 - t) * direction > 0:
        h = min(h, abs(t1 - t), p.max_step)
        if h < min_step:
            raise RuntimeError(f"integration stalled near coordinate {t!r}")
        hd = h * direction

        k[0] = f
        for i in range(1, 7):
            yi = y + hd * np.dot(np.asarray(_DP_A[i]), k[:i])
            k[i] = p.rhs(yi, t + _DP_C[i] * hd)
        y_new = y + hd * np.dot(_DP_B5, k)
        err_vec = hd * np.dot(_DP_E, k)
        scale = p.abs_tol + p.rel_tol * np.maximum(np.abs(y), np.abs(y_new))
        err = np.max(np.abs(err_vec) / scale)

        if err <= 1.0 or h <= min_step:
            t = t + hd
            y = y_new
            f = k[6].copy()  # FSAL: last stage is rhs at (t+h, y_new)
            ts.append(t)
            ys.append(y.copy())
            fs.append(f.copy())
        factor = 0.9 * (max(err, 1e-16)) ** (-0.2)
        h = h * min(5.0, max(0.2, factor))

    return IVPSolution(np.array(ts), np.array(ys), np.array(fs))


def fd_residual(candidate: SampledProfile, ode_form: Callable) -> ResidualReport:
    """Max residual of ode_form(y, y', y'', q) over interior grid points.

    First and second derivatives come from second-order central
    differences; the candidate grid must be uniform with at least 5 points.
    """
    if len(candidate.grid) < 5:
        raise ValueError("residual evaluation needs at least 5 grid points")
    h = candidate.step()
    y = candidate.values
    q = candidate.grid
    dy = (y[2:] - y[:-2]) / (2.0 * h)
    d2y = (y[2:] - 2.0 * y[1:-1] + y[:-2]) / (h * h)
    vals = np.abs(ode_form(y[1:-1], dy, d2y, q[1:-1]))
    i = int(np.argmax(vals))
    return ResidualReport(max_abs=float(vals[i]), location=float(q[1:-1][i]), step=h)


_TS_TMAX = 6.8  # beyond this the double-exponential weight underflows


def quad_singular(
    f: Callable,
    a: float,
    b: float,
    endpoint_order: float = 0.0,
    tol: float = 1e-10,
    max_level: int = 12,
    offset_aware: bool = False,
) -> float:
    """Tanh-sinh quadrature of f on (a, b), absolute tolerance ``tol``.

    Integrable endpoint singularities (declared via endpoint_order, e.g.
    -0.5 for inverse square root behaviour) are handled by the double
    exponential clustering of nodes.  Abscissae are generated as exact
    offsets from the endpoints; with ``offset_aware=True`` the integrand
    is called as ``f(x, d)`` where ``d`` is the signed distance to the
    nearer endpoint (positive: x = a + d, negative: x = b + d), which
    lets integrands like 1/sqrt(1 - x*x) stay accurate at offsets far
    below float spacing around a nonzero endpoint.
    """
    if endpoint_order <= -1.0:
        raise ValueError("endpoint_order must exceed -1 for an integrable singularity")
    if a == b:
        return 0.0
    if b < a:
        return -quad_singular(f, b, a, endpoint_order, tol, max_level, offset_aware)

    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)

    def node(tk):
        # x = mid + half*tanh(u) through the offset from the nearer
        # endpoint: 1 - |tanh(u)| = 2 e2/(1+e2) with e2 = exp(-2|u|),
        # and sech^2(u) = 4 e2/(1+e2)^2 so nothing overflows
        u = 0.5 * math.pi * math.sinh(tk)
        e2 = math.exp(-2.0 * abs(u))
        w = half * 0.5 * math.pi * math.cosh(tk) * 4.0 * e2 / (1.0 + e2) ** 2
        if w == 0.0:
            return None, 0.0, 0.0
        offset = half * 2.0 * e2 / (1.0 + e2)
        if tk > 0:
            return b - offset, -offset, w
        if tk < 0:
            return a + offset, offset, w
        return mid, mid - a, w

    def level_sum(h, only_odd):
        total = 0.0
        kk = 1 if only_odd else 0
        step = 2 if only_odd else 1
        while kk * h <= _TS_TMAX:
            tk = kk * h
            for sgn in (1.0,) if kk == 0 else (1.0, -1.0):
                x, d, w = node(sgn * tk)
                if x is None:
                    continue
                if offset_aware:
                    fx = f(x, d)
                else:
                    # skip nodes that rounded exactly onto an endpoint
                    if x == a or x == b:
                        continue
                    fx = f(x)
                if math.isfinite(fx):
                    total += w * fx
            kk += step
        return total

    h = 1.0
    history = [h * level_sum(h, only_odd=False)]
    for level in range(1, max_level + 1):
        h *= 0.5
        history.append(0.5 * history[-1] + h * level_sum(h, only_odd=True))
        if level >= 2 and abs(history[-1] - history[-2]) <= tol:
            return history[-1]
    raise RuntimeError("quadrature budget exceeded: tanh-sinh did not converge")
