"""Ermakov-Pinney machinery for the separated amplitude sectors.

A linear Sturm-Liouville equation y'' + Omega^2(q) y = 0 with two
independent solutions (u1, u2) of constant Wronskian W admits the Pinney
partner amplitude

    sigma(q) = sqrt(A u1^2 + B u2^2 + 2 D u1 u2),

which solves sigma'' + Omega^2 sigma = c^2 / sigma^3 whenever
A*B - D^2 = c^2 / W^2.  Along any linear solution y the pair carries the
conserved Ermakov-Lewis quantity

    I = (1/2) [ (sigma y' - sigma' y)^2 + k (y / sigma)^2 ],  k = c^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import SampledProfile
from .oracle import fd_residual


@dataclass
class LinearPair:
    """Two independent solutions of one linear equation, with derivatives."""

    u1: Callable
    u2: Callable
    du1: Callable
    du2: Callable
    wronskian: float

    def wronskian_at(self, q):
        return self.u1(q) * self.du2(q) - self.u2(q) * self.du1(q)


@dataclass(frozen=True)
class EPCoefficients:
    """Quadratic-form weights (A, B, D) tied to flux magnitude c and Wronskian W."""

    A: float
    B: float
    D: float
    c: float
    W: float

    def __post_init__(self):
        if self.W == 0:
            raise ValueError("Wronskian must be nonzero")
        det = self.A * self.B - self.D * self.D
        target = (self.c / self.W) ** 2
        scale = max(abs(det), abs(target), 1e-300)
        if abs(det - target) > 1e-12 * scale:
            raise ValueError("EP coefficients violate A*B - D^2 = c^2/W^2")
        if not (self.A > 0 or self.B > 0):
            raise ValueError("EP coefficients give a trivial amplitude (need A > 0 or B > 0)")


def ep_coefficients(A: float, B: float, D: float, wronskian: float) -> EPCoefficients:
    """Build EPCoefficients with c fixed by the constraint c = |W| sqrt(AB - D^2)."""
    det = A * B - D * D
    if det < 0:
        raise ValueError("A*B - D^2 must be nonnegative for a real flux constant")
    return EPCoefficients(A, B, D, abs(wronskian) * np.sqrt(det), wronskian)


@dataclass
class FrequencyProfile:
    """Effective Sturm-Liouville frequency Omega^2(q) of one sector."""

    omega_sq: Callable


def pinney_amplitude(pair: LinearPair, coef: EPCoefficients) -> Callable:
    """Return sigma(q) = sqrt(A u1^2 + B u2^2 + 2 D u1 u2).

    A negative radicand anywhere on the requested points signals an
    inadmissible coefficient choice and raises; it is never clamped.
    """
    _check_pair_coef(pair, coef)

    def sigma(q):
        v1, v2 = pair.u1(q), pair.u2(q)
        radicand = coef.A * v1 * v1 + coef.B * v2 * v2 + 2.0 * coef.D * v1 * v2
        if np.any(np.asarray(radicand) < 0):
            raise ValueError("amplitude radicand negative: inadmissible EP coefficients")
        return np.sqrt(radicand)

    return sigma


def pinney_derivative(pair: LinearPair, coef: EPCoefficients) -> Callable:
    """Analytic sigma'(q) of the Pinney amplitude (no finite differences)."""
    _check_pair_coef(pair, coef)
    sigma = pinney_amplitude(pair, coef)

    def dsigma(q):
        v1, v2 = pair.u1(q), pair.u2(q)
        d1, d2 = pair.du1(q), pair.du2(q)
        num = coef.A * v1 * d1 + coef.B * v2 * d2 + coef.D * (d1 * v2 + v1 * d2)
        return num / sigma(q)

    return dsigma


def _check_pair_coef(pair: LinearPair, coef: EPCoefficients):
    if abs(coef.W - pair.wronskian) > 1e-9 * max(1.0, abs(pair.wronskian)):
        raise ValueError("EP coefficients were built for a different Wronskian")


def ermakov_invariant(y, dy, sigma, dsigma, k):
    """Ermakov-Lewis invariant I = (1/2)[(sigma dy - dsigma y)^2 + k (y/sigma)^2]."""
    if np.any(np.asarray(sigma) == 0):
        raise ValueError("invariant undefined at amplitude node (sigma = 0)")
    cross = sigma * dy - dsigma * y
    return 0.5 * (cross * cross + k * (y / sigma) ** 2)


def pinney_residual(sigma: Callable, freq: FrequencyProfile, c: float, grid) -> float:
    """Max |sigma'' + Omega^2 sigma - c^2/sigma^3| over interior grid points.

    Central second-order differences on a uniform grid of >= 5 points;
    the reported value converges as O(h^2) for a true Pinney amplitude.
    """
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(sigma(grid), dtype=float)
    if np.any(values == 0):
        raise ValueError("node inside residual window (sigma = 0 on grid)")
    profile = SampledProfile("q", grid, values)
    c_sq = c * c

    def ode_form(y, dy, d2y, q):
        return d2y + freq.omega_sq(q) * y - c_sq / y**3

    return fd_residual(profile, ode_form).max_abs
