"""Nonzero sectorial currents: continuity first integrals and azimuthal flow.

The stationary continuity equation splits into sectorial balance relations
with constants (C_r, C_theta, C_z) constrained by C_r + C_theta + C_z = 0.
The azimuthal sector couples to the enclosed flux ratio phi = beta r^2 and
is handled in the shifted-momentum variable pi = dS/dtheta - hbar*phi and
the logarithmic derivative w = Theta'/Theta:

    pi' = r C_theta - 2 w pi
    w'  = (pi^2 - Lambda)/hbar^2 - w^2,     Lambda = l^2 + phi^2.

For C_theta = 0 the flow closes: with discriminant
Delta = E_pi^2 - 64 Lambda / hbar^2 > 0,

    pi(theta) = 8 Lambda / (E_pi + sqrt(Delta) sin(2 sqrt(Lambda)(theta - theta0)))

and the azimuthal action integrates to an unwrapped arctan plus the linear
flux term.  The C_theta != 0 structure is exposed through the first-order
branch equation for F = (pi'/pi)^2 * pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import PhysParams, SampledProfile
from .oracle import quad_singular


@dataclass(frozen=True)
class CurrentBranch:
    """Sectorial current constants with the conservation constraint."""

    C_r: float
    C_theta: float
    C_z: float

    def __post_init__(self):
        total = self.C_r + self.C_theta + self.C_z
        scale = max(1.0, abs(self.C_r), abs(self.C_theta), abs(self.C_z))
        if abs(total) > 1e-14 * scale:
            raise ValueError("sectorial currents must satisfy C_r + C_theta + C_z = 0")


@dataclass
class AzimuthalState:
    """Point (pi_theta, w) of the azimuthal flow."""

    pi_theta: float
    w: float


@dataclass(frozen=True)
class FluxContext:
    """Radius, angular index and integration constants of the azimuthal flow.

    phi = beta r^2 and Lambda = l^2 + phi^2 are always recomputed from the
    primaries.
    """

    r: float
    l: int
    beta: float
    E_pi: float
    theta0: float = 0.0
    hbar: float = 1.0

    @property
    def phi(self) -> float:
        return self.beta * self.r * self.r

    @property
    def Lambda(self) -> float:
        return self.l * self.l + self.phi * self.phi

    @property
    def discriminant(self) -> float:
        return self.E_pi**2 - 64.0 * self.Lambda / self.hbar**2


def flux_context_from_lambda(
    lam: float, l: int, E_pi: float, theta0: float, params: PhysParams
) -> FluxContext:
    """Build a FluxContext realising a requested Lambda = l^2 + phi^2.

    The radius follows from phi = sqrt(Lambda - l^2) = beta r^2.
    """
    if lam < l * l:
        raise ValueError("Lambda must be >= l^2")
    phi = math.sqrt(lam - l * l)
    if params.beta <= 0 and phi > 0:
        raise ValueError("positive flux ratio needs beta > 0")
    r = math.sqrt(phi / params.beta) if phi > 0 else 0.0
    return FluxContext(r=r, l=l, beta=params.beta, E_pi=E_pi, theta0=theta0, hbar=params.hbar)


def uw_flow(state: AzimuthalState, ctx: FluxContext, C_theta: float):
    """Right side of the coupled azimuthal system (pi', w')."""
    pi, w = state.pi_theta, state.w
    dpi = ctx.r * C_theta - 2.0 * w * pi
    dw = (pi * pi - ctx.Lambda) / ctx.hbar**2 - w * w
    return dpi, dw


def nonlinpie_residual(pi, dpi, d2pi, ctx: FluxContext, C_theta: float):
    """Second-order master expression for the shifted momentum.

    3 pi'^2 - 2 pi pi'' - 4 r^2 C pi' - (4/hbar^2) pi^4 + 4 Lambda pi^2 + r^4 C^2;
    zero along solutions.
    """
    hb2 = ctx.hbar**2
    r2 = ctx.r * ctx.r
    return (
        3.0 * dpi * dpi
        - 2.0 * pi * d2pi
        - 4.0 * r2 * C_theta * dpi
        - 4.0 * pi**4 / hb2
        + 4.0 * ctx.Lambda * pi * pi
        + (r2 * C_theta) ** 2
    )


def _require_positive_discriminant(ctx: FluxContext) -> float:
    delta = ctx.discriminant
    if delta <= 0:
        raise ValueError("discriminant branch not covered by closed form (Delta_pi <= 0)")
    return delta


def pi_theta_closed(theta, ctx: FluxContext):
    """Closed-form shifted momentum on the zero-azimuthal-current branch."""
    delta = _require_positive_discriminant(ctx)
    lam = ctx.Lambda
    u = 2.0 * math.sqrt(lam) * (np.asarray(theta, dtype=float) - ctx.theta0)
    denom = ctx.E_pi + math.sqrt(delta) * np.sin(u)
    if np.any(np.abs(denom) < 1e-12 * max(abs(ctx.E_pi), 1.0)):
        raise ZeroDivisionError("momentum pole: closed-form denominator vanished")
    out = 8.0 * lam / denom
    return out if np.asarray(theta).ndim else float(out)


def s_theta_closed(theta, ctx: FluxContext, s0: float = 0.0):
    """Azimuthal action S(theta); the arctan branch is unwrapped.

    S = hbar phi theta
      + hbar atan[(E_pi tan(sqrt(Lambda)(theta-theta0)) + sqrt(Delta)) / (8 sqrt(Lambda)/hbar)]
      + hbar pi k(u) + s0,   u = sqrt(Lambda)(theta - theta0),

    where k(u) counts the tangent poles crossed.  k is recovered from
    round((u - atan(tan u))/pi) so the branch count always agrees with
    the sign the floating tangent actually took, even half an ulp from a
    pole.
    """
    delta = _require_positive_discriminant(ctx)
    lam = ctx.Lambda
    hb = ctx.hbar
    th = np.asarray(theta, dtype=float)
    u = math.sqrt(lam) * (th - ctx.theta0)
    scale = 8.0 * math.sqrt(lam) / hb
    tan_u = np.tan(u)
    base = np.arctan((ctx.E_pi * tan_u + math.sqrt(delta)) / scale)
    wrap = np.round((u - np.arctan(tan_u)) / math.pi)
    out = hb * ctx.phi * th + hb * (base + math.pi * wrap) + s0
    return out if np.asarray(theta).ndim else float(out)


def f_branch_flow(F: float, pi: float, ctx: FluxContext, C_theta: float, sign: int) -> float:
    """dF/dpi of the first-order branch equation, F = (pi'/pi)^2 pi.

    sign = +1 selects the branch pi'/pi = +sqrt(F/pi) (the square-root
    term enters with a minus), sign = -1 the mirror branch.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if pi == 0:
        raise ZeroDivisionError("momentum-axis singularity (pi = 0)")
    ratio = F / pi
    if ratio < 0:
        raise ValueError("branch violation: F/pi must be nonnegative")
    hb2 = ctx.hbar**2
    r2 = ctx.r * ctx.r
    return (
        2.0 * F / pi
        - sign * (4.0 * r2 * C_theta / pi) * math.sqrt(ratio)
        - 4.0 * pi * pi / hb2
        + 4.0 * ctx.Lambda
        + (r2 * C_theta / pi) ** 2
    )


def first_integral_radicand(Theta, E_theta: float, l: int, kappa_theta: float, phi: float, hbar: float = 1.0):
    """(Theta')^2 = 2 E - l^2 T^2 + 2 (kappa/hbar) phi ln|T| - kappa^2/(hbar^2 T^2)."""
    T = np.asarray(Theta, dtype=float)
    return (
        2.0 * E_theta
        - (l * l) * T * T
        + 2.0 * (kappa_theta / hbar) * phi * np.log(np.abs(T))
        - (kappa_theta / hbar) ** 2 / (T * T)
    )


def theta_first_integral_quadrature(
    Theta_target: float,
    E_theta: float,
    l: int,
    kappa_theta: float,
    phi: float,
    hbar: float = 1.0,
    tol: float = 1e-10,
) -> float:
    """theta - theta0 from the implicit first-integral quadrature.

    Integrates d Theta / sqrt(radicand) from the turning point nearest the
    target amplitude; the square-root endpoint is removed by substituting
    Theta = tp + s*t^2 so the transformed integrand is smooth.  The sign
    of the result equals the sign of (Theta_target - turning point); the
    caller chooses the physical branch.
    """

    def g(T):
        return float(first_integral_radicand(T, E_theta, l, kappa_theta, phi, hbar))

    if Theta_target <= 0:
        raise ValueError("amplitude must be positive")
    if g(Theta_target) < 0:
        raise ValueError("classically forbidden amplitude (radicand negative at target)")

    tp = _nearest_turning_point(g, Theta_target)
    if tp is None:
        raise ValueError("classically forbidden amplitude: no real turning point brackets the target")
    if tp == Theta_target:
        return 0.0

    s = 1.0 if Theta_target > tp else -1.0
    t_max = math.sqrt(abs(Theta_target - tp))
    # slope of the radicand at the turning point, for the linearized
    # integrand inside the zone where g is rounding-noise dominated
    h_tp = 1e-7 * max(abs(tp), 1.0)
    gp = abs(g(tp + s * h_tp) - g(tp - s * h_tp)) / (2.0 * h_tp)
    gp = max(gp, 1e-300)
    noise = max(abs(g(tp)), 1e-14 * abs(g(Theta_target)), 1e-250)
    t_noise = math.sqrt(100.0 * noise / gp)

    def integrand(t):
        if t <= t_noise:
            # g ~ gp * t^2 here, so the integrand is flat: 2/sqrt(gp)
            return 2.0 / math.sqrt(gp)
        rad = g(tp + s * t * t)
        if rad <= 0.0:
            return 2.0 / math.sqrt(gp)
        return 2.0 * t / math.sqrt(rad)

    return s * quad_singular(integrand, 0.0, t_max, endpoint_order=0.0, tol=tol)


def _nearest_turning_point(g, target: float, expand: float = 1.6, max_iter: int = 200):
    """Zero of g nearest to target among the brackets found on each side."""
    candidates = []
    # downward: amplitudes shrink toward 0 where either the centrifugal
    # term blows up (kappa != 0) or g stays positive to the axis
    lo = target
    found = None
    for _ in range(max_iter):
        nxt = lo / expand
        gn = g(nxt)
        if gn <= 0.0:
            found = _bisect(g, lo, nxt)
            break
        lo = nxt
        if lo < 1e-12:
            break
    if found is not None:
        candidates.append(found)
    # upward
    hi = target
    found = None
    for _ in range(max_iter):
        nxt = hi * expand
        gn = g(nxt)
        if gn <= 0.0:
            found = _bisect(g, hi, nxt)
            break
        hi = nxt
        if hi > 1e12:
            break
    if found is not None:
        candidates.append(found)
    if not candidates:
        return None
    return min(candidates, key=lambda tp: abs(tp - target))


def _bisect(g, inside: float, outside: float, iters: int = 200) -> float:
    """Root of g between a positive-radicand point and a negative one."""
    for _ in range(iters):
        mid = 0.5 * (inside + outside)
        if mid == inside or mid == outside:
            break
        if g(mid) > 0.0:
            inside = mid
        else:
            outside = mid
    return 0.5 * (inside + outside)


def theta_from_w(w_samples: SampledProfile, Theta0: float) -> SampledProfile:
    """Reconstruct Theta = Theta0 exp(int w dtheta) by cumulative trapezoids."""
    h = w_samples.step()
    w = np.asarray(w_samples.values, dtype=float)
    integral = np.concatenate(([0.0], np.cumsum(0.5 * (w[1:] + w[:-1]) * h)))
    values = Theta0 * np.exp(integral)
    meta = dict(w_samples.metadata)
    meta["operation"] = "theta_from_w"
    meta["Theta0"] = Theta0
    return SampledProfile(w_samples.coordinate, w_samples.grid, values, meta)


def divergence_residual(
    r_axis, theta_axis, z_axis, rho, p_r, p_theta, p_z, params: PhysParams
) -> float:
    """Max stationary-continuity defect over the interior of an (r,theta,z) grid.

    Central differences of
    (1/r) d_r(r rho p_r) + (1/r) d_theta[rho (p_theta - eBr/2)] + d_z(rho p_z).
    """
    r = np.asarray(r_axis, dtype=float)
    th = np.asarray(theta_axis, dtype=float)
    z = np.asarray(z_axis, dtype=float)
    if r[0] <= 0.0:
        raise ValueError("axis excluded from stencil: the grid must satisfy r > 0")
    hr, hth, hz = _uniform_step(r), _uniform_step(th), _uniform_step(z)

    rho = np.asarray(rho, dtype=float)
    R3 = r[:, None, None]
    flux_r = R3 * rho * np.asarray(p_r, dtype=float)
    gauge = np.asarray(p_theta, dtype=float) - params.eB * R3 / 2.0
    flux_th = rho * gauge
    flux_z = rho * np.asarray(p_z, dtype=float)

    d_r = (flux_r[2:, 1:-1, 1:-1] - flux_r[:-2, 1:-1, 1:-1]) / (2.0 * hr)
    d_th = (flux_th[1:-1, 2:, 1:-1] - flux_th[1:-1, :-2, 1:-1]) / (2.0 * hth)
    d_z = (flux_z[1:-1, 1:-1, 2:] - flux_z[1:-1, 1:-1, :-2]) / (2.0 * hz)

    r_in = r[1:-1][:, None, None]
    total = d_r / r_in + d_th / r_in + d_z
    return float(np.max(np.abs(total)))


def _uniform_step(axis: np.ndarray) -> float:
    h = np.diff(axis)
    if h.size == 0 or not np.allclose(h, h[0], rtol=1e-10, atol=0.0):
        raise ValueError("grid axes must be uniformly spaced")
    return float(h[0])


def bohm_energy_residual(
    R: Callable,
    Theta: Callable,
    Z: Callable,
    p_r: float,
    p_theta: float,
    p_z: float,
    E: float,
    params: PhysParams,
    point,
    fd_step: float = 1e-3,
):
    """Stationary energy-balance defect at one point.

    Evaluates
    [p_r^2 + p_theta^2 - eBr p_theta + (eBr)^2/4 + p_z^2] / 2m
      - (hbar^2/2m)[R''/R + R'/(r R) + Theta''/(r^2 Theta) + Z''/Z] - E,
    the amplitude-curvature block being the quantum potential.  Amplitude
    derivatives are five-point central differences; Theta may be complex,
    in which case the returned residual is complex.
    """
    r, th, z = point
    if r <= 0:
        raise ValueError("quantum potential singular: needs r > 0")
    Rv, d1R, d2R = _fd5(R, r, fd_step)
    Tv, _, d2T = _fd5(Theta, th, fd_step)
    Zv, _, d2Z = _fd5(Z, z, fd_step)
    if Rv == 0 or Tv == 0 or Zv == 0:
        raise ValueError("quantum potential singular: amplitude node at the point")

    m, hb = params.mass, params.hbar
    eB = params.eB
    kinetic = (
        p_r * p_r
        + p_theta * p_theta
        - eB * r * p_theta
        + (eB * r) ** 2 / 4.0
        + p_z * p_z
    ) / (2.0 * m)
    curvature = d2R / Rv + d1R / (r * Rv) + d2T / (r * r * Tv) + d2Z / Zv
    return kinetic - hb * hb / (2.0 * m) * curvature - E


def _fd5(f: Callable, x: float, h: float):
    """Value and first/second derivatives by five-point central stencils."""
    fm2, fm1, f0, fp1, fp2 = (f(x + k * h) for k in (-2, -1, 0, 1, 2))
    d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h)
    d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h)
    return f0, d1, d2
