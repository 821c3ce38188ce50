"""Canonical (shell) regularisation: closed-form sector amplitudes.

The local closure q_i p_i = hbar/2 adds inverse-square terms to each
separated equation.  The radial sector becomes a Langer-shifted central
problem with nu = sqrt(l^2 + 1/4) and regular solution
r^nu exp(-beta r^2/2) 1F1(-n_r, nu+1; beta r^2); the axial sector becomes
the inverse-square free problem solved by sqrt(z) J_{1/sqrt2}(k_z z); the
azimuthal sector maps onto the Whittaker equation with imaginary argument
2 i l theta and is generically complex.  A real branch-wise azimuthal
profile exists locally, controlled by the flux ratio phi = beta r^2 and
the scaled current kappa = r^2 C_theta / hbar, and the admissible current
assignments follow from damping requirements on the radial/axial sectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import PhysParams, QuantumNumbers
from .flux import CurrentBranch
from .specfun import bessel_j, hyp1f1, whittaker_m, whittaker_w

AXIAL_ORDER = 1.0 / math.sqrt(2.0)
WHITTAKER_MU = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class RegularisedLabels:
    """Langer-shifted order nu = sqrt(l^2 + 1/4) and Kummer label a_r = -n_r."""

    nu: float
    a_r: float

    @classmethod
    def from_quantum_numbers(cls, qn: QuantumNumbers) -> "RegularisedLabels":
        return cls(nu=math.sqrt(qn.l * qn.l + 0.25), a_r=-float(qn.n_r))

    def kappa_r_sq(self, beta: float) -> float:
        """Radial eigenvalue from the quantisation identity (nu+1)/2 - kappa^2/(4 beta) = a_r.

        Equivalently kappa^2 = 2 beta (2 n_r + nu + 1), the value under
        which chi = sqrt(r) R solves its Langer-corrected equation and
        (hbar^2/2m) kappa^2 reproduces the regularised transverse energy.
        """
        return 4.0 * beta * (0.5 * (self.nu + 1.0) - self.a_r)


@dataclass(frozen=True)
class LocalBranchParams:
    """Inputs of the real local azimuthal branch."""

    A_theta: float
    phi: float
    kappa: float

    def __post_init__(self):
        if not self.A_theta > 0:
            raise ValueError("A_theta must be positive")


def local_branch_params(A_theta: float, r: float, C_theta: float, params: PhysParams) -> LocalBranchParams:
    """phi = beta r^2, kappa = r^2 C_theta / hbar (kappa carries the sign of C_theta)."""
    return LocalBranchParams(A_theta=A_theta, phi=params.beta * r * r, kappa=r * r * C_theta / params.hbar)


def radial_regularised(qn: QuantumNumbers, params: PhysParams) -> Callable:
    """Langer-corrected radial amplitude R(r) = r^nu e^{-beta r^2/2} 1F1(-n_r, nu+1; beta r^2).

    Normalisation C = 1, so R(r)/r^nu -> 1 as r -> 0+.  The scaled
    chi = sqrt(r) R solves chi'' + [kappa^2 - beta^2 r^2 - (nu^2 - 1/4)/r^2] chi = 0
    with kappa^2 fixed by the quantisation identity.
    """
    labels = RegularisedLabels.from_quantum_numbers(qn)
    beta = params.beta
    nu = labels.nu
    n_r = qn.n_r

    def R(r):
        r = np.asarray(r, dtype=float)
        x = beta * r * r
        return r**nu * np.exp(-x / 2.0) * hyp1f1(-n_r, nu + 1.0, x)

    return R


def axial_regularised(k_z: float) -> Callable:
    """Axial amplitude Z(z) = sqrt(z) J_{1/sqrt2}(k_z z) on the half-line z > 0."""
    if not k_z > 0:
        raise ValueError("axial branch needs k_z > 0")

    def Z(z):
        z_arr = np.asarray(z, dtype=float)
        if np.any(z_arr <= 0):
            raise ValueError("axial branch defined on half-line; mirror by |z| at caller")
        return np.sqrt(z_arr) * bessel_j(AXIAL_ORDER, k_z * z_arr)

    return Z


def azimuthal_whittaker(theta, l: int, phi: float, c1: complex, c2: complex):
    """General regularised azimuthal amplitude, generically complex.

    Theta(theta) = c1 M_{kappa,mu}(2 i l theta) + c2 W_{kappa,mu}(2 i l theta)
    with mu = 1/sqrt2 and kappa = -(i/(2l)) phi.  Solves
    Theta'' + (l^2 + phi/theta - 1/(4 theta^2)) Theta = 0.
    """
    if l == 0:
        raise ValueError("Whittaker map degenerate (x = 0 for l = 0)")
    kappa = -1j * phi / (2.0 * l)
    th_arr = np.atleast_1d(np.asarray(theta, dtype=float))
    if np.any(th_arr == 0):
        raise ValueError("azimuthal amplitude undefined at theta = 0")
    x = 2j * l * th_arr
    out = np.zeros(th_arr.shape, dtype=complex)
    if c1 != 0:
        out = out + c1 * np.asarray(whittaker_m(kappa, WHITTAKER_MU, x))
    if c2 != 0:
        out = out + c2 * np.asarray(whittaker_w(kappa, WHITTAKER_MU, x))
    return out if np.asarray(theta).ndim else complex(out[0])


def theta_local_branch(theta, p: LocalBranchParams):
    """Real branch-wise azimuthal profile of the flux-scaled continuity flow.

    Theta = sqrt(A) |theta|^{1/2} |1 - 2 phi theta|^{-(1 + kappa/(2 phi^2))/2}
            exp(-kappa theta / (2 phi)).
    Singular at theta = 0 (canonical regularisation point) and at
    1 - 2 phi theta = 0 (flux-controlled scale); no continuation through
    either is attempted.
    """
    th = np.asarray(theta, dtype=float)
    if np.any(th == 0):
        raise ValueError("canonical inverse-square regularisation point (theta = 0)")
    core = 1.0 - 2.0 * p.phi * th
    if np.any(core == 0):
        raise ValueError("flux-controlled singularity (1 - 2 phi theta = 0)")
    exponent = -0.5 * (1.0 + p.kappa / (2.0 * p.phi * p.phi))
    out = (
        math.sqrt(p.A_theta)
        * np.sqrt(np.abs(th))
        * np.abs(core) ** exponent
        * np.exp(-p.kappa * th / (2.0 * p.phi))
    )
    return out if np.asarray(theta).ndim else float(out)


def local_branch_log_density_slope(theta, p: LocalBranchParams):
    """d(ln Theta^2)/dtheta = (1/theta + 2 kappa theta) / (1 - 2 phi theta)."""
    th = np.asarray(theta, dtype=float)
    return (1.0 / th + 2.0 * p.kappa * th) / (1.0 - 2.0 * p.phi * th)


def damped_radial_profile(r, C_r: float, params: PhysParams):
    """Radial density under the canonical closure: R^2(r) = exp(C_r r^2 / hbar).

    Normalisable over r dr only for C_r < 0.
    """
    r = np.asarray(r, dtype=float)
    out = np.exp(C_r * r * r / params.hbar)
    return out if np.asarray(r).ndim else float(out)


def radial_profile_normalisable(C_r: float) -> bool:
    return C_r < 0


def damped_axial_profile(z, C_z: float, params: PhysParams):
    """Axial amplitude Z(z) = |z|^{1/2} exp(-|C_z| z^2 / (2 hbar)).

    The node keeps its square-root behaviour; the current only deforms the
    envelope.  Log-derivative: Z'/Z = 1/(2z) + C_z z / hbar for C_z <= 0.
    """
    z = np.asarray(z, dtype=float)
    out = np.sqrt(np.abs(z)) * np.exp(-abs(C_z) * z * z / (2.0 * params.hbar))
    return out if np.asarray(z).ndim else float(out)


def branch_assignment(C_r: float, C_z: float) -> tuple[CurrentBranch, str]:
    """Close the current triple with C_theta = -(C_r + C_z) and classify it.

    'compensating'   C_z = -C_r (azimuthal current vanishes)
    'componentwise'  C_r < 0 and C_z < 0 (both damping, C_theta > 0)
    'inadmissible'   C_theta < 0 (amplitude finiteness forces C_theta >= 0)
    'mixed'          admissible but neither named branch
    """
    C_theta = -(C_r + C_z)
    branch = CurrentBranch(C_r=C_r, C_theta=C_theta, C_z=C_z)
    if C_z == -C_r:
        label = "compensating"
    elif C_r < 0 and C_z < 0:
        label = "componentwise"
    elif C_theta < 0:
        label = "inadmissible"
    else:
        label = "mixed"
    return branch, label
