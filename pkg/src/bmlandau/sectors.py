"""Zero-current sector amplitudes and the Ermakov-Lewis energy spectrum.

The three separated sectors of the cyclotron problem in cylindrical
coordinates carry the effective frequencies

    Omega_r^2(r)     = kappa_r^2 - beta^2 r^2
    Omega_theta^2(r) = l^2 - 2 beta l r^2   (r enters as a parameter)
    Omega_z^2        = k_z^2

with beta = e B / (2 hbar).  The radial basis pairs a Gaussian-weighted
Kummer function with its odd partner at the common eigenvalue
kappa^2 = beta (1 - 4a), so both members solve one Liouville-normal
equation and the Pinney construction applies.  The azimuthal and axial
amplitudes use the fixed-frequency trigonometric form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import PhysParams, QuantumNumbers
from .ermakov import EPCoefficients, LinearPair, pinney_amplitude
from .specfun import hyp1f1, hyp1f1_deriv


def radial_kappa_sq(a: float, params: PhysParams) -> float:
    """Common eigenvalue kappa^2 = beta (1 - 4a) of the radial basis pair.

    a = -n_r reproduces the quantised even family kappa^2 = beta (4 n_r + 1).
    """
    return params.beta * (1.0 - 4.0 * a)


def radial_basis(a, params: PhysParams) -> LinearPair:
    """Even/odd Weber-type solutions of chi'' + (kappa^2 - beta^2 r^2) chi = 0.

    u1(r) = exp(-beta r^2/2) 1F1(a, 1/2; beta r^2)
    u2(r) = r exp(-beta r^2/2) 1F1(a + 1/2, 3/2; beta r^2)

    Both solve the same equation with kappa^2 = beta (1 - 4a); the
    Wronskian is exactly 1 (value at r = 0).  Derivatives use the
    contiguous relation for d/dx 1F1, never finite differences.
    """
    beta = params.beta

    def u1(r):
        r = np.asarray(r, dtype=float)
        x = beta * r * r
        return np.exp(-x / 2.0) * hyp1f1(a, 0.5, x)

    def du1(r):
        r = np.asarray(r, dtype=float)
        x = beta * r * r
        f = hyp1f1(a, 0.5, x)
        df = hyp1f1_deriv(a, 0.5, x)
        return beta * r * np.exp(-x / 2.0) * (2.0 * df - f)

    def u2(r):
        r = np.asarray(r, dtype=float)
        x = beta * r * r
        return r * np.exp(-x / 2.0) * hyp1f1(_half_up(a), 1.5, x)

    def du2(r):
        r = np.asarray(r, dtype=float)
        x = beta * r * r
        f = hyp1f1(_half_up(a), 1.5, x)
        df = hyp1f1_deriv(_half_up(a), 1.5, x)
        return np.exp(-x / 2.0) * (f * (1.0 - x) + 2.0 * x * df)

    return LinearPair(u1=u1, u2=u2, du1=du1, du2=du2, wronskian=1.0)


def _half_up(a):
    """a + 1/2 for the odd family (leaves the polynomial flag to 1F1)."""
    return a + 0.5


def theta_amplitude_trig(coef: EPCoefficients, omega_theta: float) -> Callable:
    """Azimuthal Pinney amplitude at fixed frequency Omega_theta.

    Theta(t) = sqrt(A cos^2 + B sin^2 + 2 D sin cos) with the angular
    Wronskian W = Omega_theta, requiring A*B - D^2 = c^2/Omega^2.
    """
    return _trig_amplitude(coef, omega_theta)


def axial_amplitude_trig(coef: EPCoefficients, k_z: float) -> Callable:
    """Axial Pinney amplitude, identical structure with Omega -> k_z."""
    return _trig_amplitude(coef, k_z)


def trig_pair(omega: float) -> LinearPair:
    """cos/sin solutions of y'' + omega^2 y = 0; Wronskian = omega."""
    return LinearPair(
        u1=lambda q: np.cos(omega * np.asarray(q, dtype=float)),
        u2=lambda q: np.sin(omega * np.asarray(q, dtype=float)),
        du1=lambda q: -omega * np.sin(omega * np.asarray(q, dtype=float)),
        du2=lambda q: omega * np.cos(omega * np.asarray(q, dtype=float)),
        wronskian=omega,
    )


def _trig_amplitude(coef: EPCoefficients, omega: float) -> Callable:
    if omega == 0:
        raise ValueError("trigonometric amplitude needs a nonzero frequency")
    return pinney_amplitude(trig_pair(omega), coef)


@dataclass
class SectorFrequencies:
    """The three effective frequencies of one state."""

    omega_r_sq: Callable
    omega_theta_sq: Callable
    omega_z_sq: float


def sector_frequencies(kappa_r_sq: float, qn: QuantumNumbers, params: PhysParams) -> SectorFrequencies:
    beta = params.beta
    l = qn.l
    return SectorFrequencies(
        omega_r_sq=lambda r: kappa_r_sq - (beta * np.asarray(r, dtype=float)) ** 2,
        omega_theta_sq=lambda r: l * l - 2.0 * beta * l * np.asarray(r, dtype=float) ** 2,
        omega_z_sq=qn.k_z**2,
    )


def energy_el(qn: QuantumNumbers, params: PhysParams) -> float:
    """Ermakov-Lewis route energy.

    E = hbar omega_c (n_r + 1/2) + (hbar l / 2m)(|eB| - eB) + hbar^2 k_z^2 / 2m.
    For eB > 0 the middle term vanishes and the spectrum is degenerate in l.
    """
    hb, m = params.hbar, params.mass
    eB = params.eB
    return (
        hb * params.omega_c * (qn.n_r + 0.5)
        + (hb * qn.l / (2.0 * m)) * (abs(eB) - eB)
        + hb * hb * qn.k_z * qn.k_z / (2.0 * m)
    )
