"""Self-contained special functions behind every closed-form amplitude.

Provides the confluent hypergeometric function 1F1 (Kummer series), a
Lanczos principal-branch log-gamma, the Whittaker functions M and W, and
the Bessel function J of real order via its ascending power series.

The ascending series are summed in extended precision (80-bit long double
where the platform provides it) because the oscillatory arguments used
here, imaginary Kummer arguments and Bessel arguments up to 30, lose
several digits to cancellation in plain float64.  Results are returned as
float64/complex128.

No asymptotic or large-argument expansions: the raw series is validated
for |x| <= 30 only and larger arguments are rejected.
"""

from __future__ import annotations

import cmath
import math
import numbers
from dataclasses import dataclass

import numpy as np

SERIES_RANGE = 30.0

_LD = np.longdouble
_CLD = np.clongdouble


@dataclass(frozen=True)
class SeriesControl:
    """Truncation control for the ascending series."""

    rel_tol: float = 1e-15
    max_terms: int = 500

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_CONTROL = SeriesControl()


def _is_nonpositive_integer(z) -> bool:
    """Exact test: true only for integer-typed values <= 0."""
    return isinstance(z, numbers.Integral) and z <= 0


def _is_nonreal(z) -> bool:
    return isinstance(z, numbers.Complex) and not isinstance(z, numbers.Real)


def _hits_gamma_pole(z) -> bool:
    """Value equal to a non-positive integer (any numeric type)."""
    zc = complex(z)
    return zc.imag == 0.0 and zc.real <= 0.0 and zc.real == round(zc.real)


def _check_finite(value, what: str):
    if not np.all(np.isfinite(value)):
        raise ArithmeticError(f"{what} produced a non-finite value")
    return value


def hyp1f1(a, b, x, ctl: SeriesControl = DEFAULT_CONTROL):
    """Kummer confluent hypergeometric function 1F1(a, b; x).

    Sums sum_k (a)_k x^k / ((b)_k k!).  Terminates exactly when ``a`` is a
    non-positive *integer-typed* value (polynomial of degree -a); the test
    is on the Python/numpy integer type, never on float rounding.
    Otherwise truncates once the running term falls below
    rel_tol * |partial sum| for two consecutive terms.

    ``x`` may be a scalar or ndarray (one series sweep over all entries).
    Real inputs give a float result, complex inputs a complex one.
    """
    polynomial = _is_nonpositive_integer(a)
    if _hits_gamma_pole(b):
        # b at a pole is tolerated only in the polynomial case terminating
        # strictly before the pole index
        if not (polynomial and -int(a) < -round(complex(b).real)):
            raise ValueError("pole of Kummer function: b is a non-positive integer")

    x_arr = np.asarray(x)
    is_complex = _is_nonreal(a) or _is_nonreal(b) or np.iscomplexobj(x_arr)
    work = _CLD if is_complex else _LD

    if not polynomial and x_arr.size and np.max(np.abs(x_arr)) > SERIES_RANGE:
        raise ValueError(
            f"use of ascending series out of validated range |x| <= {SERIES_RANGE:g}"
        )

    aw = work(complex(a)) if is_complex else work(float(a))
    bw = work(complex(b)) if is_complex else work(float(b))
    xw = x_arr.astype(work)

    term = np.ones_like(xw)
    total = term.copy()
    n_exact = -int(a) if polynomial else None
    small_streak = 0
    k = 0
    while True:
        if polynomial and k >= n_exact:
            break
        if k >= ctl.max_terms:
            raise RuntimeError(
                f"series budget exceeded: 1F1 did not converge in {ctl.max_terms} terms"
            )
        denom = (bw + k) * (k + 1)
        if denom == 0:
            raise ValueError("pole of Kummer function: b is a non-positive integer")
        term = term * ((aw + k) * xw / denom)
        total = total + term
        k += 1
        if not polynomial:
            if np.max(np.abs(term)) <= ctl.rel_tol * np.max(np.abs(total)):
                small_streak += 1
                if small_streak >= 2:
                    break
            else:
                small_streak = 0

    out = total.astype(complex if is_complex else float)
    _check_finite(out, "hyp1f1")
    return out if out.ndim else out.item()


def hyp1f1_deriv(a, b, x, ctl: SeriesControl = DEFAULT_CONTROL):
    """d/dx 1F1(a, b; x) = (a/b) 1F1(a+1, b+1; x) (contiguous relation).

    ``a + 1`` keeps integer type, so polynomial termination is preserved.
    """
    return (a / b) * hyp1f1(a + 1, b + 1, x, ctl)


# Lanczos approximation, g = 7, 9 coefficients.  Relative accuracy is a
# few 1e-15 on the real axis and better than 1e-12 off-axis, comfortably
# inside the 1e-12 / 1e-10 targets.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)


def ln_gamma(z) -> complex:
    """Principal-branch log-gamma via a fixed Lanczos sum.

    For Re z < 0.5 the reflection formula is used; the branch there is the
    principal logarithm of the reflected factors, which exponentiates to
    the exact gamma function everywhere off the poles.
    """
    z = complex(z)
    if _hits_gamma_pole(z):
        raise ValueError("gamma pole: log-gamma undefined at non-positive integers")
    if z.real < 0.5:
        # log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return _LOG_PI - cmath.log(cmath.sin(math.pi * z)) - ln_gamma(1.0 - z)
    zz = z - 1.0
    acc = complex(_LANCZOS_C[0])
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        acc += c / (zz + i)
    t = zz + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (zz + 0.5) * cmath.log(t) - t + cmath.log(acc)


def gamma(z) -> complex:
    """exp(ln_gamma(z))."""
    return cmath.exp(ln_gamma(z))


def rgamma(z) -> complex:
    """1/Gamma(z), returning exactly 0.0 at the poles of Gamma."""
    if _hits_gamma_pole(z):
        return 0.0 + 0.0j
    return cmath.exp(-ln_gamma(z))


def whittaker_m(kappa, mu, x, ctl: SeriesControl = DEFAULT_CONTROL):
    """Whittaker function M_{kappa,mu}(x), scalar or array x.

    M = exp(-x/2) x^{mu+1/2} 1F1(mu - kappa + 1/2, 1 + 2 mu; x), with the
    principal branch of x^{mu+1/2} (cut on the negative real axis).
    """
    kappa = complex(kappa)
    mu = complex(mu)
    b = 1.0 + 2.0 * mu
    if _hits_gamma_pole(b):
        raise ValueError("pole of Kummer function: 1 + 2*mu is a non-positive integer")
    x_arr = np.asarray(x, dtype=complex)
    if np.any(x_arr == 0):
        if (mu + 0.5).real > 0 and x_arr.ndim == 0:
            return 0.0 + 0.0j
        raise ValueError("whittaker_m singular at x = 0 for Re(mu + 1/2) <= 0")
    a = mu - kappa + 0.5
    power = np.exp((mu + 0.5) * np.log(x_arr))
    value = np.exp(-0.5 * x_arr) * power * hyp1f1(a, b, x_arr, ctl)
    _check_finite(value, "whittaker_m")
    return value if np.asarray(x).ndim else complex(value)


def whittaker_w(kappa, mu, x, ctl: SeriesControl = DEFAULT_CONTROL):
    """Whittaker function W_{kappa,mu}(x) via the M-connection formula.

    W = Gamma(-2mu)/Gamma(1/2 - mu - kappa) M_{kappa,mu}
      + Gamma(2mu)/Gamma(1/2 + mu - kappa) M_{kappa,-mu},
    valid when 2 mu is not an integer.
    """
    kappa = complex(kappa)
    mu = complex(mu)
    two_mu = 2.0 * mu
    if abs(two_mu.imag) < 1e-12 and abs(two_mu.real - round(two_mu.real)) < 1e-12:
        raise ValueError("connection formula degenerate: 2*mu is an integer")
    c_plus = cmath.exp(ln_gamma(-two_mu)) * rgamma(0.5 - mu - kappa)
    c_minus = cmath.exp(ln_gamma(two_mu)) * rgamma(0.5 + mu - kappa)
    value = c_plus * whittaker_m(kappa, mu, x, ctl) + c_minus * whittaker_m(kappa, -mu, x, ctl)
    _check_finite(value, "whittaker_w")
    return value


def bessel_j(nu: float, x, ctl: SeriesControl = DEFAULT_CONTROL):
    """Bessel J_nu via the ascending series, nu >= 0 real, x >= 0.

    J_nu(x) = sum_k (-1)^k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)); the common
    factor (x/2)^nu / Gamma(nu+1) is pulled out and the remaining
    alternating sum accumulated in extended precision.
    """
    if nu < 0:
        raise ValueError("bessel_j requires nu >= 0")
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0):
        raise ValueError("bessel_j requires x >= 0")
    if x_arr.size and np.max(x_arr) > SERIES_RANGE:
        raise RuntimeError(
            f"use of ascending series out of validated range |x| <= {SERIES_RANGE:g}"
        )

    q = (x_arr.astype(_LD) / 2.0) ** 2
    term = np.ones_like(q)
    total = term.copy()
    small_streak = 0
    k = 0
    while True:
        if k >= ctl.max_terms:
            raise RuntimeError(
                f"series budget exceeded: Bessel series did not converge in {ctl.max_terms} terms"
            )
        term = term * (-q / ((k + 1) * (k + 1 + _LD(nu))))
        total = total + term
        k += 1
        if np.max(np.abs(term)) <= ctl.rel_tol * max(float(np.max(np.abs(total))), 1e-300):
            small_streak += 1
            if small_streak >= 2:
                break
        else:
            small_streak = 0

    # prefactor applied in float64; x = 0 entries handled exactly
    with np.errstate(divide="ignore", invalid="ignore"):
        log_pref = np.where(x_arr > 0, nu * np.log(np.where(x_arr > 0, x_arr, 1.0) / 2.0), 0.0)
    pref = np.exp(log_pref - ln_gamma(nu + 1.0).real)
    result = np.where(x_arr > 0, pref * total.astype(float), 1.0 if nu == 0 else 0.0)
    _check_finite(result, "bessel_j")
    return result if result.ndim else result.item()
