"""Scalar special-function kernels: complex log-gamma, real powers of gamma,
and modified Bessel functions of the second kind."""

import cmath
import math

import numpy as np
import scipy.special as sc

from .errors import DomainError, PoleError

POLE_TOL = 1e-12
# Distance of the order from an integer below which the Bessel series is abandoned.
INTEGER_ORDER_TOL = 1e-6

__all__ = [
    "log_gamma",
    "gamma_power",
    "bessel_i",
    "bessel_k",
    "near_pole",
]


def near_pole(z, tol=POLE_TOL):
    """True when ``z`` is within ``tol`` of a nonpositive integer."""
    z = complex(z)
    if abs(z.imag) > tol or z.real > tol:
        return False
    return abs(z.real - round(z.real)) <= tol


def log_gamma(z):
    """Principal branch of ``ln Gamma(z)``.

    The branch cut runs along the nonpositive real axis, so the result is
    continuous everywhere else and ``exp(log_gamma(z)) == Gamma(z)``.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"log_gamma argument is not finite: {z!r}")
    if near_pole(z):
        raise PoleError(f"Gamma has a pole at {z!r}")
    return complex(sc.loggamma(z))


def gamma_power(z, alpha):
    """``Gamma(z)**alpha`` defined as ``exp(alpha * log_gamma(z))``."""
    if not alpha > 0:
        raise DomainError(f"gamma exponent must be positive, got {alpha!r}")
    return cmath.exp(alpha * log_gamma(z))


def bessel_i(nu, x):
    """Modified Bessel function of the first kind by its power series.

    ``nu`` may be negative; for negative integers the leading terms vanish
    through ``1/Gamma`` and the series still converges.
    """
    if x < 0:
        raise DomainError("bessel_i requires x >= 0")
    if x == 0:
        return 1.0 if nu == 0 else (0.0 if nu > 0 or nu == round(nu) else math.inf)
    half = 0.5 * x
    q = half * half
    total = 0.0
    # start at the first index where 1/Gamma(l + nu + 1) is nonzero
    lead = 0
    while nu + lead + 1 <= 0 and nu + lead + 1 == round(nu + lead + 1):
        lead += 1
    term = half ** (2 * lead + nu) * sc.rgamma(lead + nu + 1) / math.factorial(lead)
    total = term
    l = lead
    while True:
        l += 1
        term *= q / (l * (l + nu))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
        if l > 10_000:
            break
    return total


def _bessel_k_series(nu, x):
    s = math.sin(nu * math.pi)
    i_neg = bessel_i(-nu, x)
    i_pos = bessel_i(nu, x)
    value = math.pi * (i_neg - i_pos) / (2.0 * s)
    condition = math.pi * (abs(i_neg) + abs(i_pos)) / (2.0 * abs(s))
    return value, condition


def _log_cosh(y):
    y = np.abs(y)
    return y + np.log1p(np.exp(-2.0 * y)) - math.log(2.0)


def _bessel_k_integral(nu, x):
    # trapezoidal rule on int_0^inf exp(-x cosh t) cosh(nu t) dt; the integrand is
    # analytic in a strip around the real axis, so the error decays like exp(-c/h)
    # cosh(t) - 1 = 2 sinh(t/2)**2 keeps full precision for large x
    def log_f(t):
        return -2.0 * x * np.sinh(0.5 * t) ** 2 + _log_cosh(nu * t)

    # the peak narrows like 1/sqrt(x), so the step must follow it
    h = min(0.05, 0.5 / math.sqrt(x + nu))
    t_peak = math.asinh(nu / x) if nu > 0 else 0.0
    peak = float(log_f(np.array([t_peak]))[0])
    t_end = max(t_peak, 1.0)
    while float(log_f(np.array([t_end]))[0]) > peak - 46.0:
        t_end *= 1.5
    t = np.arange(0.0, t_end + h, h)
    lf = log_f(t)
    top = lf.max()
    w = np.exp(lf - top)
    w[0] *= 0.5
    return h * w.sum() * math.exp(top - x)


def bessel_k(nu, x, method="auto"):
    """Modified Bessel function of the second kind ``K_nu(x)`` for real ``nu``
    and ``x > 0``.

    ``method`` is ``"series"`` (reflection of two first-kind series),
    ``"integral"`` (the ``cosh`` integral representation) or ``"auto"``, which
    uses the series away from integer orders unless its cancellation would
    cost more than about four digits.
    """
    if not x > 0:
        raise DomainError(f"bessel_k requires x > 0, got {x!r}")
    nu = abs(float(nu))
    x = float(x)
    near_integer = abs(nu - round(nu)) < INTEGER_ORDER_TOL
    if method == "integral":
        return _bessel_k_integral(nu, x)
    if method == "series":
        if near_integer:
            raise DomainError("series path is undefined for integer orders")
        return _bessel_k_series(nu, x)[0]
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if near_integer or nu > 30 or x > 25:
        return _bessel_k_integral(nu, x)
    value, condition = _bessel_k_series(nu, x)
    if value <= 0 or condition > 1e4 * value:
        return _bessel_k_integral(nu, x)
    return value
