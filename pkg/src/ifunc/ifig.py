"""The I-function inverse Gaussian (I-FIG) distribution.

Density ``k2 * x**(alpha-1) * exp(-a x - b/x) * I(delta x**sigma)`` on
``x > 0``. Its Mellin transform is a series over ``l`` of two I-function
blocks weighted by ``(ab)**l / l!``; it comes from expanding the Bessel
function in ``integral x**(nu-1) exp(-a x - b/x) dx = 2 (b/a)**(nu/2) K_nu(2 sqrt(ab))``.
"""

from __future__ import annotations

import cmath
import inspect
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import integrate
from scipy.special import loggamma, rgamma

from .algebra import ProductFormDistribution
from .closed_forms import constant_pattern
from .contour import DEFAULT_CONFIG, EvalConfig, evaluate_log
from .errors import (
    DomainError,
    MomentDivergenceError,
    NegativeDensityError,
    NormalizationError,
    PoleError,
    RestrictionError,
    SeriesDivergenceError,
)
from .params import IFunctionParams
from .special import INTEGER_ORDER_TOL, bessel_k
from .transforms import _log_real_power_base

__all__ = [
    "IFIGDistribution",
    "SeriesResult",
    "make_ifig",
    "ifig_pdf",
    "ifig_mellin",
    "ifig_moment",
    "ifig_laplace",
    "ifig_catalog",
    "ifig_to_product_form",
    "gig",
    "inverse_gaussian",
    "inverse_gamma",
]

SERIES_CAP = 200
SERIES_TOL = 1e-12
# cancellation ratio sum|terms| / |sum| beyond which the series is abandoned
CANCELLATION_LIMIT = 1e6
DEFAULT_DELTA = 0.5


@dataclass(frozen=True)
class SeriesResult:
    """Series value with diagnostics; ``path`` is ``"series"``, ``"bessel"``
    (closed Bessel form, constant I-factor only) or ``"quadrature"``."""

    value: complex
    terms: int
    path: str
    cancellation: float


def _check_restrictions(alpha, a, b):
    if not (math.isfinite(alpha) and math.isfinite(a) and math.isfinite(b)):
        raise RestrictionError("alpha, a and b must be finite")
    if alpha > 0:
        ok = a > 0 and b >= 0
        rule = "a > 0 and b >= 0 when alpha > 0"
    elif alpha < 0:
        ok = a >= 0 and b > 0
        rule = "a >= 0 and b > 0 when alpha < 0"
    else:
        ok = a > 0 and b > 0
        rule = "a > 0 and b > 0 when alpha = 0"
    if not ok:
        raise RestrictionError(f"need {rule}; got alpha={alpha!r}, a={a!r}, b={b!r}")


def _is_constant_pattern(params: IFunctionParams) -> bool:
    return params == constant_pattern()


def _near_integer(x: complex) -> bool:
    return x.imag == 0 and abs(x.real - round(x.real)) < INTEGER_ORDER_TOL


class _Series:
    """Accumulates ``sum_l c_l`` with the truncation and cancellation rules."""

    def __init__(self, cap: int):
        self.cap = cap
        self.total = 0j
        self.abs_total = 0.0
        self.small = 0

    def add(self, blocks) -> bool:
        """Add one index worth of terms; returns True once converged."""
        term = sum(blocks, 0j)
        self.total += term
        self.abs_total += sum(abs(t) for t in blocks)
        if abs(term) < SERIES_TOL * abs(self.total):
            self.small += 1
        else:
            self.small = 0
        return self.small >= 2

    @property
    def cancellation(self) -> float:
        return self.abs_total / abs(self.total) if self.total != 0 else math.inf


@dataclass(frozen=True)
class IFIGDistribution:
    alpha: float
    a: float
    b: float
    params: IFunctionParams
    delta: float
    sigma: float
    k2: float
    series_cap: int = SERIES_CAP
    path: str = "series"
    config: EvalConfig = field(default=DEFAULT_CONFIG, compare=False, repr=False)

    # -- density ---------------------------------------------------------

    @property
    def _constant_factor(self) -> complex:
        return evaluate_log(self.params, _log_real_power_base(self.delta, 1), self.config)

    def _unnormalized(self, x: float) -> float:
        if not x > 0:
            return 0.0
        lx = math.log(x)
        base = (self.alpha - 1) * lx - self.a * x - self.b / x
        if self.sigma == 0:
            return math.exp(base) * self._constant_factor.real
        value = evaluate_log(self.params, _log_real_power_base(self.delta, 1) + self.sigma * lx, self.config)
        return math.exp(base) * value.real if math.isfinite(base) else 0.0

    def pdf(self, x) -> float:
        if np.ndim(x):
            return np.array([self.pdf(float(v)) for v in np.ravel(x)]).reshape(np.shape(x))
        return self.k2 * self._unnormalized(float(x))

    # -- series ------------------------------------------------------------

    def _mellin_raw(self, s, a_eff: float, cap: Optional[int] = None) -> SeriesResult:
        """``integral x**(s-1) x**(alpha-1) exp(-a_eff x - b/x) I(delta x**sigma) dx``."""
        cap = self.series_cap if cap is None else cap
        s = complex(s)
        nu = self.alpha + s - 1.0
        if self.sigma == 0:
            return _constant_series(nu, a_eff, self.b, self._constant_factor, cap)
        return _general_series(self, s, nu, a_eff, cap)

    def mellin_info(self, s, cap: Optional[int] = None) -> SeriesResult:
        r = self._mellin_raw(s, self.a, cap)
        return SeriesResult(self.k2 * r.value, r.terms, r.path, r.cancellation)

    def mellin(self, s) -> float:
        """``E[X**(s-1)]``."""
        return self.mellin_info(s).value.real

    def moment(self, r: float) -> float:
        try:
            value = self.mellin(1.0 + r)
        except PoleError as exc:
            raise MomentDivergenceError(f"moment of order {r!r} does not exist: {exc}") from None
        if not math.isfinite(value):
            raise MomentDivergenceError(f"moment of order {r!r} does not exist")
        return value

    def laplace_info(self, r: float, cap: Optional[int] = None) -> SeriesResult:
        if not r >= 0:
            raise DomainError(f"r must be nonnegative, got {r!r}")
        res = self._mellin_raw(1.0, self.a + r, cap)
        return SeriesResult(self.k2 * res.value, res.terms, res.path, res.cancellation)

    def laplace(self, r: float) -> float:
        """``E[exp(-r X)]``."""
        return self.laplace_info(r).value.real

    def with_cap(self, cap: int) -> "IFIGDistribution":
        return make_ifig(self.alpha, self.a, self.b, self.params, self.delta, self.sigma, cap, self.config)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "a": self.a,
            "b": self.b,
            "ifunction": self.params.to_dict(),
            "delta": self.delta,
            "sigma": self.sigma,
        }


def _constant_series(nu: complex, a: float, b: float, factor: complex, cap: int) -> SeriesResult:
    """Bessel integral times the constant I-factor, via the reflection-form series."""
    if b == 0:
        if nu.real <= 0:
            raise MomentDivergenceError(f"integral diverges at the origin (order {nu!r})")
        return SeriesResult(factor * cmath.exp(loggamma(nu) - nu * math.log(a)), 1, "series", 1.0)
    if a == 0:
        if nu.real >= 0:
            raise MomentDivergenceError(f"integral diverges at infinity (order {nu!r})")
        return SeriesResult(factor * cmath.exp(loggamma(-nu) + nu * math.log(b)), 1, "series", 1.0)

    def bessel() -> SeriesResult:
        if nu.imag != 0:
            raise DomainError("complex order needs the series path")
        v = 2.0 * (b / a) ** (nu.real / 2) * bessel_k(nu.real, 2.0 * math.sqrt(a * b))
        return SeriesResult(factor * v, 0, "bessel", 1.0)

    if _near_integer(nu):
        return bessel()
    refl = math.pi / cmath.sin(math.pi * nu)
    pa, pb = a ** (-nu), b**nu
    acc = _Series(cap)
    ab = a * b
    for l in range(cap + 1):
        w = math.exp(l * math.log(ab) - math.lgamma(l + 1))
        t1 = w * refl * pa * rgamma(l + 1 - nu)
        t2 = -w * refl * pb * rgamma(l + 1 + nu)
        if acc.add((t1, t2)):
            break
    else:
        raise SeriesDivergenceError(f"series not converged after {cap} terms")
    if acc.cancellation > CANCELLATION_LIMIT:
        return bessel()
    return SeriesResult(factor * acc.total, l + 1, "series", acc.cancellation)


def _general_series(d: IFIGDistribution, s: complex, nu: complex, a: float, cap: int) -> SeriesResult:
    base = d.alpha + s  # shifts are written in terms of alpha + s
    log_delta = _log_real_power_base(d.delta, 1)
    b = d.b

    def block(l, which):
        head = (2.0 - base, d.sigma, 1.0)
        p = d.params
        if which == 1:
            upper = [head] + list(p.upper) + [(2.0 + l - base, d.sigma, 1.0)]
            lower = [head] + list(p.lower)
        else:
            upper = [head] + list(p.upper)
            lower = [head] + list(p.lower) + [(1.0 - l - base, d.sigma, 1.0)]
        return IFunctionParams(p.m + 1, p.n + 1, upper, lower)

    def first(l):
        logz = log_delta - d.sigma * math.log(a)
        return cmath.exp(-nu * math.log(a)) * evaluate_log(block(l, 1), logz, d.config)

    def second(l):
        logz = log_delta + d.sigma * math.log(b)
        return cmath.exp(nu * math.log(b)) * evaluate_log(block(l, 2), logz, d.config)

    if b == 0:
        return SeriesResult(first(0), 1, "series", 1.0)
    if a == 0:
        return SeriesResult(-second(0), 1, "series", 1.0)
    acc = _Series(cap)
    ab = a * b
    for l in range(cap + 1):
        w = math.exp(l * math.log(ab) - math.lgamma(l + 1))
        if acc.add((w * first(l), -w * second(l))):
            break
    else:
        raise SeriesDivergenceError(f"series not converged after {cap} terms")
    if acc.cancellation > CANCELLATION_LIMIT:
        return SeriesResult(_quadrature_mellin(d, s, a), 0, "quadrature", acc.cancellation)
    return SeriesResult(acc.total, l + 1, "series", acc.cancellation)


def _quadrature_mellin(d: IFIGDistribution, s: complex, a: float) -> complex:
    """Direct quadrature in ``u = log x`` of the Mellin integral."""
    if s.imag != 0:
        raise DomainError("quadrature fallback needs real s")
    sr = s.real
    log_delta = _log_real_power_base(d.delta, 1)

    def f(u):
        x = math.exp(u)
        e = (d.alpha + sr - 1) * u - a * x - d.b / x
        if e < -745:
            return 0.0
        return math.exp(e) * evaluate_log(d.params, log_delta + d.sigma * u, d.config).real

    # mode of the elementary factor locates the mass
    nu = d.alpha + sr - 1
    mode = math.log((nu + math.sqrt(nu * nu + 4 * a * d.b)) / (2 * a)) if a > 0 else math.log(d.b / max(-nu, 1e-3))
    val = 0.0
    for lo, hi in ((-np.inf, mode), (mode, np.inf)):
        v, _ = integrate.quad(f, lo, hi, epsabs=0.0, epsrel=1e-11, limit=400)
        val += v
    return complex(val)


def make_ifig(
    alpha: float,
    a: float,
    b: float,
    params: Optional[IFunctionParams] = None,
    delta: float = DEFAULT_DELTA,
    sigma: float = 0.0,
    series_cap: int = SERIES_CAP,
    config: EvalConfig = DEFAULT_CONFIG,
    validate: bool = True,
) -> IFIGDistribution:
    """Build a normalized I-FIG distribution.

    ``params=None`` selects the constant factor ``I^{1,0}_{1,1}[delta | (1,1,1); (0,1,1)]``,
    which equals one for ``|delta| < 1``.
    """
    alpha, a, b, delta, sigma = float(alpha), float(a), float(b), float(delta), float(sigma)
    _check_restrictions(alpha, a, b)
    if params is None:
        params = constant_pattern()
    if delta == 0:
        raise DomainError("delta must be nonzero")
    if sigma < 0:
        raise DomainError("sigma must be nonnegative")
    if sigma == 0 and not _is_constant_pattern(params):
        raise DomainError("sigma = 0 is supported only with the constant I-factor")
    if sigma == 0 and not abs(delta) < 1:
        raise DomainError("the constant I-factor needs |delta| < 1")
    if int(series_cap) != series_cap or series_cap < 1:
        raise DomainError("series_cap must be a positive integer")
    draft = IFIGDistribution(alpha, a, b, params, delta, sigma, 1.0, int(series_cap), "series", config)
    total = draft._mellin_raw(1.0, a)
    mass = total.value
    if not (mass.real > 0 and math.isfinite(mass.real)) or abs(mass.imag) > 1e-8 * abs(mass.real):
        raise NormalizationError(f"total mass is not finite and positive: {mass!r}")
    d = IFIGDistribution(alpha, a, b, params, delta, sigma, 1.0 / mass.real, int(series_cap), total.path, config)
    if validate:
        grid = np.geomspace(1e-4, 1e4, 64)
        values = [d._unnormalized(x) for x in grid]
        scale = max(abs(v) for v in values)
        for x, v in zip(grid, values):
            if v < -1e-10 * scale:
                raise NegativeDensityError(float(x), float(v))
    return d


def ifig_pdf(d: IFIGDistribution, x) -> float:
    return d.pdf(x)


def ifig_mellin(d: IFIGDistribution, s) -> float:
    return d.mellin(s)


def ifig_moment(d: IFIGDistribution, r: float) -> float:
    return d.moment(r)


def ifig_laplace(d: IFIGDistribution, r: float) -> float:
    return d.laplace(r)


def gig(alpha: float, beta: float, gamma: float, delta: float = DEFAULT_DELTA) -> IFIGDistribution:
    """Generalized inverse Gaussian, density proportional to
    ``x**(alpha-1) exp(-(beta x + gamma / x) / 2)``."""
    if not (beta > 0 and gamma > 0):
        raise DomainError("need beta > 0 and gamma > 0")
    return make_ifig(alpha, beta / 2.0, gamma / 2.0, None, delta, 0.0)


def inverse_gaussian(mu: float, lam: float, delta: float = DEFAULT_DELTA) -> IFIGDistribution:
    """Inverse Gaussian with mean ``mu`` and shape ``lam``."""
    if not (mu > 0 and lam > 0):
        raise DomainError("need mu > 0 and lam > 0")
    return gig(-0.5, lam / mu**2, lam, delta)


def inverse_gamma(theta: float, lam: float, delta: float = DEFAULT_DELTA) -> IFIGDistribution:
    """Inverse gamma, density ``lam**theta x**(-theta-1) exp(-lam/x) / Gamma(theta)``."""
    if not (theta > 0 and lam > 0):
        raise DomainError("need theta > 0 and lam > 0")
    return make_ifig(-theta, 0.0, lam, None, delta, 0.0)


IFIG_CATALOG = {"gig": gig, "inverse_gaussian": inverse_gaussian, "inverse_gamma": inverse_gamma}

# textbook normalizing constants, for cross-checks
IFIG_COEFFICIENTS = {
    "gig": lambda alpha, beta, gamma: (beta / gamma) ** (alpha / 2) / (2 * bessel_k(alpha, math.sqrt(beta * gamma))),
    "inverse_gaussian": lambda mu, lam: math.sqrt(lam / (2 * math.pi)) * math.exp(lam / mu),
    "inverse_gamma": lambda theta, lam: lam**theta / math.gamma(theta),
}


def ifig_catalog(name: str, **kwargs) -> IFIGDistribution:
    if name not in IFIG_CATALOG:
        raise DomainError(f"unknown I-FIG entry {name!r}")
    fn = IFIG_CATALOG[name]
    known = set(inspect.signature(fn).parameters)
    unknown = set(kwargs) - known
    if unknown:
        raise DomainError(f"{name} has no parameter(s) {sorted(unknown)}; expected {sorted(known)}")
    try:
        return fn(**kwargs)
    except TypeError as exc:
        raise DomainError(f"{name}: {exc}") from None


def ifig_to_product_form(d: IFIGDistribution) -> ProductFormDistribution:
    """Rewrite a ``b = 0`` I-FIG density as ``k * I1(a x) * I(delta x**sigma)``
    with ``I1(a x) = (a x)**(alpha-1) exp(-a x)``, so ``k = k2 * a**(1-alpha)``."""
    if d.b != 0:
        raise RestrictionError("only b = 0 I-FIG densities are products of two I-functions")
    if not (d.alpha > 0 and d.a > 0):
        raise RestrictionError("need alpha > 0 and a > 0")
    factor1 = IFunctionParams(1, 0, [], [(d.alpha - 1.0, 1.0, 1.0)])
    k = d.k2 * d.a ** (1.0 - d.alpha)
    return ProductFormDistribution(factor1, d.a, 1.0, d.params, d.delta, d.sigma, k, d.config)
