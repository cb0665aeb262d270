"""The I-function distribution: density ``k0 * I(delta * x**sigma)`` on
``x > 0`` and everything computable from it."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .contour import DEFAULT_CONFIG, EvalConfig, evaluate_log
from .errors import (
    BracketError,
    DivergenceError,
    DomainError,
    MomentDivergenceError,
    NegativeDensityError,
    NormalizationError,
    PoleError,
    StripError,
)
from .params import IFunctionParams, log_chi, pole_strip
from .transforms import MellinFunction, _log_real_power_base, laplace_ifunction_log, log_mellin_ifunction

__all__ = [
    "IDistribution",
    "make_distribution",
    "pdf",
    "cdf",
    "survival",
    "hazard",
    "moment",
    "characteristic",
    "mgf",
    "mgf_strip",
    "order_statistic_pdf",
    "quantile",
    "sample",
    "survival_params",
    "cdf_params",
]

PROBE_POINTS = 64


def _scaled(triples, sigma):
    return [(t.shift + t.scale / sigma, t.scale / sigma, t.exponent) for t in triples]


def survival_params(params: IFunctionParams, sigma: float) -> IFunctionParams:
    """Kernel ``chi((s+1)/sigma) / s`` (valid for ``Re s > 0``) whose
    I-function, times ``k0 / (sigma * delta**(1/sigma))``, is the survival
    function at ``delta**(1/sigma) * x``."""
    upper = _scaled(params.upper, sigma) + [(1.0, 1.0, 1.0)]
    lower = [(0.0, 1.0, 1.0)] + _scaled(params.lower, sigma)
    return IFunctionParams(params.m + 1, params.n, upper, lower)


def cdf_params(params: IFunctionParams, sigma: float) -> IFunctionParams:
    """Kernel ``-chi((s+1)/sigma) / s`` (valid for ``Re s < 0``) giving the
    distribution function with the same prefactor and argument."""
    upper = [(1.0, 1.0, 1.0)] + _scaled(params.upper, sigma)
    lower = _scaled(params.lower, sigma) + [(0.0, 1.0, 1.0)]
    return IFunctionParams(params.m, params.n + 1, upper, lower)


@dataclass(frozen=True)
class IDistribution:
    """Normalized I-function distribution.

    ``support`` is the open interval carrying the density; it is ``(0, inf)``
    unless the kernel is known to vanish outside a smaller interval.
    """

    params: IFunctionParams
    delta: float
    sigma: float
    k0: float
    support: tuple = (0.0, math.inf)
    config: EvalConfig = field(default=DEFAULT_CONFIG, compare=False, repr=False)

    # -- construction helpers ------------------------------------------------

    @cached_property
    def _log_delta(self) -> complex:
        return _log_real_power_base(self.delta, 1)

    @cached_property
    def _tail_coef(self) -> float:
        # k0 / (sigma * delta**(1/sigma))
        return self.k0 / (self.sigma * math.exp(self._log_delta.real / self.sigma))

    @cached_property
    def _survival_params(self):
        return survival_params(self.params, self.sigma)

    @cached_property
    def _cdf_params(self):
        return cdf_params(self.params, self.sigma)

    def with_config(self, config: EvalConfig) -> "IDistribution":
        return IDistribution(self.params, self.delta, self.sigma, self.k0, self.support, config)

    def in_support(self, x: float) -> bool:
        return self.support[0] < x < self.support[1]

    # -- density and distribution function ------------------------------------

    def pdf(self, x) -> float:
        if np.ndim(x):
            return np.array([self.pdf(float(v)) for v in np.ravel(x)]).reshape(np.shape(x))
        x = float(x)
        if not x > 0 or not self.in_support(x):
            return 0.0
        logz = self._log_delta + self.sigma * math.log(x)
        return self.k0 * evaluate_log(self.params, logz, self.config).real

    def _tail_integral(self, params, x) -> float:
        logz = self._log_delta.real / self.sigma + math.log(x)
        return self._tail_coef * evaluate_log(params, logz, self.config).real

    def _cdf_pair(self, x: float):
        lo, hi = self.support
        if x <= lo or x <= 0:
            return 0.0, 1.0
        if x >= hi:
            return 1.0, 0.0
        surv = self._tail_integral(self._survival_params, x)
        if surv < 0.5:
            surv = min(max(surv, 0.0), 1.0)
            return 1.0 - surv, surv
        cdf = min(max(self._tail_integral(self._cdf_params, x), 0.0), 1.0)
        return cdf, 1.0 - cdf

    def cdf(self, x) -> float:
        if np.ndim(x):
            return np.array([self.cdf(float(v)) for v in np.ravel(x)]).reshape(np.shape(x))
        return self._cdf_pair(float(x))[0]

    def survival(self, x) -> float:
        if np.ndim(x):
            return np.array([self.survival(float(v)) for v in np.ravel(x)]).reshape(np.shape(x))
        return self._cdf_pair(float(x))[1]

    def hazard(self, x: float) -> float:
        surv = self.survival(x)
        if not surv > 0:
            raise DomainError(f"survival function vanishes at x={x!r}; hazard undefined")
        return self.pdf(x) / surv

    # -- transforms ----------------------------------------------------------

    def mellin(self, s) -> complex:
        """``E[X**(s-1)]`` at complex ``s`` inside the strip."""
        return self.mellin_function()(s)

    def mellin_function(self) -> MellinFunction:
        lo, hi = pole_strip(self.params)
        log_k0 = math.log(self.k0)

        def f(s):
            lm = log_mellin_ifunction(self.params, self.delta, self.sigma, s)
            return 0j if lm.real == -math.inf else cmath.exp(lm + log_k0)

        return MellinFunction(f, self.sigma * lo, self.sigma * hi)

    def moment(self, r: float) -> float:
        t = (1.0 + r) / self.sigma
        lo, hi = pole_strip(self.params)
        if not lo < t < hi:
            raise MomentDivergenceError(f"moment of order {r!r} does not exist")
        try:
            lm = log_mellin_ifunction(self.params, self.delta, self.sigma, 1.0 + r)
        except PoleError as exc:
            raise MomentDivergenceError(f"moment of order {r!r} hits a pole: {exc}") from None
        if lm.real == -math.inf:
            return 0.0
        return (self.k0 * cmath.exp(lm)).real

    def characteristic(self, t: float) -> complex:
        """``E[exp(i t X)]``."""
        t = float(t)
        if t == 0:
            return 1.0 + 0j
        log_r = complex(math.log(abs(t)), -math.copysign(math.pi / 2, t))
        return self.k0 * laplace_ifunction_log(self.params, self.delta, self.sigma, log_r, self.config)

    def mgf_strip(self) -> tuple:
        """Interval of ``t`` on which ``E[exp(t X)]`` is finite, as
        ``(lo, hi, hi_included)``."""
        if math.isfinite(self.support[1]):
            return (-math.inf, math.inf, True)
        p = self.params
        if p.n > 0:
            return (-math.inf, 0.0, True)
        nabla = sum(t.exponent * t.scale for t in p.lower) - sum(t.exponent * t.scale for t in p.upper)
        if nabla <= 0:
            return (-math.inf, 0.0, True)
        order = self.sigma / nabla
        if order > 1 + 1e-12:
            return (-math.inf, math.inf, True)
        if order < 1 - 1e-12:
            return (-math.inf, 0.0, True)
        kappa = sum(t.exponent * t.scale * math.log(t.scale) for t in p.lower) - sum(
            t.exponent * t.scale * math.log(t.scale) for t in p.upper
        )
        rate = nabla * (self.delta * math.exp(-kappa)) ** (1.0 / nabla)
        return (-math.inf, rate, False)

    def mgf(self, t: float) -> float:
        """``E[exp(t X)]`` where it is finite."""
        t = float(t)
        lo, hi, closed = self.mgf_strip()
        if t > hi or (t == hi and not closed):
            raise DivergenceError(f"moment generating function diverges at t={t!r} (strip ends at {hi!r})")
        if t == 0:
            return 1.0
        log_r = complex(math.log(abs(t)), math.pi if t > 0 else 0.0)
        return (self.k0 * laplace_ifunction_log(self.params, self.delta, self.sigma, log_r, self.config)).real

    # -- order statistics, quantiles, sampling -----------------------------

    def order_statistic_pdf(self, N: int, j: int, x: float) -> float:
        if int(N) != N or N < 1 or int(j) != j or not 1 <= j <= N:
            raise DomainError("need integers 1 <= j <= N")
        f = self.pdf(x)
        if f == 0:
            return 0.0
        F, S = self._cdf_pair(float(x))
        coef = math.exp(math.lgamma(N + 1) - math.lgamma(j) - math.lgamma(N - j + 1))
        return coef * f * F ** (j - 1) * S ** (N - j)

    def _bracket(self, p: float):
        lo, hi = self.support
        if math.isfinite(hi):
            return max(lo, 0.0), hi
        x = max(1.0, 2.0 * lo) if lo > 0 else 1.0
        a, b = x, x
        for _ in range(200):
            if self.cdf(b) >= p:
                break
            a, b = b, 4.0 * b
        else:
            raise BracketError(f"no upper bracket for p={p!r}")
        if a == b:
            for _ in range(200):
                a = 0.25 * a if lo <= 0 else lo + 0.25 * (a - lo)
                if self.cdf(a) <= p:
                    break
            else:
                raise BracketError(f"no lower bracket for p={p!r}")
        return a, b

    def quantile(self, p: float, bracket: Optional[tuple] = None) -> float:
        if not 0 < p < 1:
            raise DomainError("p must lie in (0, 1)")
        a, b = bracket if bracket is not None else self._bracket(p)
        fa, fb = self.cdf(a) - p, self.cdf(b) - p
        if fa > 0 or fb < 0:
            raise BracketError(f"cdf does not bracket p={p!r} on [{a!r}, {b!r}]")
        if fa == 0:
            return a
        if fb == 0:
            return b
        return brentq(lambda x: self.cdf(x) - p, a, b, xtol=1e-14, rtol=1e-10, maxiter=200)

    def sample(self, count: int, seed=None) -> np.ndarray:
        """Inverse-transform sample of ``count`` values from a seeded stream."""
        rng = np.random.default_rng(seed)
        u = rng.random(int(count))
        if u.size <= 16:
            return np.array([self.quantile(p) for p in u])
        # a monotone table of the cdf narrows each root search
        lo_p, hi_p = max(u.min() * 0.5, 1e-12), 1 - max((1 - u.max()) * 0.5, 1e-12)
        x_lo, x_hi = self._bracket(lo_p)[0], self._bracket(hi_p)[1]
        if x_lo > 0 and math.isinf(self.support[1]):
            grid = np.geomspace(x_lo, x_hi, 256)
        else:
            grid = np.linspace(x_lo, x_hi, 256)
        table = np.maximum.accumulate(self.cdf(grid))
        out = np.empty(u.size)
        for k, p in enumerate(u):
            i = int(np.searchsorted(table, p))
            a = grid[max(i - 1, 0)]
            b = grid[min(i, grid.size - 1)]
            if not (self.cdf(a) <= p <= self.cdf(b)):
                a, b = self._bracket(p)
            out[k] = self.quantile(p, bracket=(a, b))
        return out

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        hi = self.support[1]
        return {
            "ifunction": self.params.to_dict(),
            "delta": self.delta,
            "sigma": self.sigma,
            "support": [self.support[0], None if math.isinf(hi) else hi],
        }


def _probe_grid(support):
    lo, hi = support
    if math.isfinite(hi):
        return lo + (hi - lo) * np.linspace(0.0, 1.0, PROBE_POINTS + 2)[1:-1]
    grid = np.geomspace(1e-4, 1e4, PROBE_POINTS)
    return grid[grid > lo]


def normalizing_constant(params: IFunctionParams, delta: float, sigma: float) -> float:
    """``k0 = sigma * delta**(1/sigma) / chi(1/sigma)``."""
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    if delta == 0:
        raise DomainError("delta must be nonzero")
    t = 1.0 / sigma
    try:
        lo, hi = pole_strip(params)
    except DomainError as exc:
        raise NormalizationError(str(exc)) from None
    if not lo < t < hi:
        raise NormalizationError(f"1/sigma = {t!r} lies outside the strip ({lo!r}, {hi!r})")
    try:
        lc = log_chi(params, t)
    except PoleError as exc:
        raise NormalizationError(f"chi(1/sigma) is at a pole: {exc}") from None
    if lc.real == -math.inf:
        raise NormalizationError("chi(1/sigma) vanishes")
    log_delta = _log_real_power_base(delta, t)
    value = sigma * cmath.exp(t * log_delta - lc)
    if abs(value.imag) > 1e-12 * abs(value) or not value.real > 0 or not math.isfinite(value.real):
        raise NormalizationError(f"normalizing constant is not finite and positive: {value!r}")
    return value.real


def make_distribution(
    params: IFunctionParams,
    delta: float,
    sigma: float,
    support: Optional[tuple] = None,
    validate: bool = True,
    config: EvalConfig = DEFAULT_CONFIG,
) -> IDistribution:
    """Build and (optionally) probe-validate an I-function distribution."""
    delta, sigma = float(delta), float(sigma)
    k0 = normalizing_constant(params, delta, sigma)
    if support is None:
        support = (0.0, math.inf)
    lo = float(support[0])
    hi = math.inf if support[1] is None else float(support[1])
    if not 0 <= lo < hi:
        raise DomainError(f"invalid support ({lo!r}, {hi!r})")
    d = IDistribution(params, delta, sigma, k0, (lo, hi), config)
    if validate:
        # ascending scan, so a sign change is reported before any far-tail failure
        scale = 0.0
        for x in _probe_grid(d.support):
            v = d.pdf(x)
            scale = max(scale, abs(v))
            if v < -1e-10 * scale:
                raise NegativeDensityError(float(x), float(v))
    return d


def distribution_from_dict(data: dict, validate: bool = True) -> IDistribution:
    try:
        params = IFunctionParams.from_dict(data["ifunction"])
        support = data.get("support", [0.0, None])
        return make_distribution(params, float(data["delta"]), float(data["sigma"]), tuple(support), validate)
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed distribution record: {exc}") from exc


# functional spellings

def pdf(d: IDistribution, x):
    return d.pdf(x)


def cdf(d: IDistribution, x):
    return d.cdf(x)


def survival(d: IDistribution, x):
    return d.survival(x)


def hazard(d: IDistribution, x):
    return d.hazard(x)


def moment(d: IDistribution, r):
    return d.moment(r)


def characteristic(d: IDistribution, t):
    return d.characteristic(t)


def mgf(d: IDistribution, t):
    return d.mgf(t)


def mgf_strip(d: IDistribution):
    return d.mgf_strip()


def order_statistic_pdf(d: IDistribution, N: int, j: int, x):
    return d.order_statistic_pdf(N, j, x)


def quantile(d: IDistribution, p):
    return d.quantile(p)


def sample(d: IDistribution, count: int, seed=None):
    return d.sample(count, seed)
