"""Closure of I-function variates under products, quotients, positive
scaling and nonzero powers, and densities built from a product of two
I-functions."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .contour import DEFAULT_CONFIG, EvalConfig, evaluate_info
from .distribution import IDistribution, make_distribution
from .errors import DomainError, MomentDivergenceError, NormalizationError, PoleError
from .params import IFunctionParams
from .transforms import _log_real_power_base, product_mellin_params

__all__ = [
    "product",
    "scale",
    "power",
    "quotient",
    "ProductFormDistribution",
    "make_product_form",
    "product_form_pdf",
    "product_form_moment",
    "bessel_gamma",
    "noncentral_chi_square",
    "confluent_gamma",
    "product_form_from_dict",
]


def _rescaled(triples, sigma):
    return [(t.shift, t.scale / sigma, t.exponent) for t in triples]


def _root_delta(d: IDistribution) -> float:
    """``delta**(1/sigma)`` as a real number."""
    ld = _log_real_power_base(d.delta, 1.0 / d.sigma) / d.sigma
    value = cmath.exp(ld)
    return value.real


def _finish(params, delta, support) -> IDistribution:
    # the constructions preserve nonnegativity, so the probe check is skipped
    return make_distribution(params, delta, 1.0, support, validate=False)


def product(ds: Sequence[IDistribution]) -> IDistribution:
    """Distribution of the product of independent variates."""
    ds = list(ds)
    if not ds:
        raise DomainError("product needs at least one factor")
    up_num, up_rest, lo_num, lo_rest = [], [], [], []
    delta = 1.0
    lo, hi = 1.0, 1.0
    for d in ds:
        p = d.params
        up = _rescaled(p.upper, d.sigma)
        lw = _rescaled(p.lower, d.sigma)
        up_num += up[: p.n]
        up_rest += up[p.n :]
        lo_num += lw[: p.m]
        lo_rest += lw[p.m :]
        delta *= _root_delta(d)
        lo *= d.support[0]
        hi *= d.support[1]
    params = IFunctionParams(len(lo_num), len(up_num), up_num + up_rest, lo_num + lo_rest)
    return _finish(params, delta, (lo, hi))


def scale(d: IDistribution, a: float) -> IDistribution:
    """Distribution of ``a * X`` for ``a > 0``."""
    if not a > 0 or not math.isfinite(a):
        raise DomainError(f"scale factor must be positive and finite, got {a!r}")
    p = d.params
    params = IFunctionParams(p.m, p.n, _rescaled(p.upper, d.sigma), _rescaled(p.lower, d.sigma))
    lo, hi = d.support
    return _finish(params, _root_delta(d) / a, (a * lo, a * hi))


def _as_real_power(r) -> float:
    if isinstance(r, str):
        r = Fraction(r)
    r = float(r)
    if r == 0 or not math.isfinite(r):
        raise DomainError(f"power must be finite and nonzero, got {r!r}")
    return r


def _power_support(support, r):
    lo, hi = support

    def pw(x):
        if x == 0:
            return 0.0 if r > 0 else math.inf
        if math.isinf(x):
            return math.inf if r > 0 else 0.0
        return x**r

    a, b = pw(lo), pw(hi)
    return (a, b) if r > 0 else (b, a)


def power(d: IDistribution, r) -> IDistribution:
    """Distribution of ``X**r`` for nonzero ``r`` (a float, ``Fraction`` or
    a string such as ``"1/3"``)."""
    r = _as_real_power(r)
    p, sg = d.params, d.sigma
    k = r / sg
    if r > 0:
        upper = [(t.shift - k * t.scale + t.scale / sg, k * t.scale, t.exponent) for t in p.upper]
        lower = [(t.shift - k * t.scale + t.scale / sg, k * t.scale, t.exponent) for t in p.lower]
        params = IFunctionParams(p.m, p.n, upper, lower)
    else:
        # s -> (1 - r s + ...) reverses orientation: lower blocks move up, reflected
        upper = [(1 - t.shift + k * t.scale - t.scale / sg, -k * t.scale, t.exponent) for t in p.lower]
        lower = [(1 - t.shift + k * t.scale - t.scale / sg, -k * t.scale, t.exponent) for t in p.upper]
        params = IFunctionParams(p.n, p.m, upper, lower)
    delta = cmath.exp(k * _log_real_power_base(d.delta, k)).real
    return _finish(params, delta, _power_support(d.support, r))


def _ratio_support(s1, s2):
    lo1, hi1 = s1
    lo2, hi2 = s2
    lo = 0.0 if (lo1 == 0 or math.isinf(hi2)) else lo1 / hi2
    hi = math.inf if (math.isinf(hi1) or lo2 == 0) else hi1 / lo2
    return lo, hi


def quotient(d1: IDistribution, d2: IDistribution) -> IDistribution:
    """Distribution of ``X1 / X2``; the kernel is ``chi1(s/s1) chi2((2-s)/s2)``."""
    p1, p2 = d1.params, d2.params
    s1, s2 = d1.sigma, d2.sigma
    a1 = _rescaled(p1.upper, s1)
    b1 = _rescaled(p1.lower, s1)
    refl_b2 = [(1 - t.shift - 2 * t.scale / s2, t.scale / s2, t.exponent) for t in p2.lower]
    refl_a2 = [(1 - t.shift - 2 * t.scale / s2, t.scale / s2, t.exponent) for t in p2.upper]
    upper = a1[: p1.n] + refl_b2 + a1[p1.n :]
    lower = b1[: p1.m] + refl_a2 + b1[p1.m :]
    params = IFunctionParams(p1.m + p2.n, p1.n + p2.m, upper, lower)
    delta = _root_delta(d1) / _root_delta(d2)
    return _finish(params, delta, _ratio_support(d1.support, d2.support))


# -- product of two I-functions ------------------------------------------


@dataclass(frozen=True)
class ProductFormDistribution:
    """Density ``k1 * I1(delta x**sigma) * I2(eta x**mu)`` on ``x > 0``."""

    params: IFunctionParams
    delta: float
    sigma: float
    params2: IFunctionParams
    eta: float
    mu: float
    k1: float
    config: EvalConfig = field(default=DEFAULT_CONFIG, compare=False, repr=False)

    def pdf(self, x) -> float:
        x = float(x)
        if not x > 0:
            return 0.0
        lx = math.log(x)
        # one factor may underflow while the other is huge, so combine in log space
        r1 = evaluate_info(self.params, _log_real_power_base(self.delta, 1) + self.sigma * lx, self.config, underflow=False)
        r2 = evaluate_info(self.params2, _log_real_power_base(self.eta, 1) + self.mu * lx, self.config, underflow=False)
        m = (r1.mantissa * r2.mantissa).real
        if m == 0:
            return 0.0
        log_value = math.log(self.k1 * abs(m)) + r1.log_scale + r2.log_scale
        return math.copysign(math.exp(log_value), m) if log_value < 709.78 else math.copysign(math.inf, m)

    def mellin(self, s) -> complex:
        """``E[X**(s-1)]``."""
        pm = product_mellin_params(self.params, self.delta, self.sigma, self.params2, self.eta, self.mu, s)
        return self.k1 * pm.value(self.config)

    def moment(self, r: float) -> float:
        try:
            value = self.mellin(1.0 + r)
        except (PoleError, DomainError) as exc:
            raise MomentDivergenceError(f"moment of order {r!r} does not exist: {exc}") from None
        return value.real

    def to_dict(self) -> dict:
        return {
            "ifunction": self.params.to_dict(),
            "delta": self.delta,
            "sigma": self.sigma,
            "support": [0.0, None],
            "factor2": {"ifunction": self.params2.to_dict(), "eta": self.eta, "mu": self.mu},
        }


def make_product_form(params, delta, sigma, params2, eta, mu, config: EvalConfig = DEFAULT_CONFIG) -> ProductFormDistribution:
    """Normalize ``I1(delta x**sigma) * I2(eta x**mu)`` through its Mellin
    transform at ``s = 1``."""
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    if not mu >= 0:
        raise DomainError(f"mu must be nonnegative, got {mu!r}")
    if delta == 0 or eta == 0:
        raise DomainError("delta and eta must be nonzero")
    try:
        pm = product_mellin_params(params, float(delta), float(sigma), params2, float(eta), float(mu), 1.0)
        total = pm.value(config)
    except (PoleError, DomainError) as exc:
        raise NormalizationError(f"the total mass is undefined: {exc}") from None
    if not (total.real > 0 and math.isfinite(total.real)) or abs(total.imag) > 1e-8 * abs(total.real):
        raise NormalizationError(f"total mass is not finite and positive: {total!r}")
    return ProductFormDistribution(params, float(delta), float(sigma), params2, float(eta), float(mu), 1.0 / total.real, config)


def product_form_pdf(pf: ProductFormDistribution, x) -> float:
    return pf.pdf(x)


def product_form_moment(pf: ProductFormDistribution, r: float) -> float:
    return pf.moment(r)


def product_form_from_dict(data: dict, config: EvalConfig = DEFAULT_CONFIG) -> ProductFormDistribution:
    try:
        f2 = data["factor2"]
        return make_product_form(
            IFunctionParams.from_dict(data["ifunction"]),
            float(data["delta"]),
            float(data["sigma"]),
            IFunctionParams.from_dict(f2["ifunction"]),
            float(f2["eta"]),
            float(f2["mu"]),
            config,
        )
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed product-form record: {exc}") from exc


def _gamma_factor(shape: float) -> IFunctionParams:
    return IFunctionParams(1, 0, [], [(shape - 1.0, 1.0, 1.0)])


def bessel_gamma(alpha: float, a: float, lam: float) -> ProductFormDistribution:
    """Density proportional to ``x**(alpha-1) exp(-a x) 0F1(; alpha; lam x)``."""
    if not (alpha > 0 and a > 0) or lam == 0:
        raise DomainError("need alpha > 0, a > 0 and lam != 0")
    second = IFunctionParams(1, 0, [], [(0.0, 1.0, 1.0), (1.0 - alpha, 1.0, 1.0)])
    return make_product_form(_gamma_factor(alpha), a, 1.0, second, -lam, 1.0)


def noncentral_chi_square(nu: float, beta: float) -> ProductFormDistribution:
    """Noncentral chi-square with ``nu`` degrees of freedom and noncentrality ``beta``."""
    if not (nu > 0 and beta > 0):
        raise DomainError("need nu > 0 and beta > 0")
    return bessel_gamma(nu / 2.0, 0.5, beta / 4.0)


def confluent_gamma(alpha: float, beta: float, a: float) -> ProductFormDistribution:
    """Density proportional to ``x**(alpha-1) exp(-(a+1) x) 1F1(beta; alpha; x)``."""
    if not (alpha > 0 and beta > 0 and a > 0):
        raise DomainError("need alpha, beta, a > 0")
    second = IFunctionParams(1, 1, [(1.0 - beta, 1.0, 1.0)], [(0.0, 1.0, 1.0), (1.0 - alpha, 1.0, 1.0)])
    return make_product_form(_gamma_factor(alpha), a + 1.0, 1.0, second, -1.0, 1.0)
