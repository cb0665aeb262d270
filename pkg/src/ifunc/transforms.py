"""Mellin and Laplace transforms of I-functions and the Mellin-transform
rules for scaled, powered, multiplied and divided variates."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .contour import DEFAULT_CONFIG, EvalConfig, evaluate_log
from .errors import BranchError, DomainError, StripError
from .params import IFunctionParams, log_chi, pole_strip
from .special import log_gamma

__all__ = [
    "MellinFunction",
    "ProductMellin",
    "mellin_ifunction",
    "log_mellin_ifunction",
    "mellin_function",
    "product_mellin_params",
    "laplace_params",
    "laplace_ifunction",
    "laplace_ifunction_log",
    "epstein_scale",
    "epstein_power",
    "epstein_quotient",
    "epstein_product",
]

# strips are shrunk by this much before membership tests
STRIP_MARGIN = 1e-9


def _log_real_power_base(delta: float, exponent) -> complex:
    """``log(delta)`` for ``delta**exponent``; negative bases only with integer exponents."""
    if delta == 0:
        raise DomainError("delta must be nonzero")
    if delta > 0:
        return complex(math.log(delta))
    exponent = complex(exponent)
    if exponent.imag != 0 or exponent.real != round(exponent.real):
        raise BranchError(f"negative base {delta!r} raised to non-integer power {exponent!r}")
    return complex(math.log(-delta), math.pi)


def log_mellin_ifunction(params: IFunctionParams, delta: float, sigma: float, s) -> complex:
    """``log`` of ``chi(s/sigma) / (sigma * delta**(s/sigma))``."""
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    t = complex(s) / sigma
    return log_chi(params, t) - math.log(sigma) - t * _log_real_power_base(delta, t)


def mellin_ifunction(params: IFunctionParams, delta: float, sigma: float, s) -> complex:
    """Mellin transform of ``x -> I(delta * x**sigma)`` at ``s``."""
    lm = log_mellin_ifunction(params, delta, sigma, s)
    if lm.real == -math.inf:
        return 0j
    return cmath.exp(lm)


@dataclass(frozen=True)
class MellinFunction:
    """A Mellin transform together with its open strip of validity in ``Re s``."""

    func: Callable = field(repr=False)
    lo: float
    hi: float

    def __call__(self, s) -> complex:
        s = complex(s)
        if not self.contains(s):
            raise StripError(f"Re s = {s.real!r} is outside the strip ({self.lo!r}, {self.hi!r})")
        return complex(self.func(s))

    def contains(self, s) -> bool:
        x = complex(s).real
        return self.lo + STRIP_MARGIN < x < self.hi - STRIP_MARGIN

    def unchecked(self, s) -> complex:
        return complex(self.func(complex(s)))


def mellin_function(params: IFunctionParams, delta: float, sigma: float, factor: float = 1.0) -> MellinFunction:
    """``factor`` times the Mellin transform of ``I(delta * x**sigma)``."""
    lo, hi = pole_strip(params)
    return MellinFunction(
        lambda s: factor * mellin_ifunction(params, delta, sigma, s), sigma * lo, sigma * hi
    )


def epstein_scale(M: MellinFunction, a: float) -> MellinFunction:
    """Transform of ``a * X``: ``a**(s-1) * M(s)``."""
    if not a > 0:
        raise DomainError("scale factor must be positive")
    return MellinFunction(lambda s: a ** (s - 1) * M(s), M.lo, M.hi)


def epstein_power(M: MellinFunction, r: float) -> MellinFunction:
    """Transform of ``X**r``: ``M(r s - r + 1)``."""
    if r == 0:
        raise DomainError("power must be nonzero")
    ends = sorted(((M.lo - 1 + r) / r, (M.hi - 1 + r) / r))
    return MellinFunction(lambda s: M(r * s - r + 1), ends[0], ends[1])


def epstein_quotient(M1: MellinFunction, M2: MellinFunction) -> MellinFunction:
    """Transform of ``X1 / X2``: ``M1(s) * M2(2 - s)``."""
    lo = max(M1.lo, 2 - M2.hi)
    hi = min(M1.hi, 2 - M2.lo)
    return MellinFunction(lambda s: M1(s) * M2(2 - s), lo, hi)


def epstein_product(Ms: Sequence[MellinFunction]) -> MellinFunction:
    """Transform of ``X1 * X2 * ...``: the pointwise product."""
    Ms = list(Ms)
    if not Ms:
        raise DomainError("need at least one factor")
    lo = max(M.lo for M in Ms)
    hi = min(M.hi for M in Ms)

    def f(s):
        out = 1.0 + 0j
        for M in Ms:
            out *= M(s)
        return out

    return MellinFunction(f, lo, hi)


@dataclass(frozen=True)
class ProductMellin:
    """``integral x**(s-1) I1(delta x**sigma) I2(eta x**mu) dx`` as
    ``coefficient * base**exponent * I(argument)``.

    The power ``base**exponent = delta**(-s/sigma)`` is kept symbolic;
    ``coefficient`` holds ``1/sigma`` and any gamma factors that do not depend
    on the integration variable (they appear when ``mu = 0``).
    """

    log_coefficient: complex
    log_base: complex
    exponent: complex
    params: IFunctionParams
    argument: float

    @property
    def coefficient(self) -> complex:
        return cmath.exp(self.log_coefficient)

    @property
    def base(self) -> complex:
        return cmath.exp(self.log_base)

    def prefactor(self) -> complex:
        return cmath.exp(self.log_coefficient + self.exponent * self.log_base)

    def value(self, config: Optional[EvalConfig] = None) -> complex:
        config = config or DEFAULT_CONFIG
        if self.log_coefficient.real == -math.inf:
            return 0j
        log_arg = _log_real_power_base(self.argument, 1)
        return self.prefactor() * evaluate_log(self.params, log_arg, config)


def product_mellin_params(
    params1: IFunctionParams,
    delta: float,
    sigma: float,
    params2: IFunctionParams,
    eta: float,
    mu: float,
    s,
) -> ProductMellin:
    """Mellin transform at ``s`` of the product ``I1(delta x**sigma) * I2(eta x**mu)``
    written as a single I-function in ``eta / delta**(mu/sigma)``.

    The kernel in the second factor's variable ``w`` is
    ``chi2(w) * chi1(s/sigma - (mu/sigma) w)``; the first factor's lower
    triples turn into upper triples and vice versa.
    """
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    if not mu >= 0:
        raise DomainError("mu must be nonnegative")
    if eta == 0:
        raise DomainError("eta must be nonzero")
    s = complex(s)
    t = s / sigma
    log_delta = _log_real_power_base(delta, mu / sigma if mu else 1)
    if delta < 0 and (t.imag != 0 or t.real != round(t.real)):
        raise BranchError("negative delta needs an integer s/sigma")

    log_coef = complex(-math.log(sigma))
    new_upper_num, new_upper_den = [], []
    new_lower_num, new_lower_den = [], []
    # lower triples of the first factor
    for j, tr in enumerate(params1.lower):
        shift = 1 - tr.shift - tr.scale * t
        scale = mu * tr.scale / sigma
        numerator = j < params1.m
        if scale == 0:
            arg = tr.shift + tr.scale * t
            lg = tr.exponent * log_gamma(arg if numerator else 1 - tr.shift - tr.scale * t)
            log_coef += lg if numerator else -lg
        elif numerator:
            new_upper_num.append((shift, scale, tr.exponent))
        else:
            new_upper_den.append((shift, scale, tr.exponent))
    # upper triples of the first factor
    for i, tr in enumerate(params1.upper):
        shift = 1 - tr.shift - tr.scale * t
        scale = mu * tr.scale / sigma
        numerator = i < params1.n
        if scale == 0:
            arg = 1 - tr.shift - tr.scale * t if numerator else tr.shift + tr.scale * t
            lg = tr.exponent * log_gamma(arg)
            log_coef += lg if numerator else -lg
        elif numerator:
            new_lower_num.append((shift, scale, tr.exponent))
        else:
            new_lower_den.append((shift, scale, tr.exponent))

    n2, m2 = params2.n, params2.m
    upper = list(params2.upper[:n2]) + new_upper_num + new_upper_den + list(params2.upper[n2:])
    lower = list(params2.lower[:m2]) + new_lower_num + new_lower_den + list(params2.lower[m2:])
    new = IFunctionParams(m2 + len(new_lower_num), n2 + len(new_upper_num), upper, lower)
    argument = eta * math.exp(-(mu / sigma) * log_delta.real) * (
        1 if log_delta.imag == 0 else cmath.exp(-1j * (mu / sigma) * log_delta.imag).real
    )
    return ProductMellin(
        log_coefficient=log_coef,
        log_base=-log_delta / sigma,
        exponent=s,
        params=new,
        argument=argument,
    )


def laplace_params(params: IFunctionParams, sigma: float) -> IFunctionParams:
    """Parameters ``L`` with ``integral e^{-rx} I(delta x**sigma) dx
    = r**(sigma-1) / delta * L(r**sigma / delta)``."""
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    upper = [(1 - t.shift - t.scale, t.scale, t.exponent) for t in params.lower]
    lower = [(1 - sigma, sigma, 1.0)] + [(1 - t.shift - t.scale, t.scale, t.exponent) for t in params.upper]
    return IFunctionParams(params.n + 1, params.m, upper, lower)


def laplace_ifunction_log(params, delta, sigma, log_r, config: Optional[EvalConfig] = None) -> complex:
    """Laplace transform at ``r = exp(log_r)``; complex ``log_r`` continues it
    off the positive axis (characteristic and moment generating functions)."""
    if not delta > 0:
        raise BranchError("the Laplace form needs delta > 0")
    log_r = complex(log_r)
    lp = laplace_params(params, sigma)
    ld = math.log(delta)
    val = evaluate_log(lp, sigma * log_r - ld, config or DEFAULT_CONFIG)
    return cmath.exp((sigma - 1) * log_r - ld) * val


def laplace_ifunction(params, delta, sigma, r, config: Optional[EvalConfig] = None) -> float:
    """``integral_0^inf exp(-r x) I(delta x**sigma) dx`` for ``r > 0``."""
    if not r > 0:
        raise DomainError("r must be positive")
    return laplace_ifunction_log(params, delta, sigma, math.log(r), config).real
