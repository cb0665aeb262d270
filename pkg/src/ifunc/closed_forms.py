"""Elementary values of I-functions whose parameters match a known pattern."""

from __future__ import annotations

import math
from typing import Optional

from scipy.special import gamma as gamma_fn

from .params import IFunctionParams

__all__ = ["closed_form", "constant_pattern", "EXPONENTIAL_PATTERN"]


def constant_pattern() -> IFunctionParams:
    """``I^{1,0}_{1,1}[w | (1,1,1); (0,1,1)]``, equal to one for ``0 < w < 1``."""
    return IFunctionParams(1, 0, [(1.0, 1.0, 1.0)], [(0.0, 1.0, 1.0)])


EXPONENTIAL_PATTERN = IFunctionParams(1, 0, [], [(0.0, 1.0, 1.0)])


def _unit_exponents(params: IFunctionParams) -> bool:
    return all(t.exponent == 1.0 for t in params.upper + params.lower)


def closed_form(params: IFunctionParams, z) -> Optional[float]:
    """Elementary value of the I-function at real ``z > 0``, or ``None``
    when the parameters match no known pattern.

    Patterns (all exponents one):

    * ``I^{1,0}_{0,1}[z | (b,B)] = z**(b/B) * exp(-z**(1/B)) / B``
    * ``I^{1,1}_{1,1}[z | (b-a+1,1); (b,1)] = Gamma(a) z**b (1+z)**-a``
    * ``I^{0,1}_{1,1}[z | (b+1,1); (b,1)] = z**b`` for ``z > 1`` and 0 for ``z < 1``
    * ``I^{1,0}_{1,1}[z | (a+b+1,1); (b,1)] = z**b (1-z)**a / Gamma(a+1)`` for
      ``z < 1`` and 0 for ``z > 1`` (the constant pattern is ``a = b = 0``)
    """
    if isinstance(z, complex):
        if z.imag != 0:
            return None
        z = z.real
    z = float(z)
    if not z > 0 or not params.is_real or not _unit_exponents(params):
        return None
    key = (params.m, params.n, params.p, params.q)
    up, lo = params.upper, params.lower

    if key == (1, 0, 0, 1):
        b, B = lo[0].shift, lo[0].scale
        return z ** (b / B) * math.exp(-z ** (1.0 / B)) / B

    if params.p != 1 or params.q != 1 or up[0].scale != 1.0 or lo[0].scale != 1.0:
        return None
    a_up, b = up[0].shift, lo[0].shift

    if key == (1, 1, 1, 1):
        a = b - a_up + 1.0
        if a <= 0 and a == round(a):
            return None
        return gamma_fn(a) * z ** b * (1.0 + z) ** (-a)

    if key == (0, 1, 1, 1) and a_up == b + 1.0:
        if z == 1.0:
            return None
        return z ** b if z > 1.0 else 0.0

    if key == (1, 0, 1, 1):
        a = a_up - b - 1.0
        if a <= -1.0 or z == 1.0:
            return None
        if z > 1.0:
            return 0.0
        return z ** b * (1.0 - z) ** a / gamma_fn(a + 1.0)

    return None
