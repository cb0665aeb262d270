"""Standard positive distributions written as I-function distributions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.special import gamma as G

from .distribution import IDistribution, make_distribution
from .errors import DomainError
from .params import IFunctionParams

__all__ = ["CatalogEntry", "CATALOG", "catalog", "catalog_names", "entry"]


@dataclass(frozen=True)
class CatalogEntry:
    """Parameters of one named family.

    ``build(**kw)`` returns ``(params, delta, support)`` (all entries use
    ``sigma = 1``); ``coefficient(**kw)`` is the textbook factor in front of
    the I-function, which must coincide with the computed ``k0``.
    """

    name: str
    parameters: tuple
    defaults: dict
    build: Callable
    coefficient: Callable
    description: str


def _pos(**kw):
    for k, v in kw.items():
        if not (isinstance(v, (int, float)) and v > 0 and math.isfinite(v)):
            raise DomainError(f"parameter {k} must be positive, got {v!r}")


def _lower(*triples, m=1, n=0, upper=()):
    return IFunctionParams(m, n, list(upper), list(triples))


def _gamma(theta, lam):
    _pos(theta=theta, lam=lam)
    return _lower((theta - 1, 1, 1)), 1 / lam, (0.0, math.inf)


def _exponential(lam):
    _pos(lam=lam)
    return _lower((0, 1, 1)), 1 / lam, (0.0, math.inf)


def _chi_square(nu):
    _pos(nu=nu)
    return _lower((nu / 2 - 1, 1, 1)), 0.5, (0.0, math.inf)


def _weibull(theta, lam):
    _pos(theta=theta, lam=lam)
    return _lower((1 - 1 / theta, 1 / theta, 1)), lam ** (-1 / theta), (0.0, math.inf)


def _rayleigh(nu):
    _pos(nu=nu)
    return _lower((0.5, 0.5, 1)), 1 / (nu * math.sqrt(2)), (0.0, math.inf)


def _maxwell(lam):
    _pos(lam=lam)
    return _lower((1, 0.5, 1)), 1 / lam, (0.0, math.inf)


def _half_normal(lam):
    _pos(lam=lam)
    return _lower((0, 0.5, 1)), 1 / (lam * math.sqrt(2)), (0.0, math.inf)


def _half_cauchy(lam):
    _pos(lam=lam)
    return IFunctionParams(1, 1, [(0, 0.5, 1)], [(0, 0.5, 1)]), 1 / lam, (0.0, math.inf)


def _beta1(theta, lam):
    _pos(theta=theta, lam=lam)
    return IFunctionParams(1, 0, [(theta + lam - 1, 1, 1)], [(theta - 1, 1, 1)]), 1.0, (0.0, 1.0)


def _beta2(theta, lam):
    _pos(theta=theta, lam=lam)
    return IFunctionParams(1, 1, [(-lam, 1, 1)], [(theta - 1, 1, 1)]), lam / theta, (0.0, math.inf)


def _power(theta):
    _pos(theta=theta)
    return IFunctionParams(1, 0, [(theta, 1, 1)], [(theta - 1, 1, 1)]), 1.0, (0.0, 1.0)


def _uniform():
    return _power(1.0)


def _pareto(lam):
    _pos(lam=lam)
    return IFunctionParams(0, 1, [(-lam, 1, 1)], [(-lam - 1, 1, 1)]), 1.0, (1.0, math.inf)


def _half_student(nu):
    _pos(nu=nu)
    return IFunctionParams(1, 1, [((1 - nu) / 2, 0.5, 1)], [(0, 0.5, 1)]), 1 / math.sqrt(nu), (0.0, math.inf)


def _f(theta, lam):
    _pos(theta=theta, lam=lam)
    return IFunctionParams(1, 1, [(-lam / 2, 1, 1)], [(theta / 2 - 1, 1, 1)]), theta / lam, (0.0, math.inf)


def _general_hypergeometric(a, c, d, alpha, beta):
    _pos(a=a, c=c, d=d, alpha=alpha, beta=beta)
    if not (alpha > c / d and beta > c / d):
        raise DomainError("need alpha > c/d and beta > c/d")
    k = (c - 1) / d
    params = IFunctionParams(
        1, 1, [(1 - alpha + k, 1 / d, 1)], [(k, 1 / d, 1), (1 - beta + k, 1 / d, 1)]
    )
    return params, a ** (1 / d), (0.0, math.inf)


_ENTRIES = [
    CatalogEntry("gamma", ("theta", "lam"), {"theta": 2.0, "lam": 1.0}, _gamma,
                 lambda theta, lam: 1 / (lam * G(theta)), "gamma with shape theta and scale lam"),
    CatalogEntry("exponential", ("lam",), {"lam": 1.0}, _exponential,
                 lambda lam: 1 / lam, "exponential with mean lam"),
    CatalogEntry("chi_square", ("nu",), {"nu": 3.0}, _chi_square,
                 lambda nu: 1 / (2 * G(nu / 2)), "chi-square with nu degrees of freedom"),
    CatalogEntry("weibull", ("theta", "lam"), {"theta": 2.0, "lam": 1.0}, _weibull,
                 lambda theta, lam: lam ** (-1 / theta), "Weibull, density (theta/lam) x^(theta-1) exp(-x^theta/lam)"),
    CatalogEntry("rayleigh", ("nu",), {"nu": 1.0}, _rayleigh,
                 lambda nu: 1 / (nu * math.sqrt(2)), "Rayleigh with scale nu"),
    CatalogEntry("maxwell", ("lam",), {"lam": 1.0}, _maxwell,
                 lambda lam: 2 / (lam * math.sqrt(math.pi)), "Maxwell with scale lam"),
    CatalogEntry("half_normal", ("lam",), {"lam": 1.0}, _half_normal,
                 lambda lam: 1 / (lam * math.sqrt(2 * math.pi)), "half-normal with scale lam"),
    CatalogEntry("half_cauchy", ("lam",), {"lam": 1.0}, _half_cauchy,
                 lambda lam: 1 / (lam * math.pi), "half-Cauchy with scale lam"),
    CatalogEntry("beta_first_kind", ("theta", "lam"), {"theta": 2.0, "lam": 3.0}, _beta1,
                 lambda theta, lam: G(theta + lam) / G(theta), "beta on (0, 1)"),
    CatalogEntry("beta_second_kind", ("theta", "lam"), {"theta": 2.0, "lam": 3.0}, _beta2,
                 lambda theta, lam: lam / (theta * G(theta) * G(lam)), "beta prime, scaled by lam/theta"),
    CatalogEntry("power_function", ("theta",), {"theta": 2.0}, _power,
                 lambda theta: theta, "power function theta x^(theta-1) on (0, 1)"),
    CatalogEntry("uniform", (), {}, _uniform, lambda: 1.0, "uniform on (0, 1)"),
    CatalogEntry("pareto", ("lam",), {"lam": 2.0}, _pareto,
                 lambda lam: lam, "Pareto lam x^-(lam+1) on (1, inf)"),
    CatalogEntry("half_student", ("nu",), {"nu": 3.0}, _half_student,
                 lambda nu: 1 / (math.sqrt(nu * math.pi) * G(nu / 2)), "half Student t with nu degrees of freedom"),
    CatalogEntry("f", ("theta", "lam"), {"theta": 4.0, "lam": 6.0}, _f,
                 lambda theta, lam: theta / (lam * G(theta / 2) * G(lam / 2)), "F with (theta, lam) degrees of freedom"),
    CatalogEntry("general_hypergeometric", ("a", "c", "d", "alpha", "beta"),
                 {"a": 1.0, "c": 2.0, "d": 2.0, "alpha": 2.0, "beta": 3.0}, _general_hypergeometric,
                 lambda a, c, d, alpha, beta: a ** (1 / d) * G(beta - c / d) / (G(c / d) * G(alpha - c / d)),
                 "density proportional to x^(c-1) 1F1(alpha; beta; -a x^d)"),
]

CATALOG = {e.name: e for e in _ENTRIES}
ALIASES = {"beta1": "beta_first_kind", "beta2": "beta_second_kind", "power": "power_function", "chi2": "chi_square"}


def catalog_names() -> list:
    return [e.name for e in _ENTRIES]


def entry(name: str) -> CatalogEntry:
    key = ALIASES.get(name, name)
    if key not in CATALOG:
        raise DomainError(f"unknown catalog entry {name!r}")
    return CATALOG[key]


def catalog(name: str, validate: bool = True, **kwargs) -> IDistribution:
    """The named family as an I-function distribution.

    Unspecified parameters take the entry's defaults.
    """
    e = entry(name)
    unknown = set(kwargs) - set(e.parameters)
    if unknown:
        raise DomainError(f"{e.name} has no parameter(s) {sorted(unknown)}")
    values = {**e.defaults, **{k: float(v) for k, v in kwargs.items()}}
    params, delta, support = e.build(**values)
    return make_distribution(params, delta, 1.0, support, validate=validate)
