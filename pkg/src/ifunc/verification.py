"""Independent oracles: quadrature, density-level Mellin convolutions,
direct samplers, elementary reference densities and Kolmogorov-Smirnov
statistics.

Nothing in this module evaluates gamma-kernel contour integrals; the
oracles only ever see the quantity under test as an opaque callable.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate as _spi
from scipy import special as sp

from .errors import DomainError, NonConvergenceError

__all__ = [
    "OracleReport",
    "compare",
    "integrate",
    "mellin_convolution",
    "quotient_convolution",
    "reference_sample",
    "reference_pdf",
    "reference_cdf",
    "reference_support",
    "ks_statistic",
    "ks_bound",
    "kolmogorov_threshold",
]

# the u = log x scan used to locate the mass of infinite-range integrands
SCAN_STEP = 0.5
SCAN_LIMIT = 700.0
NEGLIGIBLE = 1e-20


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    kernel: float
    oracle: float
    rel_error: float
    tolerance: float
    passed: bool

    def to_json(self) -> str:
        d = asdict(self)
        for k in ("kernel", "oracle", "rel_error"):
            if not math.isfinite(d[k]):
                d[k] = repr(d[k])
        return json.dumps(d)


def compare(quantity: str, kernel_value, oracle_value, tolerance: float, absolute: bool = False) -> OracleReport:
    """Relative error (absolute when the oracle is zero or ``absolute``)."""
    k, o = complex(kernel_value), complex(oracle_value)
    diff = abs(k - o)
    err = diff if (absolute or o == 0) else diff / abs(o)
    if math.isnan(err):
        err = math.inf
    kr = k.real if k.imag == 0 else abs(k)
    orr = o.real if o.imag == 0 else abs(o)
    return OracleReport(quantity, float(kr), float(orr), float(err), float(tolerance), bool(err <= tolerance))


def _quad_pieces(g, edges, rel_tol):
    total, err = 0.0, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        v, e, *rest = _spi.quad(g, lo, hi, epsabs=0.0, epsrel=0.1 * rel_tol, limit=500, full_output=1)
        total += v
        err += e
    return total, err


def _scan_range(g, u_lo, u_hi):
    """Sub-range of ``[u_lo, u_hi]`` outside which ``|g|`` is negligible.

    The scan walks outward from the point nearest ``u = 0`` and stops in each
    direction once ``|g|`` has stayed below ``NEGLIGIBLE`` times the running
    peak for several consecutive steps.
    """
    lo = max(u_lo, -SCAN_LIMIT)
    hi = min(u_hi, SCAN_LIMIT)
    start = min(max(0.0, lo), hi)
    values = {}

    def val(u):
        if u not in values:
            v = abs(g(u))
            if not math.isfinite(v):
                raise NonConvergenceError(f"integrand is not finite at log x = {u!r}")
            values[u] = v
        return values[u]

    peak = val(start)
    ends = []
    for direction, bound in ((-1.0, lo), (1.0, hi)):
        u, quiet = start, 0
        while quiet < 6:
            nxt = u + direction * SCAN_STEP
            if (nxt - bound) * direction >= 0:
                u = bound
                v = val(u)
                if math.isinf(u_lo if direction < 0 else u_hi) and v > NEGLIGIBLE * peak:
                    # clipped an infinite end while the integrand is still significant
                    raise NonConvergenceError(f"integrand does not decay towards log x = {direction * math.inf}")
                break
            u = nxt
            v = val(u)
            peak = max(peak, v)
            quiet = quiet + 1 if v <= NEGLIGIBLE * peak else 0
        ends.append(u)
    if peak == 0:
        return None
    return ends[0], ends[1]


def integrate(f: Callable[[float], float], lo: float, hi: float, rel_tol: float = 1e-10) -> float:
    """Adaptive quadrature of a real function.

    Ranges touching zero or infinity on the positive axis are mapped by
    ``x = exp(u)``; the mass is located on a scan grid and split into
    unit-length panels for scipy's adaptive Gauss-Kronrod rule.
    """
    if not lo < hi:
        if lo == hi:
            return 0.0
        raise DomainError("need lo < hi")
    if not 0 < rel_tol < 1:
        raise DomainError("rel_tol must lie in (0, 1)")
    total = 0.0
    if lo < 0:
        upper = min(hi, 0.0)
        if math.isinf(lo):
            g = lambda u: f(upper - math.exp(u)) * math.exp(u)  # noqa: E731
            v = _log_range_integral(g, -math.inf, math.inf, rel_tol)
        else:
            v = _finite_integral(f, lo, upper, rel_tol)
        total += v
        if hi <= 0:
            return total
        lo = 0.0
    if lo == 0 or math.isinf(hi):
        g = lambda u: _safe(f, math.exp(u)) * math.exp(u)  # noqa: E731
        u_lo = -math.inf if lo == 0 else math.log(lo)
        u_hi = math.inf if math.isinf(hi) else math.log(hi)
        return total + _log_range_integral(g, u_lo, u_hi, rel_tol)
    return total + _finite_integral(f, lo, hi, rel_tol)


def _safe(f, x):
    if x == 0 or math.isinf(x):
        return 0.0
    return f(x)


def _finite_integral(f, lo, hi, rel_tol):
    edges = np.linspace(lo, hi, 9)
    v, e = _quad_pieces(f, edges, rel_tol)
    if e > max(rel_tol * abs(v), 1e-300):
        raise NonConvergenceError(f"quadrature error estimate {e:.3g} exceeds tolerance for value {v:.6g}")
    return v


def _log_range_integral(g, u_lo, u_hi, rel_tol):
    rng = _scan_range(g, u_lo, u_hi)
    if rng is None:
        return 0.0
    a, b = rng
    edges = np.unique(np.concatenate([np.arange(a, b, 1.0), [b]]))
    if edges.size < 2:
        edges = np.array([a, b])
    v, e = _quad_pieces(g, edges, rel_tol)
    if e > max(rel_tol * abs(v), 1e-300):
        raise NonConvergenceError(f"quadrature error estimate {e:.3g} exceeds tolerance for value {v:.6g}")
    return v


def _support(s):
    if s is None:
        return 0.0, math.inf
    lo, hi = s
    return float(lo), math.inf if hi is None else float(hi)


def mellin_convolution(f1, f2, y: float, support1=None, support2=None, rel_tol: float = 1e-10) -> float:
    """Density of ``X1 * X2`` at ``y``: ``integral f1(x) f2(y/x) dx / x``."""
    if not y > 0:
        return 0.0
    lo1, hi1 = _support(support1)
    lo2, hi2 = _support(support2)
    lo = max(lo1, y / hi2 if math.isfinite(hi2) else 0.0)
    hi = min(hi1, y / lo2 if lo2 > 0 else math.inf)
    if not lo < hi:
        return 0.0
    return integrate(lambda x: f1(x) * f2(y / x) / x, lo, hi, rel_tol)


def quotient_convolution(f1, f2, y: float, support1=None, support2=None, rel_tol: float = 1e-10) -> float:
    """Density of ``X1 / X2`` at ``y``: ``integral x f1(x y) f2(x) dx``."""
    if not y > 0:
        return 0.0
    lo1, hi1 = _support(support1)
    lo2, hi2 = _support(support2)
    lo = max(lo2, lo1 / y)
    hi = min(hi2, hi1 / y)
    if not lo < hi:
        return 0.0
    return integrate(lambda x: x * f1(x * y) * f2(x), lo, hi, rel_tol)


# -- elementary reference densities -----------------------------------------

_DEFAULTS = {
    "gamma": {"theta": 2.0, "lam": 1.0},
    "exponential": {"lam": 1.0},
    "chi_square": {"nu": 3.0},
    "weibull": {"theta": 2.0, "lam": 1.0},
    "rayleigh": {"nu": 1.0},
    "maxwell": {"lam": 1.0},
    "half_normal": {"lam": 1.0},
    "half_cauchy": {"lam": 1.0},
    "beta_first_kind": {"theta": 2.0, "lam": 3.0},
    "beta_second_kind": {"theta": 2.0, "lam": 3.0},
    "power_function": {"theta": 2.0},
    "uniform": {},
    "pareto": {"lam": 2.0},
    "half_student": {"nu": 3.0},
    "f": {"theta": 4.0, "lam": 6.0},
    "general_hypergeometric": {"a": 1.0, "c": 2.0, "d": 2.0, "alpha": 2.0, "beta": 3.0},
}
_ALIASES = {"beta1": "beta_first_kind", "beta2": "beta_second_kind", "power": "power_function", "chi2": "chi_square"}


def _resolve(name, params):
    key = _ALIASES.get(name, name)
    if key not in _DEFAULTS:
        raise DomainError(f"no reference for {name!r}")
    unknown = set(params) - set(_DEFAULTS[key])
    if unknown:
        raise DomainError(f"{key} has no parameter(s) {sorted(unknown)}")
    return key, {**_DEFAULTS[key], **{k: float(v) for k, v in params.items()}}


def _log_pdf(key, x, p):
    """Log density from the textbook formula, for ``x`` inside the support."""
    lg = math.lgamma
    log = math.log
    if key == "gamma":
        t, l = p["theta"], p["lam"]
        return (t - 1) * log(x) - x / l - lg(t) - t * log(l)
    if key == "exponential":
        return -x / p["lam"] - log(p["lam"])
    if key == "chi_square":
        k = p["nu"] / 2
        return (k - 1) * log(x) - x / 2 - lg(k) - k * log(2)
    if key == "weibull":
        t, l = p["theta"], p["lam"]
        return log(t / l) + (t - 1) * log(x) - x**t / l
    if key == "rayleigh":
        v = p["nu"]
        return log(x) - 2 * log(v) - x * x / (2 * v * v)
    if key == "maxwell":
        l = p["lam"]
        return log(4 / math.sqrt(math.pi)) - 3 * log(l) + 2 * log(x) - (x / l) ** 2
    if key == "half_normal":
        l = p["lam"]
        return 0.5 * log(2 / math.pi) - log(l) - x * x / (2 * l * l)
    if key == "half_cauchy":
        l = p["lam"]
        return log(2 / math.pi) + log(l) - log(l * l + x * x)
    if key == "beta_first_kind":
        t, l = p["theta"], p["lam"]
        return lg(t + l) - lg(t) - lg(l) + (t - 1) * log(x) + (l - 1) * math.log1p(-x)
    if key == "beta_second_kind":
        # X = (theta/lam) * B' with B' beta-prime(theta, lam)
        t, l = p["theta"], p["lam"]
        c = l / t
        y = c * x
        return log(c) + lg(t + l) - lg(t) - lg(l) + (t - 1) * log(y) - (t + l) * math.log1p(y)
    if key == "power_function":
        t = p["theta"]
        return log(t) + (t - 1) * log(x)
    if key == "uniform":
        return 0.0
    if key == "pareto":
        l = p["lam"]
        return log(l) - (l + 1) * log(x)
    if key == "half_student":
        v = p["nu"]
        return log(2) + lg((v + 1) / 2) - lg(v / 2) - 0.5 * log(v * math.pi) - (v + 1) / 2 * math.log1p(x * x / v)
    if key == "f":
        d1, d2 = p["theta"], p["lam"]
        return (
            0.5 * d1 * log(d1 / d2)
            + (d1 / 2 - 1) * log(x)
            - (d1 + d2) / 2 * math.log1p(d1 * x / d2)
            - (lg(d1 / 2) + lg(d2 / 2) - lg((d1 + d2) / 2))
        )
    if key == "general_hypergeometric":
        a, c, d, al, be = (p[k] for k in ("a", "c", "d", "alpha", "beta"))
        r = c / d
        logk = log(d) + r * log(a) + lg(al) + lg(be - r) - lg(r) - lg(be) - lg(al - r)
        h = sp.hyp1f1(al, be, -a * x**d)
        return logk + (c - 1) * log(x) + math.log(h) if h > 0 else -math.inf
    raise DomainError(key)


_SUPPORTS = {"beta_first_kind": (0.0, 1.0), "power_function": (0.0, 1.0), "uniform": (0.0, 1.0), "pareto": (1.0, math.inf)}


def reference_support(name: str) -> tuple:
    key, _ = _resolve(name, {})
    return _SUPPORTS.get(key, (0.0, math.inf))


def reference_pdf(name: str, x: float, **params) -> float:
    """Textbook density of a catalog family, written without I-functions."""
    key, p = _resolve(name, params)
    lo, hi = _SUPPORTS.get(key, (0.0, math.inf))
    x = float(x)
    if not lo < x < hi:
        return 0.0
    return math.exp(_log_pdf(key, x, p))


def reference_cdf(name: str, x: float, **params) -> float:
    """Distribution function by quadrature of :func:`reference_pdf`."""
    key, p = _resolve(name, params)
    lo, hi = _SUPPORTS.get(key, (0.0, math.inf))
    if x <= lo:
        return 0.0
    if x >= hi:
        return 1.0
    return integrate(lambda t: reference_pdf(key, t, **p), lo, x)


# -- samplers ------------------------------------------------------------------


def reference_sample(name: str, count: int, seed=None, quantile: Optional[Callable] = None, **params) -> np.ndarray:
    """Samples from generators independent of the I-function machinery.

    Families without a standard generator need ``quantile`` (an inverse
    distribution function), applied to the same uniform stream.
    """
    key, p = _resolve(name, params)
    count = int(count)
    if count < 0:
        raise DomainError("count must be nonnegative")
    rng = np.random.default_rng(seed)
    g = rng
    if key == "gamma":
        return g.gamma(p["theta"], p["lam"], count)
    if key == "exponential":
        return g.exponential(p["lam"], count)
    if key == "chi_square":
        return g.chisquare(p["nu"], count)
    if key == "weibull":
        return (p["lam"] * g.standard_exponential(count)) ** (1.0 / p["theta"])
    if key == "rayleigh":
        return g.rayleigh(p["nu"], count)
    if key == "maxwell":
        return p["lam"] * np.sqrt(g.chisquare(3, count) / 2.0)
    if key == "half_normal":
        return p["lam"] * np.abs(g.standard_normal(count))
    if key == "half_cauchy":
        return p["lam"] * np.abs(g.standard_cauchy(count))
    if key == "beta_first_kind":
        return g.beta(p["theta"], p["lam"], count)
    if key == "beta_second_kind":
        b = g.beta(p["theta"], p["lam"], count)
        return (p["theta"] / p["lam"]) * b / (1.0 - b)
    if key == "power_function":
        return g.random(count) ** (1.0 / p["theta"])
    if key == "uniform":
        return g.random(count)
    if key == "pareto":
        return (1.0 - g.random(count)) ** (-1.0 / p["lam"])
    if key == "half_student":
        return np.abs(g.standard_t(p["nu"], count))
    if key == "f":
        return g.f(p["theta"], p["lam"], count)
    if quantile is None:
        raise DomainError(f"{key} has no direct sampler; pass a quantile function")
    return np.array([quantile(u) for u in g.random(count)])


# -- Kolmogorov-Smirnov --------------------------------------------------------


def kolmogorov_threshold(n: int, level: float = 0.001) -> float:
    """Asymptotic critical value ``K_{1-level} / sqrt(n)``."""
    return float(sp.kolmogi(level)) / math.sqrt(n)


def ks_statistic(samples: Sequence[float], cdf: Callable, continuous: bool = True) -> float:
    """``sup |F_n - F|``.

    ``cdf`` is called on each sorted sample (vectorized if it accepts
    arrays). For a discontinuous ``cdf`` pass ``continuous=False`` so that
    left limits are taken at the previous float.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n == 0:
        raise DomainError("need at least one sample")
    F = _apply(cdf, x)
    F_left = F if continuous else _apply(cdf, np.nextafter(x, -np.inf))
    i = np.arange(1, n + 1)
    # F_n jumps at repeated values only once
    last = np.r_[x[1:] != x[:-1], True]
    first = np.r_[True, x[1:] != x[:-1]]
    d_plus = np.max((i / n - F)[last])
    d_minus = np.max((F_left - (i - 1) / n)[first])
    return float(max(d_plus, d_minus, 0.0))


def _apply(cdf, x):
    try:
        out = np.asarray(cdf(x), dtype=float)
        if out.shape == x.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([float(cdf(v)) for v in x])


@dataclass(frozen=True)
class KSBound:
    """Bracket ``lower <= sup |F_n - F| <= upper`` from ``cdf`` values on a grid."""

    lower: float
    upper: float
    grid_points: int


def ks_bound(samples: Sequence[float], cdf: Callable, grid_points: int = 2000) -> KSBound:
    """Rigorous bracket on the KS statistic for a nondecreasing ``cdf``.

    ``cdf`` is evaluated only at ``grid_points`` order statistics. Between
    consecutive grid points ``g < h`` monotonicity gives
    ``F_n(x) - F(x) <= F_n(h-) - F(g)`` and ``F(x) - F_n(x) <= F(h) - F_n(g)``.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n == 0:
        raise DomainError("need at least one sample")
    idx = np.unique(np.linspace(0, n - 1, min(grid_points, n)).round().astype(int))
    g = np.unique(x[idx])
    F = _apply(cdf, g)
    Fn_right = np.searchsorted(x, g, side="right") / n  # F_n(g)
    Fn_left = np.searchsorted(x, g, side="left") / n  # F_n(g-)
    lower = float(np.max(np.maximum(np.abs(Fn_right - F), np.abs(Fn_left - F))))
    # interior intervals (g_k, g_{k+1}) plus the two outer ones
    up_plus = np.r_[Fn_left[0] - 0.0, Fn_left[1:] - F[:-1], 1.0 - F[-1]]
    up_minus = np.r_[F[0] - 0.0, F[1:] - Fn_right[:-1], 1.0 - Fn_right[-1]]
    upper = float(max(np.max(up_plus), np.max(up_minus), lower))
    return KSBound(lower, upper, int(g.size))
