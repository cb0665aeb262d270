"""Numerical evaluation of the I-function by contour quadrature.

The contour is either the vertical line ``Re s = c`` or, when the line
integral converges slowly or not at all, a parabola
``s = c + d * gamma * t**2 + i t`` bending towards the side where the
kernel decays (``d = -1`` left, ``d = +1`` right). Bending is legal because
it crosses no pole: with real shifts every pole is real and the parabola
meets the real axis only at ``c``.

The abscissa ``c`` is the minimiser over the strip of
``log |chi(c) z**-c|``, i.e. the real saddle point, which keeps the
integrand of the same size as the result and makes relative tolerances
meaningful even when the value under- or overflows.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import loggamma

from . import kernel
from .errors import DivergenceError, DomainError, NonConvergenceError, QuadratureError
from .params import IFunctionParams, convergence_report, pole_strip

__all__ = ["EvalConfig", "EvalResult", "evaluate", "evaluate_log", "evaluate_info", "principal_log"]

# decay margin (in units of |t|) above which the straight line is preferred
LINE_MARGIN = 0.25
# how far past a finite strip edge (or zero) the saddle search may wander
ABSCISSA_REACH = 1.0e6
EPS = np.finfo(float).eps
# roundoff (eps times the integral of |g|) relative to |I| beyond which a
# roundoff-limited result is rejected
CANCELLATION_TOL = 1e-6
MAX_PANELS = 50_000
# exp(LOG_UNDERFLOW) is zero in binary64
LOG_UNDERFLOW = -746.0


@dataclass(frozen=True)
class EvalConfig:
    """Quadrature settings.

    ``contour`` is ``"auto"`` (line or bent contour, whichever converges) or
    ``"line"`` (vertical line only, admitted strictly by the sector and
    boundary convergence conditions).
    """

    abscissa_override: Optional[float] = None
    rel_tol: float = 1e-10
    tail_tol: float = 1e-12
    initial_height: float = 40.0
    max_height: float = 5120.0
    max_subdivision_depth: int = 40
    contour: str = "auto"

    def __post_init__(self):
        if not 0 < self.rel_tol < 1 or not 0 < self.tail_tol < 1:
            raise DomainError("rel_tol and tail_tol must lie in (0, 1)")
        if not 0 < self.initial_height <= self.max_height:
            raise DomainError("need 0 < initial_height <= max_height")
        if self.max_subdivision_depth < 1:
            raise DomainError("max_subdivision_depth must be positive")
        if self.contour not in ("auto", "line"):
            raise DomainError(f"unknown contour kind {self.contour!r}")


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class EvalResult:
    """``value = mantissa * exp(log_scale)``; the split survives when
    ``value`` itself under- or overflows."""

    value: complex
    error: float
    route: str
    abscissa: float
    curvature: float
    height: float
    panels: int
    mantissa: complex = 0j
    log_scale: float = 0.0


def principal_log(z) -> complex:
    """Principal ``log z`` with the negative real axis mapped to ``arg = +pi``."""
    z = complex(z)
    if z == 0:
        raise DomainError("the I-function argument must be nonzero")
    if z.imag == 0 and z.real < 0:
        return complex(math.log(-z.real), math.pi)
    return cmath.log(z)


# -- abscissa ---------------------------------------------------------------


def _envelope_phi(u, v, w, log_abs_z, c):
    """Smooth upper envelope of ``log |chi(c) z**-c|`` on real ``c``.

    Denominator factors at real arguments below 1/2 are replaced by their
    reflection without the ``1/sin`` factor, which removes the zeros of the
    kernel (they would otherwise attract the minimiser).
    """
    c = np.atleast_1d(np.asarray(c, dtype=float))
    out = -c * log_abs_z
    for uk, vk, wk in zip(u, v, w):
        x = uk + vk * c
        if uk.imag != 0 or wk > 0:
            out = out + wk * loggamma(x).real
        else:
            xr = x.real
            small = xr < 0.5
            val = np.empty_like(xr)
            val[~small] = loggamma(xr[~small]).real
            val[small] = math.log(math.pi) - loggamma(1.0 - xr[small]).real
            out = out + wk * val
    return out


def _abscissa_grid(lo, hi):
    steps = np.geomspace(1e-6, ABSCISSA_REACH, 120)
    if math.isfinite(lo) and math.isfinite(hi):
        width = hi - lo
        frac = np.geomspace(1e-6, 0.5, 60)
        return np.unique(np.concatenate([lo + width * frac, hi - width * frac]))
    if math.isfinite(lo):
        return lo + steps
    if math.isfinite(hi):
        return hi - steps[::-1]
    return np.concatenate([-steps[::-1], [0.0], steps])


def _saddle_abscissa(u, v, w, log_abs_z, lo, hi):
    grid = _abscissa_grid(lo, hi)
    with np.errstate(all="ignore"):
        phi = _envelope_phi(u, v, w, log_abs_z, grid)
    phi = np.where(np.isfinite(phi), phi, np.inf)
    k = int(np.argmin(phi))
    if not np.isfinite(phi[k]):
        raise DomainError("kernel is not finite anywhere inside the strip")
    left = grid[max(k - 1, 0)]
    right = grid[min(k + 1, grid.size - 1)]
    if right > left:
        def f(c):
            with np.errstate(all="ignore"):
                val = _envelope_phi(u, v, w, log_abs_z, c)[0]
            return val if np.isfinite(val) else np.inf

        res = minimize_scalar(f, bounds=(left, right), method="bounded",
                              options={"xatol": 1e-8 * max(1.0, abs(grid[k]))})
        if res.fun <= phi[k]:
            return float(res.x)
    return float(grid[k])


def _curvature(u, v, w, log_abs_z, c, lo, hi):
    room = min(c - lo, hi - c)
    h = min(1e-3 * max(1.0, abs(c)), 0.25 * room)
    with np.errstate(all="ignore"):
        f = _envelope_phi(u, v, w, log_abs_z, np.array([c - h, c, c + h]))
    d2 = (f[0] - 2 * f[1] + f[2]) / (h * h)
    return d2 if np.isfinite(d2) else 0.0


# -- route selection --------------------------------------------------------


def _kappa(params: IFunctionParams) -> float:
    return sum(t.exponent * t.scale * math.log(t.scale) for t in params.lower) - sum(
        t.exponent * t.scale * math.log(t.scale) for t in params.upper
    )


def _complex_pole_limit(params, c, direction):
    """Largest bend ``gamma`` keeping complex-shift poles on their side."""
    limit = math.inf
    if direction < 0:
        for t in params.lower[: params.m]:
            b = complex(t.shift)
            y = b.imag / t.scale
            if y != 0:
                limit = min(limit, (c + b.real / t.scale) / (y * y))
    else:
        for t in params.upper[: params.n]:
            a = complex(t.shift)
            y = a.imag / t.scale
            if y != 0:
                limit = min(limit, ((1 - a.real) / t.scale - c) / (y * y))
    return limit


# -- adaptive quadrature ----------------------------------------------------


class _Integrator:
    def __init__(self, u, v, w, logz, c, curv, log_scale, symmetric):
        self.args = (u, v, w, logz, float(c), float(curv), float(log_scale))
        self.symmetric = symmetric
        self.a = np.empty(0)
        self.b = np.empty(0)
        self.depth = np.empty(0, dtype=int)
        self.val = np.empty(0, dtype=complex)
        self.err = np.empty(0)
        self.absint = np.empty(0)

    def g(self, t):
        return kernel.integrand(*self.args, np.asarray(t, dtype=float))

    def add(self, a, b, depth):
        val, err, absint = kernel.panels_gk15(*self.args, a, b)
        self.a = np.concatenate([self.a, a])
        self.b = np.concatenate([self.b, b])
        self.depth = np.concatenate([self.depth, depth])
        self.val = np.concatenate([self.val, val])
        self.err = np.concatenate([self.err, err])
        self.absint = np.concatenate([self.absint, absint])

    def add_range(self, lo, hi, width):
        count = max(1, int(math.ceil((hi - lo) / width)))
        edges = np.linspace(lo, hi, count + 1)
        self.add(edges[:-1], edges[1:], np.zeros(count, dtype=int))

    def bisect(self, idx):
        a, b, d = self.a[idx], self.b[idx], self.depth[idx] + 1
        keep = np.ones(self.a.size, dtype=bool)
        keep[idx] = False
        for name in ("a", "b", "depth", "val", "err", "absint"):
            setattr(self, name, getattr(self, name)[keep])
        mid = 0.5 * (a + b)
        self.add(np.concatenate([a, mid]), np.concatenate([mid, b]), np.concatenate([d, d]))

    def total(self):
        s = self.val.sum()
        if self.symmetric:
            return complex(2.0 * s.real, 0.0), 2.0 * self.err.sum(), 2.0 * self.absint.sum()
        return complex(s), self.err.sum(), self.absint.sum()


def _refine(integ: _Integrator, rel_tol, max_depth):
    while True:
        value, err, absint = integ.total()
        # roundoff in a cancelling integral is of order eps * |g| summed over panels
        floor = 1e3 * EPS * absint
        target = max(rel_tol * abs(value), floor)
        if err <= target or absint == 0:
            if err > rel_tol * abs(value) and EPS * absint > CANCELLATION_TOL * abs(value):
                raise NonConvergenceError(
                    f"contour quadrature lost precision to cancellation "
                    f"(estimated error {err:.3g} against |I|={abs(value):.3g})"
                )
            return value, err, absint
        scale = 2.0 if integ.symmetric else 1.0
        order = np.argsort(integ.err)[::-1]
        remaining = err - scale * np.cumsum(integ.err[order])
        count = int(np.searchsorted(-remaining, -0.5 * target)) + 1
        chosen = order[: min(count, order.size)]
        if np.any(integ.depth[chosen] >= max_depth) or integ.a.size + chosen.size > MAX_PANELS:
            raise NonConvergenceError(
                f"contour quadrature did not reach rel_tol={rel_tol:g} "
                f"(estimated error {err:.3g} against |I|={abs(value):.3g})"
            )
        integ.bisect(chosen)


def _tail_estimate(integ: _Integrator, H, line_info):
    sides = [1.0] if integ.symmetric else [1.0, -1.0]
    total = 0.0
    for sgn in sides:
        gH, g9 = np.abs(integ.g([sgn * H, sgn * 0.9 * H]))
        if gH == 0:
            continue
        if g9 > 0 and g9 > gH:
            length = 0.1 * H / math.log(g9 / gH)
        else:
            length = math.inf
        if line_info is not None:
            rate_base, arg, p, onset = line_info
            if H >= onset:
                r = rate_base - sgn * arg
                r_eff = r - max(p, 0.0) / H
                if r_eff > 0:
                    analytic = 1.0 / r_eff
                elif p < -1:
                    analytic = H / (-p - 1.0)
                else:
                    analytic = math.inf
                length = max(length, analytic) if math.isfinite(length) else analytic
        total += gH * length
    return (2.0 if integ.symmetric else 1.0) * total


def evaluate_info(
    params: IFunctionParams, logz: complex, config: EvalConfig = DEFAULT_CONFIG, underflow: bool = True
) -> EvalResult:
    """Evaluate the I-function at ``exp(logz)`` and report how.

    With ``underflow=False`` the quadrature runs even when the result is
    certain to underflow, so ``mantissa`` and ``log_scale`` stay accurate.
    """
    if params.p == 0 and params.q == 0:
        raise DomainError("an empty kernel has no decay; p = q = 0 is rejected")
    logz = complex(logz)
    lo, hi = pole_strip(params)
    u, v, w, _, _ = params.terms()
    rep = convergence_report(params)
    real_params = params.is_real
    log_abs_z = logz.real
    arg = logz.imag
    margin = rep.delta * math.pi / 2 - abs(arg)
    on_boundary = abs(margin) <= 1e-12 * max(1.0, abs(arg))

    if config.abscissa_override is not None:
        c = float(config.abscissa_override)
        if not lo < c < hi:
            raise DomainError(f"abscissa {c} is outside the strip ({lo}, {hi})")
    else:
        c = _saddle_abscissa(u, v, w, log_abs_z, lo, hi)

    def boundary_ok(c_):
        if rep.nabla == 0:
            return rep.omega < -1
        return rep.omega + c_ * rep.nabla < -1

    if on_boundary and rep.nabla != 0 and not boundary_ok(c) and config.abscissa_override is None:
        # move the line towards the side where condition (ii) holds
        edge = (-1 - rep.omega) / rep.nabla
        cand = edge - 1e-3 if rep.nabla > 0 else edge + 1e-3
        if lo < cand < hi:
            cand_lo = max(lo, cand - 1.0) if rep.nabla > 0 else cand
            cand_hi = cand if rep.nabla > 0 else min(hi, cand + 1.0)
            c = 0.5 * (cand_lo + cand_hi) if math.isfinite(cand_lo) and math.isfinite(cand_hi) else cand

    direction = 0
    if config.contour == "auto" and margin < LINE_MARGIN:
        if rep.nabla > 0:
            direction = -1
        elif rep.nabla < 0:
            direction = 1
        else:
            gap = log_abs_z - _kappa(params)
            if abs(gap) > 1e-12 * max(1.0, abs(log_abs_z)):
                direction = 1 if gap > 0 else -1
    if direction == 0:
        if margin > 0 and not on_boundary:
            pass
        elif on_boundary and boundary_ok(c):
            pass
        else:
            raise DivergenceError(
                f"contour integral diverges: |arg z|={abs(arg):.6g}, sector={rep.delta * math.pi / 2:.6g}, "
                f"nabla={rep.nabla:.6g}, omega={rep.omega:.6g}"
            )

    curv = 0.0
    if direction != 0:
        gamma = 0.5
        if rep.nabla != 0:
            # the kernel grows faster than exponentially along the real axis,
            # so the bend must stay within the saddle's width
            d2 = _curvature(u, v, w, log_abs_z, c, lo, hi)
            width = 1.0 / math.sqrt(d2) if d2 > 0 else 1.0
            gamma = min(gamma, 0.5 / width)
        if not real_params:
            gamma = min(gamma, 0.5 * _complex_pole_limit(params, c, direction))
        curv = direction * gamma

    with np.errstate(all="ignore"):
        log_scale = float(_envelope_phi(u, v, w, log_abs_z, c)[0])
    if not math.isfinite(log_scale):
        log_scale = 0.0

    symmetric = real_params and arg == 0
    integ = _Integrator(u, v, w, logz, c, curv, log_scale, symmetric)
    H = float(config.initial_height)
    integ.add_range(0.0 if symmetric else -H, H, 2.0)

    route = "line" if direction == 0 else ("left-bent" if direction < 0 else "right-bent")
    # |I| <= exp(log_scale) * integral of |g|; when that bound underflows the
    # binary64 value is exactly zero
    absint0 = integ.total()[2]
    if underflow and absint0 > 0 and log_scale + math.log(2.0 * absint0) < LOG_UNDERFLOW:
        return EvalResult(0j, math.exp(log_scale) * 2.0 * absint0, route, c, curv, H, int(integ.a.size), 0j, log_scale)

    line_info = None
    if direction == 0:
        onset = 2.0 + 2.0 * float(np.max(np.abs(u + v * c) / np.abs(v)))
        line_info = (rep.delta * math.pi / 2, arg, rep.omega + c * rep.nabla, onset)

    while True:
        value, err, absint = _refine(integ, config.rel_tol, config.max_subdivision_depth)
        tail = _tail_estimate(integ, H, line_info)
        if tail <= config.tail_tol * max(abs(value), 1e-4 * absint):
            break
        if 2 * H > config.max_height:
            raise QuadratureError(
                f"tail estimate {tail:.3g} still above tolerance at height {H:g} "
                f"(max_height={config.max_height:g})"
            )
        width = H / 8.0
        integ.add_range(H, 2 * H, width)
        if not symmetric:
            integ.add_range(-2 * H, -H, width)
        H *= 2

    scale = math.exp(log_scale) if log_scale < 709 else math.inf
    return EvalResult(
        value=value * scale,
        error=(err + tail) * scale,
        route=route,
        abscissa=c,
        curvature=curv,
        height=H,
        panels=int(integ.a.size),
        mantissa=value,
        log_scale=log_scale,
    )


def evaluate_log(params: IFunctionParams, logz: complex, config: EvalConfig = DEFAULT_CONFIG) -> complex:
    """I-function value at ``z = exp(logz)``; ``logz`` may have any imaginary part."""
    return evaluate_info(params, logz, config).value


def evaluate(params: IFunctionParams, z, config: Optional[EvalConfig] = None) -> complex:
    """I-function value at ``z`` (principal branch of ``z**-s``)."""
    return evaluate_log(params, principal_log(z), config or DEFAULT_CONFIG)
