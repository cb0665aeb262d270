"""Symbolic I-function parameters and the exact kernel-level quantities
derived from them (gamma ratio, strip, convergence constants)."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, EmptyStripError, PoleError
from .special import POLE_TOL, log_gamma

__all__ = [
    "GammaTriple",
    "IFunctionParams",
    "ConvergenceReport",
    "chi",
    "log_chi",
    "convergence_report",
    "pole_strip",
    "contour_abscissa",
    "reciprocal_argument",
    "argument_power_rescale",
    "multiply_by_power",
    "from_h_function",
    "from_g_function",
    "from_hbar",
]

BLOCKS = ("upper_numerator", "lower_numerator", "upper_denominator", "lower_denominator")


@dataclass(frozen=True)
class GammaTriple:
    """One ``(shift, scale, exponent)`` factor of the gamma kernel.

    ``shift`` is real in the public schema; complex shifts are allowed
    internally (Mellin transforms at complex points produce them).
    """

    shift: complex | float
    scale: float
    exponent: float = 1.0

    def __post_init__(self):
        if isinstance(self.shift, complex) and self.shift.imag == 0:
            object.__setattr__(self, "shift", self.shift.real)
        object.__setattr__(self, "scale", float(self.scale))
        object.__setattr__(self, "exponent", float(self.exponent))
        if not self.scale > 0 or not math.isfinite(self.scale):
            raise DomainError(f"triple scale must be positive, got {self.scale!r}")
        if not self.exponent > 0 or not math.isfinite(self.exponent):
            raise DomainError(f"triple exponent must be positive, got {self.exponent!r}")
        if not cmath.isfinite(complex(self.shift)):
            raise DomainError("triple shift must be finite")

    @classmethod
    def make(cls, item) -> "GammaTriple":
        if isinstance(item, GammaTriple):
            return item
        item = tuple(item)
        if len(item) == 2:
            return cls(item[0], item[1], 1.0)
        if len(item) == 3:
            return cls(*item)
        raise DomainError(f"cannot read a gamma triple from {item!r}")

    def as_tuple(self):
        return (self.shift, self.scale, self.exponent)


def _triples(items: Iterable) -> tuple:
    return tuple(GammaTriple.make(t) for t in items)


@dataclass(frozen=True)
class IFunctionParams:
    """Orders ``m, n`` and the upper (``a, A, alpha``) and lower
    (``b, B, beta``) triple lists of an I-function."""

    m: int
    n: int
    upper: tuple = ()
    lower: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "upper", _triples(self.upper))
        object.__setattr__(self, "lower", _triples(self.lower))
        if int(self.m) != self.m or int(self.n) != self.n:
            raise DomainError("orders m and n must be integers")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "n", int(self.n))
        if not 0 <= self.n <= self.p:
            raise DomainError(f"need 0 <= n <= p, got n={self.n}, p={self.p}")
        if not 0 <= self.m <= self.q:
            raise DomainError(f"need 0 <= m <= q, got m={self.m}, q={self.q}")

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    @property
    def is_real(self) -> bool:
        return all(not isinstance(t.shift, complex) for t in self.upper + self.lower)

    def terms(self):
        """Flat ``(u, v, w, block, index)`` description of the kernel:
        ``log chi(s) = sum w * log Gamma(u + v s)``."""
        u, v, w, blocks, idx = [], [], [], [], []
        for i, t in enumerate(self.upper):
            if i < self.n:
                u.append(1 - t.shift), v.append(-t.scale), w.append(t.exponent)
                blocks.append(0)
            else:
                u.append(t.shift), v.append(t.scale), w.append(-t.exponent)
                blocks.append(2)
            idx.append(i)
        for j, t in enumerate(self.lower):
            if j < self.m:
                u.append(t.shift), v.append(t.scale), w.append(t.exponent)
                blocks.append(1)
            else:
                u.append(1 - t.shift), v.append(-t.scale), w.append(-t.exponent)
                blocks.append(3)
            idx.append(j)
        return (
            np.array(u, dtype=complex),
            np.array(v, dtype=float),
            np.array(w, dtype=float),
            blocks,
            idx,
        )

    def poles_disjoint(self, count: int = 50, tol: float = 1e-10) -> bool:
        """Check that the first ``count`` poles of the left factors
        (lower, ``j <= m``) and right factors (upper, ``i <= n``) never meet."""
        k = np.arange(count)
        left = [-(t.shift + k) / t.scale for t in self.lower[: self.m]]
        right = [(1 - t.shift + k) / t.scale for t in self.upper[: self.n]]
        for lp in left:
            for rp in right:
                if np.min(np.abs(np.subtract.outer(np.asarray(lp, complex), np.asarray(rp, complex)))) <= tol:
                    return False
        return True

    def to_dict(self) -> dict:
        def num(x):
            if isinstance(x, complex):
                raise DomainError("complex shifts are not part of the public schema")
            return float(x)

        return {
            "m": self.m,
            "n": self.n,
            "upper": [{"a": num(t.shift), "A": t.scale, "alpha": t.exponent} for t in self.upper],
            "lower": [{"b": num(t.shift), "B": t.scale, "beta": t.exponent} for t in self.lower],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IFunctionParams":
        try:
            upper = [(float(e["a"]), float(e["A"]), float(e["alpha"])) for e in data.get("upper", [])]
            lower = [(float(e["b"]), float(e["B"]), float(e["beta"])) for e in data.get("lower", [])]
            return cls(int(data["m"]), int(data["n"]), upper, lower)
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed I-function record: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "IFunctionParams":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class ConvergenceReport:
    nabla: float
    omega: float
    delta: float
    analytic: bool
    strict_sector: float


def log_chi(params: IFunctionParams, s) -> complex:
    """``log chi(s)`` on the principal branch of every log-gamma term.

    Raises PoleError naming the block and index of a numerator factor at a
    pole. A denominator factor at a pole makes the kernel vanish and is
    reported as ``-inf``.
    """
    u, v, w, blocks, idx = params.terms()
    s = complex(s)
    total = 0j
    for uk, vk, wk, blk, i in zip(u, v, w, blocks, idx):
        try:
            total += wk * log_gamma(uk + vk * s)
        except PoleError:
            if wk > 0:
                raise PoleError(
                    f"{BLOCKS[blk]} factor {i} is at a pole for s={s!r}", block=BLOCKS[blk], index=i
                ) from None
            return complex(-math.inf, 0.0)
    return total


def chi(params: IFunctionParams, s) -> complex:
    """The four-block gamma ratio at ``s``."""
    lc = log_chi(params, s)
    if lc.real == -math.inf:
        return 0j
    return cmath.exp(lc)


def convergence_report(params: IFunctionParams) -> ConvergenceReport:
    up, lo, n, m = params.upper, params.lower, params.n, params.m
    nabla = sum(t.exponent * t.scale for t in lo) - sum(t.exponent * t.scale for t in up)
    omega = sum(t.exponent * (0.5 - complex(t.shift).real) for t in up) - sum(
        t.exponent * (0.5 - complex(t.shift).real) for t in lo
    )
    delta = (
        sum(t.exponent * t.scale for t in lo[:m])
        - sum(t.exponent * t.scale for t in lo[m:])
        + sum(t.exponent * t.scale for t in up[:n])
        - sum(t.exponent * t.scale for t in up[n:])
    )
    return ConvergenceReport(
        nabla=nabla,
        omega=omega,
        delta=delta,
        analytic=nabla >= 0,
        strict_sector=delta * math.pi / 2,
    )


def pole_strip(params: IFunctionParams) -> tuple[float, float]:
    """Open interval of ``Re s`` separating the left and right pole sets."""
    lo = max((-complex(t.shift).real / t.scale for t in params.lower[: params.m]), default=-math.inf)
    hi = min(((1 - complex(t.shift).real) / t.scale for t in params.upper[: params.n]), default=math.inf)
    if not lo < hi:
        raise EmptyStripError(lo, hi)
    return lo, hi


def contour_abscissa(params: IFunctionParams) -> float:
    """A default line abscissa strictly inside the separating strip."""
    lo, hi = pole_strip(params)
    if math.isinf(lo) and math.isinf(hi):
        return 0.0
    if math.isinf(hi):
        return lo + 1.0
    if math.isinf(lo):
        return hi - 1.0
    return 0.5 * (lo + hi)


def reciprocal_argument(params: IFunctionParams) -> IFunctionParams:
    """Parameters of ``I[1/z]`` written as an I-function of ``z``."""
    upper = [(1 - t.shift, t.scale, t.exponent) for t in params.lower]
    lower = [(1 - t.shift, t.scale, t.exponent) for t in params.upper]
    return IFunctionParams(params.n, params.m, upper, lower)


def argument_power_rescale(params: IFunctionParams, sigma: float):
    """``I[z**sigma] = prefactor * I'[z]``; returns ``(prefactor, params')``."""
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    upper = [(t.shift, t.scale / sigma, t.exponent) for t in params.upper]
    lower = [(t.shift, t.scale / sigma, t.exponent) for t in params.lower]
    return 1.0 / sigma, IFunctionParams(params.m, params.n, upper, lower)


def multiply_by_power(params: IFunctionParams, sigma) -> IFunctionParams:
    """Parameters of ``z**sigma * I[z]``."""
    upper = [(t.shift + sigma * t.scale, t.scale, t.exponent) for t in params.upper]
    lower = [(t.shift + sigma * t.scale, t.scale, t.exponent) for t in params.lower]
    return IFunctionParams(params.m, params.n, upper, lower)


def from_h_function(m: int, n: int, upper_pairs: Sequence, lower_pairs: Sequence) -> IFunctionParams:
    """Fox H-function parameters: every exponent is one."""
    upper = [(a, A, 1.0) for a, A in upper_pairs]
    lower = [(b, B, 1.0) for b, B in lower_pairs]
    return IFunctionParams(m, n, upper, lower)


def from_g_function(m: int, n: int, upper_shifts: Sequence, lower_shifts: Sequence) -> IFunctionParams:
    """Meijer G-function parameters: unit scales and exponents."""
    return IFunctionParams(m, n, [(a, 1.0, 1.0) for a in upper_shifts], [(b, 1.0, 1.0) for b in lower_shifts])


def from_hbar(m: int, n: int, upper: Sequence, lower: Sequence) -> IFunctionParams:
    """H-bar function parameters.

    Entries are ``(shift, scale)`` pairs or ``(shift, scale, exponent)``
    triples; exponents other than one are only admitted on the upper entries
    ``i <= n`` and the lower entries ``j > m``.
    """
    up, lo = [], []
    for i, item in enumerate(upper):
        t = GammaTriple.make(item)
        if i >= n and t.exponent != 1.0:
            raise DomainError(f"upper entry {i} beyond n must have unit exponent")
        up.append(t)
    for j, item in enumerate(lower):
        t = GammaTriple.make(item)
        if j < m and t.exponent != 1.0:
            raise DomainError(f"lower entry {j} within m must have unit exponent")
        lo.append(t)
    return IFunctionParams(m, n, up, lo)
