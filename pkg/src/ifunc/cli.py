"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 parse or validation error,
3 numerical failure (divergence, pole, quadrature). Errors are reported as
a JSON object on standard error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

import numpy as np

from . import algebra, ifig
from .catalog import catalog, catalog_names, entry
from .closed_forms import closed_form
from .contour import DEFAULT_CONFIG, EvalConfig, evaluate
from .distribution import IDistribution, distribution_from_dict
from .errors import (
    BracketError,
    DivergenceError,
    DomainError,
    IFunctionError,
    NormalizationError,
    PoleError,
    QuadratureError,
)
from .params import IFunctionParams

__all__ = ["CommandSpec", "build_parser", "main", "run"]

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
QUANTITIES = ("pdf", "cdf", "hazard", "moment", "mgf", "cf")


class UsageError(DomainError):
    pass


@dataclass(frozen=True)
class GridSpec:
    lo: Optional[float] = None
    hi: Optional[float] = None
    count: int = 64
    spacing: Optional[str] = None
    points: Optional[tuple] = None

    def validate(self):
        if self.points is not None:
            if not self.points:
                raise UsageError("--points needs at least one value")
            return
        if self.count < 1:
            raise UsageError("grid count must be at least 1")
        if self.lo is not None and self.hi is not None and not self.lo < self.hi:
            raise UsageError("grid needs lo < hi")
        if self.spacing not in (None, "linear", "log"):
            raise UsageError("spacing must be linear or log")

    def values(self, support=(0.0, math.inf)) -> np.ndarray:
        if self.points is not None:
            return np.asarray(self.points, dtype=float)
        s_lo, s_hi = support
        bounded = math.isfinite(s_hi)
        lo = self.lo if self.lo is not None else (s_lo if bounded else max(1e-3, s_lo))
        hi = self.hi if self.hi is not None else (s_hi if bounded else 1e3)
        spacing = self.spacing or ("linear" if bounded else "log")
        if not lo < hi and self.count > 1:
            raise UsageError("grid needs lo < hi")
        if spacing == "log":
            if lo <= 0:
                raise UsageError("log spacing needs lo > 0")
            return np.geomspace(lo, hi, self.count)
        return np.linspace(lo, hi, self.count)


@dataclass(frozen=True)
class CommandSpec:
    """A parsed command line."""

    command: str
    action: Optional[str] = None
    operands: tuple = ()
    grid: GridSpec = field(default_factory=GridSpec)
    fmt: str = "csv"
    output: Optional[str] = None
    seed: Optional[int] = None
    count: int = 10
    rel_tol: Optional[float] = None
    tail_tol: Optional[float] = None
    factor: Optional[float] = None
    exponent: Optional[str] = None
    check: bool = False
    jobs: int = 1
    suites: tuple = ()
    contour_only: bool = False

    def config(self) -> EvalConfig:
        cfg = DEFAULT_CONFIG
        env = os.environ.get("IFUNC_MAX_HEIGHT")
        if env:
            try:
                cfg = replace(cfg, max_height=float(env), initial_height=min(cfg.initial_height, float(env)))
            except ValueError:
                raise UsageError(f"IFUNC_MAX_HEIGHT must be a number, got {env!r}") from None
        for name in ("rel_tol", "tail_tol"):
            v = getattr(self, name)
            if v is not None:
                if not 0 < v < 1:
                    raise UsageError(f"{name} must lie in (0, 1)")
                cfg = replace(cfg, **{name: v})
        return cfg


# -- operand parsing ---------------------------------------------------------


def _load_json(text: str):
    text = text.strip()
    try:
        if text.startswith("{") or text.startswith("["):
            return json.loads(text)
        with open(text, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None
    except OSError as exc:
        raise UsageError(f"cannot read {text!r}: {exc.strerror}") from None


def _parse_kv(text: str) -> dict:
    out = {}
    for part in filter(None, text.split(",")):
        if "=" not in part:
            raise UsageError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        try:
            out[k.strip()] = float(Fraction(v.strip()))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"parameter {k!r} is not a number: {v!r}") from None
    return out


def _is_catalog_spec(text: str) -> bool:
    name = text.split(":", 1)[0]
    return not text.strip().startswith(("{", "[")) and not os.path.exists(text) and name.replace("_", "").isalnum()


def load_distribution(text: str, config: EvalConfig) -> IDistribution:
    """``NAME[:k=v,...]`` for a catalog entry, inline JSON, or a file path."""
    if _is_catalog_spec(text):
        name, _, rest = text.partition(":")
        return catalog(name, **_parse_kv(rest)).with_config(config)
    data = _load_json(text)
    if not isinstance(data, dict):
        raise UsageError("distribution record must be a JSON object")
    return distribution_from_dict(data).with_config(config)


def load_params(text: str) -> IFunctionParams:
    data = _load_json(text)
    if isinstance(data, dict) and "ifunction" in data:
        data = data["ifunction"]
    try:
        return IFunctionParams.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed I-function record: {exc}") from None


def load_ifig(text: str, config: EvalConfig) -> ifig.IFIGDistribution:
    if _is_catalog_spec(text):
        name, _, rest = text.partition(":")
        d = ifig.ifig_catalog(name, **_parse_kv(rest))
        return replace(d, config=config)
    data = _load_json(text)
    try:
        return ifig.make_ifig(
            float(data["alpha"]),
            float(data["a"]),
            float(data["b"]),
            IFunctionParams.from_dict(data["ifunction"]) if "ifunction" in data else None,
            float(data.get("delta", ifig.DEFAULT_DELTA)),
            float(data.get("sigma", 0.0)),
            config=config,
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"malformed I-FIG record: {exc}") from None


# -- output ------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, complex):
        if v.imag == 0:
            return f"{v.real:.17g}"
        return f"{v.real:.17g}{v.imag:+.17g}j"
    return f"{float(v):.17g}"


def _json_value(v):
    if isinstance(v, complex):
        return [v.real, v.imag] if v.imag != 0 else v.real
    v = float(v)
    return v if math.isfinite(v) else repr(v)


def render_table(xs, values, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{"x": _json_value(x), "value": _json_value(v)} for x, v in zip(xs, values)]) + "\n"
    lines = ["x,value"] + [f"{_fmt(x)},{_fmt(v)}" for x, v in zip(xs, values)]
    return "\n".join(lines) + "\n"


def render_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _emit(cmd: CommandSpec, text: str, stdout):
    if cmd.output:
        with open(cmd.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _map(fn: Callable, xs, jobs: int) -> list:
    xs = [float(x) for x in xs]
    if jobs <= 1 or len(xs) < 2:
        return [fn(x) for x in xs]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, xs))


# -- commands ----------------------------------------------------------------


def _one_operand(cmd: CommandSpec) -> str:
    if len(cmd.operands) != 1:
        raise UsageError(f"{cmd.command} takes exactly one operand")
    return cmd.operands[0]


def cmd_eval(cmd: CommandSpec, cfg: EvalConfig, stdout) -> int:
    params = load_params(_one_operand(cmd))
    xs = cmd.grid.values()

    def value(z):
        # elementary patterns are emitted exactly rounded unless quadrature is forced
        exact = None if cmd.contour_only else closed_form(params, z)
        return exact if exact is not None else evaluate(params, z, cfg).real

    values = _map(value, xs, cmd.jobs)
    _emit(cmd, render_table(xs, values, cmd.fmt), stdout)
    return EXIT_OK


def cmd_quantity(cmd: CommandSpec, cfg: EvalConfig, stdout) -> int:
    d = load_distribution(_one_operand(cmd), cfg)
    q = cmd.command
    if q in ("moment", "mgf", "cf") and cmd.grid.points is None and cmd.grid.lo is None:
        raise UsageError(f"{q} needs --points or --lo/--hi")
    fn = {
        "pdf": d.pdf,
        "cdf": d.cdf,
        "hazard": d.hazard,
        "moment": d.moment,
        "mgf": d.mgf,
        "cf": d.characteristic,
    }[q]
    xs = cmd.grid.values(d.support if q in ("pdf", "cdf", "hazard") else (-math.inf, math.inf))
    values = _map(fn, xs, cmd.jobs)
    _emit(cmd, render_table(xs, values, cmd.fmt), stdout)
    return EXIT_OK


def cmd_catalog(cmd: CommandSpec, cfg: EvalConfig, stdout) -> int:
    if cmd.action == "list":
        rows = [{"name": n, "parameters": list(entry(n).parameters), "description": entry(n).description} for n in catalog_names()]
        _emit(cmd, render_json(rows), stdout)
        return EXIT_OK
    if cmd.action != "show":
        raise UsageError("catalog needs list or show")
    name = _one_operand(cmd)
    base, _, rest = name.partition(":")
    e = entry(base)
    kw = _parse_kv(rest)
    d = catalog(base, **kw)
    record = {"name": e.name, "parameters": {**e.defaults, **kw}, "k0": d.k0, **d.to_dict()}
    _emit(cmd, render_json(record), stdout)
    return EXIT_OK


def _check_points(d: IDistribution, count=5):
    lo, hi = d.support
    if math.isfinite(hi):
        return np.linspace(lo, hi, count + 2)[1:-1]
    start = lo * 1.1 if lo > 0 else 0.1
    return np.geomspace(start, start * 50, count)


def _algebra_check(action, operands, result, cmd) -> list:
    from .verification import compare, mellin_convolution, quotient_convolution

    out = []
    for y in _check_points(result):
        if action == "product" and len(operands) == 2:
            a, b = operands
            want = mellin_convolution(a.pdf, b.pdf, y, a.support, b.support)
        elif action == "quotient":
            a, b = operands
            want = quotient_convolution(a.pdf, b.pdf, y, a.support, b.support)
        elif action == "scale":
            want = operands[0].pdf(y / cmd.factor) / cmd.factor
        elif action == "power":
            r = float(Fraction(cmd.exponent))
            x = y ** (1.0 / r)
            want = operands[0].pdf(x) * abs(x / (r * y))
        else:
            return out
        out.append(json.loads(compare(f"pdf y={y:.6g}", result.pdf(y), want, 1e-6).to_json()))
    return out


def cmd_algebra(cmd: CommandSpec, cfg: EvalConfig, stdout) -> int:
    action = cmd.action
    ds = [load_distribution(t, cfg) for t in cmd.operands]
    if action == "product":
        if not ds:
            raise UsageError("product needs at least one operand")
        result = algebra.product(ds)
    elif action == "quotient":
        if len(ds) != 2:
            raise UsageError("quotient takes two operands")
        result = algebra.quotient(*ds)
    elif action == "scale":
        if len(ds) != 1 or cmd.factor is None:
            raise UsageError("scale takes one operand and --factor")
        result = algebra.scale(ds[0], cmd.factor)
    elif action == "power":
        if len(ds) != 1 or cmd.exponent is None:
            raise UsageError("power takes one operand and --exponent")
        try:
            r = Fraction(cmd.exponent)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"exponent must be rational, got {cmd.exponent!r}") from None
        result = algebra.power(ds[0], r)
    else:
        raise UsageError("algebra needs product, quotient, scale or power")
    record = result.to_dict()
    if cmd.check:
        record["check"] = _algebra_check(action, ds, result.with_config(cfg), cmd)
    _emit(cmd, render_json(record), stdout)
    if cmd.check and not all(r["passed"] for r in record["check"]):
        return EXIT_VERIFY
    return EXIT_OK


def cmd_ifig(cmd: CommandSpec, cfg: EvalConfig, stdout) -> int:
    d = load_ifig(_one_operand(cmd), cfg)
    action = cmd.action
    fn = {"pdf": d.pdf, "mellin": d.mellin, "moment": d.moment, "laplace": d.laplace}.get(action)
    if fn is None:
        raise UsageError("ifig needs pdf, mellin, moment or laplace")
    if action != "pdf" and cmd.grid.points is None and cmd.grid.lo is None:
        raise UsageError(f"ifig {action} needs --points or --lo/--hi")
    xs = cmd.grid.values()
    values = _map(fn, xs, cmd.jobs)
    _emit(cmd, render_table(xs, values, cmd.fmt), stdout)
    return EXIT_OK


def cmd_sample(cmd: CommandSpec, cfg: EvalConfig, stdout) -> int:
    d = load_distribution(_one_operand(cmd), cfg)
    if cmd.count < 1:
        raise UsageError("--count must be at least 1")
    values = d.sample(cmd.count, cmd.seed)
    _emit(cmd, render_table(range(1, values.size + 1), values, cmd.fmt), stdout)
    return EXIT_OK


def cmd_verify(cmd: CommandSpec, cfg: EvalConfig, stdout) -> int:
    from .suites import CRITERIA

    wanted = [int(s) for s in cmd.suites] if cmd.suites else sorted(CRITERIA)
    for k in wanted:
        if k not in CRITERIA:
            raise UsageError(f"no suite {k}; choose from {sorted(CRITERIA)}")
    lines, ok = [], True
    for k in wanted:
        for r in CRITERIA[k][1]():
            ok &= r.passed
            lines.append(r.to_json())
    _emit(cmd, "\n".join(lines) + "\n", stdout)
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "eval": cmd_eval,
    "catalog": cmd_catalog,
    "algebra": cmd_algebra,
    "ifig": cmd_ifig,
    "sample": cmd_sample,
    "verify": cmd_verify,
    **{q: cmd_quantity for q in QUANTITIES},
}


# -- argument parsing ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _points(text: str) -> tuple:
    try:
        return tuple(float(Fraction(t)) for t in text.split(",") if t.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad point list {text!r}") from None


def _add_common(p: argparse.ArgumentParser, grid: bool = True):
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    p.add_argument("-o", "--output", help="write to this file instead of standard output")
    p.add_argument("--rel-tol", type=float, help="relative tolerance of the contour quadrature")
    p.add_argument("--tail-tol", type=float, help="relative tolerance of the truncated tails")
    if grid:
        p.add_argument("--lo", type=float)
        p.add_argument("--hi", type=float)
        p.add_argument("--count", type=int, default=64)
        p.add_argument("--spacing", choices=("linear", "log"))
        p.add_argument("--points", type=_points, help="comma-separated grid, overrides lo/hi/count")
        p.add_argument("--jobs", type=int, default=1, help="worker threads for grid points")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ifunc", description="I-function distributions: evaluation, algebra and verification.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="I-function values on a grid")
    p.add_argument("operand", help="I-function parameter file or inline JSON")
    p.add_argument("--contour-only", action="store_true", help="skip elementary closed forms")
    _add_common(p)

    for q in QUANTITIES:
        p = sub.add_parser(q, help=f"{q} of a distribution on a grid")
        p.add_argument("operand", help="catalog NAME[:k=v,...], distribution file, or inline JSON")
        _add_common(p)

    p = sub.add_parser("catalog", help="list or show catalog entries")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("operand", nargs="?")
    _add_common(p, grid=False)

    p = sub.add_parser("algebra", help="products, quotients, scaling and powers")
    p.add_argument("action", choices=("product", "quotient", "scale", "power"))
    p.add_argument("operands", nargs="+")
    p.add_argument("--factor", type=float)
    p.add_argument("--exponent")
    p.add_argument("--check", action="store_true", help="compare the result's pdf with a quadrature oracle")
    _add_common(p, grid=False)

    p = sub.add_parser("ifig", help="I-FIG pdf, Mellin transform, moments and Laplace transform")
    p.add_argument("action", choices=("pdf", "mellin", "moment", "laplace"))
    p.add_argument("operand", help="gig|inverse_gaussian|inverse_gamma[:k=v,...], file, or inline JSON")
    _add_common(p)

    p = sub.add_parser("sample", help="inverse-transform samples")
    p.add_argument("operand")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int)
    _add_common(p, grid=False)

    p = sub.add_parser("verify", help="run the oracle suites and emit JSON report lines")
    p.add_argument("--suite", action="append", default=[], help="criterion number; repeatable")
    _add_common(p, grid=False)
    return parser


def parse(argv: Sequence[str]) -> CommandSpec:
    ns = build_parser().parse_args(list(argv))
    grid = GridSpec(
        getattr(ns, "lo", None),
        getattr(ns, "hi", None),
        getattr(ns, "count", 64) if hasattr(ns, "spacing") else 64,
        getattr(ns, "spacing", None),
        getattr(ns, "points", None),
    )
    grid.validate()
    if hasattr(ns, "operands"):
        operands = tuple(ns.operands)
    elif getattr(ns, "operand", None) is not None:
        operands = (ns.operand,)
    else:
        operands = ()
    jobs = getattr(ns, "jobs", 1)
    if jobs < 1:
        raise UsageError("--jobs must be at least 1")
    return CommandSpec(
        command=ns.command,
        action=getattr(ns, "action", None),
        operands=operands,
        grid=grid,
        fmt=ns.fmt,
        output=ns.output,
        seed=getattr(ns, "seed", None),
        count=getattr(ns, "count", 10),
        rel_tol=ns.rel_tol,
        tail_tol=ns.tail_tol,
        factor=getattr(ns, "factor", None),
        exponent=getattr(ns, "exponent", None),
        check=getattr(ns, "check", False),
        jobs=jobs,
        suites=tuple(getattr(ns, "suite", ())),
        contour_only=getattr(ns, "contour_only", False),
    )


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, (PoleError, DivergenceError, QuadratureError, NormalizationError, BracketError)):
        return EXIT_NUMERIC
    return EXIT_INPUT


def run(cmd: CommandSpec, stdout=None) -> int:
    stdout = stdout or sys.stdout
    return COMMANDS[cmd.command](cmd, cmd.config(), stdout)


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    argv = sys.argv[1:] if argv is None else argv
    try:
        return run(parse(argv), stdout)
    except (IFunctionError, ValueError) as exc:
        code = _exit_code(exc)
        stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}) + "\n")
        return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
