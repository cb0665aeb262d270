"""Compiled versus numpy contour kernel.

Times the raw Gauss-Kronrod panel sweep and full I-function evaluations
with each backend swapped into ``ifunc.kernel``.

    python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import math
import timeit

import numpy as np

from ifunc import _kernel_py, kernel
from ifunc.catalog import catalog
from ifunc.params import IFunctionParams

try:
    from ifunc import _kernel as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"numpy": _kernel_py}
if _compiled is not None:
    BACKENDS["cython"] = _compiled


def use(impl):
    kernel.log_chi = impl.log_chi
    kernel.integrand = impl.integrand
    kernel.panels_gk15 = impl.panels_gk15


def panel_sweep(impl, panels=200):
    p = IFunctionParams(1, 1, [(0.2, 0.5, 1.5)], [(0.3, 1.0, 1.0), (0.1, 0.7, 2.0)])
    u, v, w, _, _ = p.terms()
    u, v, w = np.asarray(u, dtype=complex), np.asarray(v, dtype=float), np.asarray(w, dtype=float)
    edges = np.linspace(-60, 60, panels + 1)
    return lambda: impl.panels_gk15(u, v, w, 0.4 + 0j, 0.2, -0.1, 0.0, edges[:-1], edges[1:])


def pdf_grid():
    ds = [catalog(n) for n in ("gamma", "half_cauchy", "beta_first_kind", "f")]
    xs = [d.support[0] + 0.5 if not math.isfinite(d.support[1]) else 0.5 for d in ds]

    def run():
        for d, x in zip(ds, xs):
            for t in (0.5, 1.0, 2.0):
                d.pdf(x * t if math.isinf(d.support[1]) else x * t / 2)

    return run


def best(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    original = kernel.log_chi, kernel.integrand, kernel.panels_gk15
    rows = []
    for name, impl in BACKENDS.items():
        use(impl)
        rows.append((name, best(panel_sweep(impl), args.repeat, 20), best(pdf_grid(), args.repeat, 3)))
    kernel.log_chi, kernel.integrand, kernel.panels_gk15 = original
    print(f"{'backend':8s} {'200 GK15 panels':>18s} {'12 pdf evaluations':>20s}")
    for name, sweep, grid in rows:
        print(f"{name:8s} {sweep * 1e3:15.3f} ms {grid * 1e3:17.2f} ms")
    if len(rows) == 2:
        print(f"speedup  {rows[0][1] / rows[1][1]:15.1f} x  {rows[0][2] / rows[1][2]:16.1f} x")


if __name__ == "__main__":
    main()
