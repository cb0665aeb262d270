import os
import subprocess
import sys

import numpy as np
import pytest

from ifunc import _kernel_py, kernel
from ifunc.params import IFunctionParams

compiled = pytest.importorskip("ifunc._kernel")

PARAMS = IFunctionParams(1, 1, [(0.2, 0.5, 1.5)], [(0.3, 1.0, 1.0), (0.1, 0.7, 2.0)])


def _args():
    u, v, w, _, _ = PARAMS.terms()
    return np.asarray(u, dtype=complex), np.asarray(v, dtype=float), np.asarray(w, dtype=float)


def test_default_backend_is_compiled():
    if os.environ.get("IFUNC_PURE_PYTHON", "") in ("", "0"):
        assert kernel.BACKEND == compiled.BACKEND


@pytest.mark.parametrize("curv", [0.0, -0.3, 0.4])
def test_backends_agree(curv):
    u, v, w = _args()
    t = np.linspace(-30, 30, 101)
    logz = complex(0.4, 0.3)
    g1 = compiled.integrand(u, v, w, logz, 0.2, curv, 0.0, t)
    g2 = _kernel_py.integrand(u, v, w, logz, 0.2, curv, 0.0, t)
    np.testing.assert_allclose(g1, g2, rtol=1e-12, atol=1e-300)
    a, b = np.arange(-20.0, 20.0, 2.0), np.arange(-18.0, 22.0, 2.0)
    r1 = compiled.panels_gk15(u, v, w, logz, 0.2, curv, 0.0, a, b)
    r2 = _kernel_py.panels_gk15(u, v, w, logz, 0.2, curv, 0.0, a, b)
    (k1, e1, m1), (k2, e2, m2) = r1, r2
    np.testing.assert_allclose(k1, k2, rtol=1e-11, atol=1e-300)
    np.testing.assert_allclose(m1, m2, rtol=1e-11, atol=1e-300)
    # error estimates of resolved panels are roundoff, so compare on the panel scale
    np.testing.assert_allclose(e1, e2, rtol=1e-6, atol=1e-14 * m1.max())


def test_pure_python_selection():
    code = "import ifunc.kernel as k; from ifunc.catalog import catalog; print(k.BACKEND, repr(catalog('gamma').pdf(1.3)))"
    env = dict(os.environ, IFUNC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout.split()
    assert out[0] == _kernel_py.BACKEND
    from ifunc.catalog import catalog

    assert float(out[1]) == pytest.approx(catalog("gamma").pdf(1.3), rel=1e-12)
