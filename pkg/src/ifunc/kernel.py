"""Backend selection for the contour kernels.

The compiled extension is used when it imports cleanly; setting the
environment variable ``IFUNC_PURE_PYTHON=1`` forces the numpy fallback.
"""

import os

from . import _kernel_py

if os.environ.get("IFUNC_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl
    except ImportError:  # extension not built
        _impl = _kernel_py

BACKEND = _impl.BACKEND
log_chi = _impl.log_chi
integrand = _impl.integrand
panels_gk15 = _impl.panels_gk15

__all__ = ["BACKEND", "log_chi", "integrand", "panels_gk15"]
