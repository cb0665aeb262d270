"""Build script: compiles the optional Cython kernel when possible."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("IFUNC_PURE_PYTHON", "") in ("", "0"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "ifunc._kernel",
                    ["src/ifunc/_kernel.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    # plain complex multiply/divide; operands stay far from overflow
                    extra_compile_args=["-O3", "-fcx-limited-range"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
