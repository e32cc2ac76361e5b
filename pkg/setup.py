"""Build script for the optional compiled kernels.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time); the Cython core exists because the
fixed-step Runge-Kutta oracle dominates the full verification runtime.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    extensions = cythonize(
        [
            Extension(
                "stepscatter._kernels._core",
                ["src/stepscatter/_kernels/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
