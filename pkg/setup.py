"""Builds the optional compiled stack kernel.

The package works without it (a pure-numpy kernel is selected at import
time), so any failure to cythonize or compile downgrades to a warning.
"""
import warnings

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "ptscatter.kernels._stack",
                ["src/ptscatter/kernels/_stack.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    warnings.warn(f"compiled kernel skipped ({exc}); pure-python fallback will be used")

setup(ext_modules=ext_modules)
