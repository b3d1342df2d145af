"""Build script: compiles the integration kernels when Cython and a C
compiler are available. The package works without the extension (a pure
Python fallback is selected at import time), so the build is optional.

Set DUFFDRIVE_NO_EXTENSION=1 to skip the compiled core entirely.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DUFFDRIVE_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext = Extension(
            "duffdrive.kernels._core",
            ["src/duffdrive/kernels/_core.pyx"],
            # -ffp-contract=off keeps the C arithmetic bit-identical to the
            # pure Python fallback (no fused multiply-add contraction).
            extra_compile_args=["-O2", "-ffp-contract=off"],
        )
        ext.optional = True
        ext_modules = cythonize(
            [ext], compiler_directives={"language_level": "3"}
        )

setup(ext_modules=ext_modules)
