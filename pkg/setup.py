"""Build script: compiles the optional Laguerre recurrence extension.

The compiled kernel is a pure speedup; the package falls back to the
numpy implementation when the extension is absent.  Set DEGJC_NO_EXT=1
to skip the compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DEGJC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "degjc._laguerre_cy",
                    ["src/degjc/_laguerre_cy.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
