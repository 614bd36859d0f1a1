"""Builds the optional Cython clustering kernel.

The package works without the compiled extension (a pure-Python kernel is
selected at import time), so a failed extension build is not fatal.
"""
from setuptools import setup, Extension

import numpy

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "xcoref.clustering._hac_cy",
                ["src/xcoref/clustering/_hac_cy.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
