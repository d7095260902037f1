"""Build hooks for the optional compiled curvature kernel.

The extension is a strict accelerator: if Cython or a C compiler is
missing, the build degrades to the pure-Python kernel and everything still
works (kernels.py picks whichever import succeeds).
"""
import numpy
from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/orbikit/geomkit/_curvcore.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(
    ext_modules=ext_modules,
    include_dirs=[numpy.get_include()],
)
