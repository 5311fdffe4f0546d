"""Builds the optional compiled closure kernel; the package works without it."""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("PARTGROUP_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(["src/partgroup/_closure_c.pyx"], language_level=3, quiet=True)

setup(ext_modules=ext_modules)
