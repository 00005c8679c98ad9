"""Builds the optional compiled kernel; the package works without it."""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("MOMENTCUT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/momentcut/_ddcore.pyx"],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
