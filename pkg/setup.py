import os

from setuptools import setup

# The compiled kernel is an optional accelerator.  If Cython (or a C
# compiler) is unavailable the package installs anyway and falls back to
# the pure-Python kernels at import time.
ext_modules = []
if os.environ.get("LEGRID_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/legrid/_kernels_cy.pyx"], language_level=3
        )
    except Exception:
        ext_modules = []

setup(ext_modules=ext_modules)
