"""Build script for the optional compiled phase-loop kernel.

The package works without the extension: `csar.backend` falls back to the
pure-Python twin when `csar._phase_cy` is missing. Building with Cython is
only an optimization for large Monte-Carlo sweeps.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "csar._phase_cy",
                sources=["src/csar/_phase_cy.pyx"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
