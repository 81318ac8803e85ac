"""Build script for the optional compiled window-sum kernel.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compile is not fatal for pure-Python installs.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "latticesum._core",
                ["src/latticesum/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=extensions)
