"""Build script: compiles the optional C kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so a failed cythonization is downgraded to a warning.
"""

import warnings

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/pointloc/_kernels/_ckernels.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    warnings.warn(f"C kernel extension not built ({exc}); using pure fallback")

setup(ext_modules=ext_modules)
