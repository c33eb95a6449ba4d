"""Build script for the optional compiled kernel extension.

The package works without the extension (a pure NumPy fallback is selected
at import time), so a failed extension build is tolerated: install with
HAPSLINK_SKIP_EXT=1 to skip compilation entirely.
"""
import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("HAPSLINK_SKIP_EXT"):
        return []
    from Cython.Build import cythonize

    ext = Extension(
        "hapslink._kernels._ext",
        ["src/hapslink/_kernels/_ext.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=extensions())
