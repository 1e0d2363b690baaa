"""Build hook for the optional compiled kernel.

The package is fully functional without the extension (a pure-Python
twin is selected at import time), so a missing Cython only degrades
performance.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("matchclique._kernels_c", ["src/matchclique/_kernels_c.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
