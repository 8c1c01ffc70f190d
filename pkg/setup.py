"""Build hook for the optional compiled convolution kernel.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time); the extension only speeds up the
sparse-series inner loop.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("sjforms._convolve_c", ["src/sjforms/_convolve_c.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
