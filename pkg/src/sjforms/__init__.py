"""Exact verification engine for degree-two Siegel/Jacobi modular form structures.

Conventions used throughout:

* tau = [[t11, t12], [t12, t22]] on the Siegel upper half space of degree 2,
  e(x) = exp(2*pi*i*x); Fourier terms are coeff * e(n*t11 + r*t12 + m*t22).
* All derivatives are normalized, d_ij = (2*pi*i)^{-1} d/dtau_ij, and the
  Sym^2-part of a Jacobi-form image is stored divided by (2*pi*i)^2, so
  every coefficient in sight lies in Q(zeta_24) and all checks are exact.
"""

from ._backend import BACKEND as kernel_backend
from .cyclotomic import CycRat
from .series import FourierSeries, Sym2Series

__version__ = "0.1.0"

__all__ = ["CycRat", "FourierSeries", "Sym2Series", "kernel_backend", "__version__"]
