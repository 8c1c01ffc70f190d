"""Select the convolution kernel: compiled extension if available, else pure Python.

Set SJFORMS_KERNEL=python (or =cython) to force a backend.
"""

import os

_choice = os.environ.get("SJFORMS_KERNEL", "").lower()

if _choice == "python":
    from . import _convolve_py as kernel
elif _choice == "cython":
    from . import _convolve_c as kernel  # type: ignore[no-redef]
else:
    try:
        from . import _convolve_c as kernel  # type: ignore[no-redef]
    except ImportError:
        from . import _convolve_py as kernel  # type: ignore[no-redef]

BACKEND = kernel.BACKEND
mul_packed = kernel.mul_packed
pack_key = kernel.pack_key
unpack_key = kernel.unpack_key
