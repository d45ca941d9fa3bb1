"""Select the projection-statistics kernel implementation at import time.

The compiled extension is used when it imports; set ``RDMD_PURE_PYTHON=1``
to force the NumPy fallback.
"""
import os

from . import _kernels_py

_FORCE_PY = os.environ.get("RDMD_PURE_PYTHON", "").lower() in ("1", "true", "yes")

try:
    if _FORCE_PY:
        raise ImportError("pure-python backend requested")
    from . import _kernels as kernels
    BACKEND = "cython"
except ImportError:
    kernels = _kernels_py
    BACKEND = "python"


def available_backends():
    """Map backend name to kernel module for every importable backend."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels
        found["cython"] = _kernels
    except ImportError:
        pass
    return found
