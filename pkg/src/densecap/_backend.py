"""Select the kernel backend at import time.

The compiled ``_ckernels`` extension is preferred. Setting the environment
variable ``DENSECAP_BACKEND=python`` forces the numpy fallback.
"""

import os

from densecap import _pykernels


def load(name=None):
    """Return the kernel module called ``name`` ("cython" or "python")."""
    if name == "python":
        return _pykernels
    if name not in (None, "cython"):
        raise ValueError(f"unknown backend {name!r}")
    try:
        from densecap import _ckernels
    except ImportError:
        if name == "cython":
            raise
        return _pykernels
    return _ckernels


def available():
    names = ["python"]
    try:
        from densecap import _ckernels  # noqa: F401
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


kernels = load(os.environ.get("DENSECAP_BACKEND") or None)
BACKEND = kernels.NAME
