"""Pick the compiled kernel when it is built, else the numpy fallback.

Set ``WATERHAMMER_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernel_py

kernel_py = _kernel_py
kernel_c = None

if os.environ.get("WATERHAMMER_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel as kernel_c
    except ImportError:
        kernel_c = None

active = kernel_c if kernel_c is not None else kernel_py
BACKEND = active.BACKEND


def get(name=None):
    """Return the kernel module called ``name`` ("cython" or "python")."""
    if name is None:
        return active
    if name == "python":
        return kernel_py
    if name == "cython":
        if kernel_c is None:
            raise ImportError("compiled kernel is not built; run `pip install -e .`")
        return kernel_c
    raise ValueError(f"unknown backend {name!r}")
