"""Kernel backend selection: compiled extension if available, else Python.

Set ``LEGRID_FORCE_PY=1`` to force the pure-Python kernels.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("LEGRID_FORCE_PY") == "1":
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as _cy  # type: ignore[attr-defined]

        kernels = _cy
        BACKEND = "cython"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"


def backend_name() -> str:
    return BACKEND
