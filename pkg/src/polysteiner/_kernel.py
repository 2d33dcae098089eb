"""Selects the simplex kernel at import time.

The compiled kernel works in 64-bit integers and bails out with
``OverflowError`` when a tableau entry grows too large; the call is then
repeated with the arbitrary-precision pure-Python kernel.  Setting
``POLYSTEINER_KERNEL=python`` forces the fallback.
"""

import os

from . import _simplex

pivot = _simplex.pivot
OPTIMAL = _simplex.OPTIMAL
UNBOUNDED = _simplex.UNBOUNDED

_native = None
if os.environ.get("POLYSTEINER_KERNEL", "").lower() != "python":
    try:
        from ._simplex_ext import simplex_iterate as _native
    except ImportError:  # pragma: no cover - depends on the build
        _native = None

BACKEND = "cython" if _native is not None else "python"

stats = {"native": 0, "fallback": 0, "python": 0}


def simplex_iterate(T, basis, det, obj_row, n_rows, n_allowed):
    if _native is not None:
        try:
            out = _native(T, basis, det, obj_row, n_rows, n_allowed)
            stats["native"] += 1
            return out
        except OverflowError:
            stats["fallback"] += 1
    else:
        stats["python"] += 1
    return _simplex.simplex_iterate(T, basis, det, obj_row, n_rows, n_allowed)
