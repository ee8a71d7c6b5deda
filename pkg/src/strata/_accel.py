"""Numba switch.

Kernels are written in the numba-compatible subset of Python.  When numba is
importable and ``STRATA_DISABLE_NUMBA`` is unset (or ``0``), they are compiled
with ``@njit``; otherwise the pure-numpy fallbacks in :mod:`strata.kernels`
are used instead.
"""

import os

_flag = os.environ.get("STRATA_DISABLE_NUMBA", "").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:  # pragma: no cover - exercised by whichever mode the suite runs in
    import numba as _numba
except ImportError:  # pragma: no cover
    _numba = None

HAS_NUMBA = _numba is not None
USE_NUMBA = HAS_NUMBA and not _disabled


def njit(fn):
    """Compile ``fn`` with numba if available, else return it untouched.

    The uncompiled function stays reachable as ``fn.py_func`` either way.
    """
    if not USE_NUMBA:
        fn.py_func = fn
        return fn
    return _numba.njit(cache=True, nogil=True)(fn)
