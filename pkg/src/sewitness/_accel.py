"""Numba switch.

Kernels are compiled with numba when it is importable, unless the
environment variable ``SEWITNESS_DISABLE_NUMBA`` is set to a truthy value.
In that case (or when numba is missing) ``njit`` is a passthrough and the
vectorised numpy implementations in :mod:`sewitness.kernels` are used.
"""
import os

_FLAG = os.environ.get("SEWITNESS_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    import numba as _numba
except ImportError:
    _numba = None

NUMBA_ENABLED = _numba is not None


def njit(*args, **kw):
    if NUMBA_ENABLED:
        kw.setdefault("cache", True)
        return _numba.njit(*args, **kw)
    if len(args) == 1 and callable(args[0]) and not kw:
        return args[0]
    return lambda f: f


def backend():
    return "numba" if NUMBA_ENABLED else "numpy"
