"""Optional numba acceleration.

Numerical kernels are written in plain, loop-based numpy so they run
unchanged when numba is missing; when it is available they are JIT
compiled and cached on disk.
"""
from __future__ import annotations

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


__all__ = ["njit", "HAVE_NUMBA"]
