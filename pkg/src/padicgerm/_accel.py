"""numba switch.

Set ``PADICGERM_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when numba
is importable.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_AVAILABLE = numba is not None
DISABLED = os.environ.get("PADICGERM_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}
USE_NUMBA = NUMBA_AVAILABLE and not DISABLED


def njit(func):
    """``numba.njit(cache=True)`` when numba is importable, else identity."""
    if not NUMBA_AVAILABLE:
        return func
    return numba.njit(cache=True)(func)


def default_backend():
    return "numba" if USE_NUMBA else "numpy"
