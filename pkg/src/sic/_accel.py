"""Optional numba acceleration.

Hot kernels are written once in a numba-compatible subset of Python and
compiled with ``njit`` when numba is importable. Setting the environment
variable ``SIC_DISABLE_NUMBA=1`` forces the pure-numpy fallback paths.
"""

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional speedup
    numba = None
    HAVE_NUMBA = False

_FALSY = {"", "0", "false", "no", "off"}

USE_NUMBA = HAVE_NUMBA and os.environ.get("SIC_DISABLE_NUMBA", "").strip().lower() in _FALSY


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator."""
    if HAVE_NUMBA:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)

    def wrap(func):
        return func

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return wrap


def numba_enabled() -> bool:
    return USE_NUMBA


def set_numba(enabled: bool) -> None:
    """Switch the kernel backend at runtime (used by tests and benchmarks)."""
    global USE_NUMBA
    if enabled and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    USE_NUMBA = bool(enabled)
