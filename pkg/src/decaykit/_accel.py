"""Optional numba acceleration for the hot quadrature kernels.

Set ``DECAYKIT_DISABLE_JIT=1`` to run every kernel as plain numpy code.
The flag is read once, at import time.
"""
import os
import warnings

_flag = os.environ.get("DECAYKIT_DISABLE_JIT", "").strip().lower()
JIT_REQUESTED = _flag in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None
    if JIT_REQUESTED:
        warnings.warn("numba not installed, falling back to numpy kernels", UserWarning)

USE_NUMBA = JIT_REQUESTED and numba is not None


def jit(fn):
    """``numba.njit`` when acceleration is on, identity otherwise.

    numpy's error model makes real division by zero produce inf/nan, as it
    does in the fallback, instead of raising.
    """
    if USE_NUMBA:
        return numba.njit(cache=True, error_model="numpy")(fn)
    return fn


def backend():
    return "numba" if USE_NUMBA else "numpy"
