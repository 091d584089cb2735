"""Hot kernels: compiled Cython versions with a pure-Python fallback.

The compiled module is used when it was built and ``BOXBLOCKS_PURE`` is not
set.  ``BACKEND`` names the active implementation.
"""
import os

from . import _pykernels as python_backend

try:
    if os.environ.get("BOXBLOCKS_PURE"):
        raise ImportError("pure backend forced")
    from . import _ckernels as compiled_backend
except ImportError:
    compiled_backend = None

_active = compiled_backend or python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

adjacency_matrix = _active.adjacency_matrix
fingerprint = _active.fingerprint
max_independent_set = _active.max_independent_set


def backends() -> dict:
    """Available implementations keyed by name."""
    out = {"python": python_backend}
    if compiled_backend is not None:
        out["cython"] = compiled_backend
    return out
