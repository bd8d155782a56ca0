"""Backend selection for the permutation-group engine.

BLOCKINV_BACKEND=numba selects the @njit kernels (default when numba imports
cleanly), BLOCKINV_BACKEND=numpy forces the pure-numpy fallback.  The brute
force cap default can be overridden with BLOCKINV_CAP.
"""

from __future__ import annotations

import os
import warnings

DEFAULT_CAP = 200_000

_cache: dict[str, object] = {}


def backend_name() -> str:
    name = os.environ.get("BLOCKINV_BACKEND", "").strip().lower()
    if name in ("numba", "numpy"):
        return name
    return "numba"


def get_backend(name: str | None = None):
    """Return the kernel module for `name` (env-selected when None)."""
    if name is None:
        name = backend_name()
    if name in _cache:
        return _cache[name]
    if name == "numpy":
        from . import _kernels_numpy as mod
    elif name == "numba":
        try:
            from . import _kernels_numba as mod
        except ImportError as exc:
            warnings.warn(f"numba backend unavailable ({exc}); falling back to numpy")
            from . import _kernels_numpy as mod
    else:
        raise ValueError(f"unknown backend {name!r} (expected 'numba' or 'numpy')")
    _cache[name] = mod
    return mod


def default_cap() -> int:
    raw = os.environ.get("BLOCKINV_CAP", "").strip()
    if raw:
        cap = int(raw)
        if cap < 1:
            raise ValueError("BLOCKINV_CAP must be positive")
        return cap
    return DEFAULT_CAP
