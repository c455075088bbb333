"""Backend selection for the permutation kernels.

The env flag LISAKIT_BACKEND picks the implementation:

  auto   (default) numba when importable, else numpy
  numba  require the jitted kernels
  numpy  force the pure-numpy fallback

Both backends produce bit-identical permutations; statistic values agree up
to floating-point summation order.
"""

from __future__ import annotations

import os

ENV_FLAG = "LISAKIT_BACKEND"

SLOT_LOCAL_MORAN = 0
SLOT_LOCAL_GEARY = 1
SLOT_GI_STAR = 2
SLOT_GI = 3

GLOBAL_SLOT_MORAN = 0
GLOBAL_SLOT_GEARY = 1
GLOBAL_SLOT_GENERAL_G = 2

_cache: dict[str, object] = {}


def get_backend(name: str | None = None):
    """Return the kernel module for `name` (or the env-selected default)."""
    choice = (name or os.environ.get(ENV_FLAG, "auto")).lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"unknown backend {choice!r} (use auto, numba, or numpy)")
    if choice in _cache:
        return _cache[choice]
    if choice == "numpy":
        from . import numpy_backend as mod
    elif choice == "numba":
        from . import numba_backend as mod
    else:
        try:
            from . import numba_backend as mod
        except ImportError:
            from . import numpy_backend as mod
    _cache[choice] = mod
    return mod


def active_backend_name(name: str | None = None) -> str:
    return get_backend(name).BACKEND_NAME
