"""Backend selection for the dynamic-programming kernels.

The compiled extension is used when it imports; set ``MINCORNER_PURE=1``
to force the numpy fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pykernels

_compiled = None
if os.environ.get("MINCORNER_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

_impl = _compiled if _compiled is not None else _pykernels

BACKEND = "compiled" if _compiled is not None else "python"
INF = int(_pykernels.INF)

pair_corners = _impl.pair_corners
pair_min = _impl.pair_min
sweep_step = _impl.sweep_step
grid_corners = _impl.grid_corners


def backends() -> dict:
    """All importable kernel implementations by name."""
    out = {"python": _pykernels}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


def color_mask(k: int, colors=None) -> np.ndarray:
    """``uint8`` mask of length ``k + 1`` marking the colors whose corners count."""
    mask = np.zeros(k + 1, dtype=np.uint8)
    if colors is None:
        mask[1:] = 1
    else:
        for c in colors:
            if 1 <= c <= k:
                mask[c] = 1
    return mask
