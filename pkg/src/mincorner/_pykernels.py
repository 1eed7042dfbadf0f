"""Pure-Python (numpy) implementations of the dynamic-programming kernels.

These mirror ``_ckernels.pyx`` exactly and are used when the compiled
extension is unavailable or ``MINCORNER_PURE=1`` is set.
"""
from __future__ import annotations

import numpy as np

INF = np.int64(1) << np.int64(60)

_PAIR_CHUNK = 1 << 22


def _padded(rows: np.ndarray) -> np.ndarray:
    out = np.zeros((rows.shape[0], rows.shape[1] + 2), dtype=np.int16)
    out[:, 1:-1] = rows
    return out


def pair_corners(top: np.ndarray, bottom: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Corner counts between every top row and every bottom row, shape ``(P, Q)``."""
    top = _padded(np.asarray(top, dtype=np.int16))
    bottom = _padded(np.asarray(bottom, dtype=np.int16))
    P, Q, w = top.shape[0], bottom.shape[0], top.shape[1] - 1
    out = np.zeros((P, Q), dtype=np.int64)
    if w <= 0 or P == 0 or Q == 0:
        return out
    colors = [c for c in range(1, mask.size) if mask[c]]
    step = max(1, _PAIR_CHUNK // max(1, Q * w))
    for c in colors:
        et = (top == c).astype(np.int8)
        eb = (bottom == c).astype(np.int8)
        a = et[:, :-1] - et[:, 1:]  # top-left minus top-right
        b = eb[:, 1:] - eb[:, :-1]  # bottom-right minus bottom-left
        if not a.any() and not b.any():
            continue
        for s in range(0, P, step):
            blk = np.abs(a[s:s + step, None, :] + b[None, :, :]).sum(axis=2)
            out[s:s + step] += blk
    return out


def pair_min(prev_cost: np.ndarray, prev_rows: np.ndarray, cur_rows: np.ndarray,
             mask: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """For each current row the minimum of ``prev_cost[h] + corners(h, g)`` and its first argmin."""
    prev_cost = np.asarray(prev_cost, dtype=np.int64)
    Q = cur_rows.shape[0]
    best = np.full(Q, INF, dtype=np.int64)
    arg = np.full(Q, -1, dtype=np.int64)
    if prev_rows.shape[0] == 0:
        return best, arg
    step = max(1, _PAIR_CHUNK // max(1, prev_rows.shape[0] * (prev_rows.shape[1] + 1)))
    for s in range(0, Q, step):
        tot = prev_cost[:, None] + pair_corners(prev_rows, cur_rows[s:s + step], mask)
        idx = np.argmin(tot, axis=0)
        val = tot[idx, np.arange(tot.shape[1])]
        val = np.minimum(val, INF)
        best[s:s + step] = val
        arg[s:s + step] = np.where(val >= INF, -1, idx)
    return best, arg


def sweep_step(old: np.ndarray, cost: np.ndarray) -> np.ndarray:
    """``new[l, a, d, c, r] = min_b old[l, a, b, c, r] + cost[a, b, c, d]``."""
    tot = old[:, :, :, :, :, None] + cost[None, :, :, :, None, :]
    new = tot.min(axis=2)  # (L, A, C, R, D)
    np.minimum(new, INF, out=new)
    return np.ascontiguousarray(new.transpose(0, 1, 4, 2, 3))


def grid_corners(padded: np.ndarray, mask: np.ndarray) -> int:
    """Corner count of an already padded grid restricted to the colors in ``mask``."""
    total = 0
    for c in range(1, mask.size):
        if not mask[c]:
            continue
        eq = (padded == c).astype(np.int8)
        total += int(np.abs(eq[:-1, :-1] + eq[1:, 1:] - eq[:-1, 1:] - eq[1:, :-1]).sum())
    return total
