"""Budget-bounded decision: the row DP restricted to cheap row extensions.

A single row costs four corners per maximal colored segment, so an
extension within budget ``l`` has at most ``l // 4`` colored segments.
Rows are generated segment by segment from left to right, cutting any
prefix that already opens too many counted segments.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .exact import enumerate_row_extensions, optimal_value, solve_over_row_sets
from .grid import WHITE, ColorGrid

__all__ = ["bounded_row_extensions", "decide"]


def _segments_cost(row: Sequence[int], counted) -> int:
    cost, prev = 0, WHITE
    for c in row:
        if c != prev and c != WHITE and c in counted:
            cost += 4
        prev = c
    return cost


def bounded_row_extensions(row: Sequence[int], budget: int, allowed: Iterable[int],
                           colors: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """All ``allowed``-extensions of ``row`` whose own corner count is at most ``budget``.

    The result is duplicate-free and lexicographically sorted.
    """
    row = tuple(int(c) for c in row)
    allowed = tuple(sorted(set(int(c) for c in allowed)))
    if budget < 0:
        return []
    top = max(list(row) + list(allowed) + [0])
    counted = set(range(1, top + 1)) if colors is None else set(colors)
    if len(row) <= budget:  # short rows: filter the full enumeration
        return [h for h in enumerate_row_extensions(row, allowed)
                if _segments_cost(h, counted) <= budget]
    limit = budget // 4
    out: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def grow(j: int, prev: int, used: int) -> None:
        if j == len(row):
            out.append(tuple(prefix))
            return
        for c in ((row[j],) if row[j] != WHITE else allowed):
            opens = c != prev and c != WHITE and c in counted
            if used + opens > limit:
                continue
            prefix.append(c)
            grow(j + 1, c, used + opens)
            prefix.pop()

    grow(0, WHITE, 0)
    return out


def decide(grid: ColorGrid, budget: int, allowed: Iterable[int] | None = None, *,
           method: str = "xp", colors: Iterable[int] | None = None) -> bool:
    """Is there an ``allowed``-extension with at most ``budget`` corners?"""
    if allowed is None:
        allowed = range(grid.k + 1)
    allowed = sorted(set(allowed))
    if budget < 0:
        return False
    if grid.m == 0 or grid.n == 0:
        return True
    budget -= budget % 2  # corner counts are even
    if method == "exact":
        return optimal_value(grid, allowed, colors=colors) <= budget
    if method != "xp":
        raise ValueError(f"unknown method {method!r}")
    sets = []
    for g in grid.rows():
        rows = bounded_row_extensions(g, budget, allowed, colors)
        if not rows:
            return False  # some row alone exceeds the budget
        sets.append(np.array(rows, dtype=np.int16))
    value, _ = solve_over_row_sets(sets, grid.n, kernels.color_mask(grid.k, colors), keep=False)
    return value <= budget
