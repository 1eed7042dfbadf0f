"""Polynomial row-merging approximation.

``A(i) = min_j A(j) + corners(eta(merge of rows j+1..i))`` with ``A(0) = 0``.
Each block of consecutive rows is replaced by the sweep-filled merge of
its rows; the result is an extension whose corner count is at most
``A(m)``, itself at most half the square of the optimum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import BOTTOM, WHITE, ColorGrid, count_corners, eta, merge_rows, row_as_grid, transpose

__all__ = ["ApproxResult", "approx_value", "approx_extension"]


@dataclass(frozen=True)
class ApproxResult:
    """``block_boundaries`` holds the last row (1-based) of every block, ending with ``m``."""

    value: int
    block_boundaries: tuple[int, ...]
    extension: ColorGrid
    work: int = 0  # merge steps executed by the inner loop


def _row_cost(g, k: int) -> int:
    return count_corners(row_as_grid(eta(g), k)) if len(g) else 0


def _table(grid: ColorGrid):
    m, n, k = grid.m, grid.n, grid.k
    rows = grid.rows()
    A = [0] + [math.inf] * m
    arg = [0] * (m + 1)
    fill: list = [None] * (m + 1)
    work = 0
    for i in range(1, m + 1):
        g = (WHITE,) * n
        for j in range(i - 1, -1, -1):
            g = merge_rows(g, rows[j])
            work += 1
            if g is BOTTOM:
                break  # every longer block contains the same conflict
            v = A[j] + _row_cost(g, k)
            if v <= A[i]:  # ties go to the longer block
                A[i], arg[i], fill[i] = v, j, g
    return A, arg, fill, work


def _extension(grid: ColorGrid, arg, fill):
    bounds = []
    cells = np.array(grid.cells)
    i = grid.m
    while i > 0:
        j = arg[i]
        bounds.append(i)
        cells[j:i] = np.asarray(eta(fill[i]), dtype=np.int16)
        i = j
    return tuple(reversed(bounds)), grid.with_cells(cells)


def approx_value(grid: ColorGrid) -> int:
    """``A(m)``; always finite since single-row blocks never conflict."""
    if grid.m == 0:
        return 0
    A, *_ = _table(grid)
    return int(A[grid.m])


def approx_extension(grid: ColorGrid, both_orientations: bool = False) -> ApproxResult:
    """The block extension realizing ``A(m)``.

    With ``both_orientations`` the transpose is tried as well and the
    smaller value wins (rows on ties).
    """
    if grid.m == 0:
        return ApproxResult(0, (), grid, 0)
    A, arg, fill, work = _table(grid)
    bounds, ext = _extension(grid, arg, fill)
    res = ApproxResult(int(A[grid.m]), bounds, ext, work)
    if both_orientations and grid.n:
        alt = approx_extension(transpose(grid))
        if alt.value < res.value:
            return ApproxResult(alt.value, alt.block_boundaries, transpose(alt.extension),
                                work + alt.work)
    return res
