"""Colored grids, corner counting and the structural row/column operators.

Colors are small integers: ``0`` is white and ``1..k`` are the palette
colors. A corner of color ``c`` sits at the center of a 2x2 window of the
grid padded with one white row/column on every side, and is counted by
:func:`delta_c`. Row and column indices in the public functions are
1-based; index 0 and ``m + 1`` refer to the white padding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "WHITE",
    "INFINITE",
    "BOTTOM",
    "Bottom",
    "ColorGrid",
    "delta_c",
    "count_corners_color",
    "count_corners",
    "corners_between_rows",
    "internal_corners_color",
    "insert_row",
    "insert_column",
    "remove_row",
    "remove_column",
    "merge_rows",
    "merge_range",
    "eta",
    "transpose",
    "is_extension",
    "row_as_grid",
]

WHITE = 0
#: The corner count of an undefined (conflicting) merge.
INFINITE = math.inf


class Bottom:
    """The undefined row produced by merging two conflicting rows."""

    _instance: "Bottom | None" = None

    def __new__(cls) -> "Bottom":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOTTOM"

    def __reduce__(self):
        return (Bottom, ())


BOTTOM = Bottom()

Row = tuple  # a row coloring is a plain tuple of ints


@dataclass(frozen=True, eq=False)
class ColorGrid:
    """An immutable ``m x n`` coloring over the palette ``0..k``."""

    cells: np.ndarray
    k: int

    def __post_init__(self) -> None:
        arr = np.array(self.cells, dtype=np.int16, copy=True)
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise ValueError(f"grid must be 2-dimensional, got shape {arr.shape}")
        if self.k < 1:
            raise ValueError(f"palette size must be >= 1, got {self.k}")
        if arr.size and (arr.min() < 0 or arr.max() > self.k):
            raise ValueError(f"cell colors must lie in [0, {self.k}]")
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], k: int | None = None) -> "ColorGrid":
        rows = [list(r) for r in rows]
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged rows")
        arr = np.array(rows, dtype=np.int16).reshape(len(rows), len(rows[0]) if rows else 0)
        if k is None:
            k = max(1, int(arr.max()) if arr.size else 1)
        return cls(arr, k)

    @classmethod
    def white(cls, m: int, n: int, k: int = 1) -> "ColorGrid":
        return cls(np.zeros((m, n), dtype=np.int16), k)

    @property
    def m(self) -> int:
        return self.cells.shape[0]

    @property
    def n(self) -> int:
        return self.cells.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    def row(self, i: int) -> Row:
        """Row ``i`` (1-based) as a tuple."""
        if not 1 <= i <= self.m:
            raise IndexError(f"row index {i} out of range [1, {self.m}]")
        return tuple(int(v) for v in self.cells[i - 1])

    def column(self, j: int) -> Row:
        if not 1 <= j <= self.n:
            raise IndexError(f"column index {j} out of range [1, {self.n}]")
        return tuple(int(v) for v in self.cells[:, j - 1])

    def rows(self) -> list[Row]:
        return [tuple(int(v) for v in r) for r in self.cells]

    def tolist(self) -> list[list[int]]:
        return self.cells.tolist()

    def padded(self) -> np.ndarray:
        """The grid with one white row/column added on every side."""
        out = np.zeros((self.m + 2, self.n + 2), dtype=np.int16)
        out[1:-1, 1:-1] = self.cells
        return out

    def colors_present(self) -> set[int]:
        return {int(c) for c in np.unique(self.cells)} - {WHITE}

    def white_count(self) -> int:
        return int((self.cells == WHITE).sum())

    def with_cells(self, cells: np.ndarray) -> "ColorGrid":
        return ColorGrid(cells, self.k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColorGrid):
            return NotImplemented
        return self.k == other.k and self.shape == other.shape and bool(
            np.array_equal(self.cells, other.cells)
        )

    def __hash__(self) -> int:
        return hash((self.k, self.shape, self.cells.tobytes()))

    def __repr__(self) -> str:
        return f"ColorGrid({self.tolist()!r}, k={self.k})"


def _check_color(c: int) -> None:
    if c == WHITE:
        raise ValueError("corners of white are undefined; pass a color in [1, k]")
    if c < 0:
        raise ValueError(f"invalid color {c}")


def delta_c(region, c: int) -> int:
    """Number of ``c``-corners at the center of a 2x2 region."""
    _check_color(c)
    (a, b), (d, e) = region
    return abs((a == c) + (e == c) - (b == c) - (d == c))


def _windows_color(padded: np.ndarray, c: int) -> np.ndarray:
    eq = (padded == c).astype(np.int8)
    return np.abs(eq[:-1, :-1] + eq[1:, 1:] - eq[:-1, 1:] - eq[1:, :-1])


def count_corners_color(grid: ColorGrid, c: int) -> int:
    """All corners of color ``c`` over the padded grid."""
    _check_color(c)
    if grid.m == 0 or grid.n == 0:
        return 0
    total = int(_windows_color(grid.padded(), c).sum())
    assert total % 2 == 0, "corner count of a single color must be even"
    return total


def count_corners(grid: ColorGrid, colors: Iterable[int] | None = None) -> int:
    """Total corners over all palette colors (or over ``colors`` only)."""
    if grid.m == 0 or grid.n == 0:
        return 0
    palette = range(1, grid.k + 1) if colors is None else colors
    present = grid.colors_present()
    return sum(count_corners_color(grid, c) for c in palette if c in present)


def _as_row(g) -> np.ndarray:
    return np.asarray(g, dtype=np.int16).reshape(-1)


def corners_between_rows(g, h, colors: Iterable[int] | None = None):
    """Corners in the windows between two consecutive padded rows ``g`` over ``h``."""
    if g is BOTTOM or h is BOTTOM:
        return INFINITE
    g, h = _as_row(g), _as_row(h)
    if g.shape != h.shape:
        raise ValueError(f"row length mismatch: {g.size} vs {h.size}")
    pair = np.zeros((2, g.size + 2), dtype=np.int16)
    pair[0, 1:-1] = g
    pair[1, 1:-1] = h
    palette = set(int(v) for v in np.unique(pair)) - {WHITE}
    if colors is not None:
        palette &= set(colors)
    return sum(int(_windows_color(pair, c).sum()) for c in palette)


def internal_corners_color(grid: ColorGrid, c: int) -> int:
    """Corners of color ``c`` excluding the four windows at the grid's corner points."""
    _check_color(c)
    if grid.m == 0 or grid.n == 0:
        return 0
    win = _windows_color(grid.padded(), c)
    corner_windows = {(0, 0), (0, grid.n), (grid.m, 0), (grid.m, grid.n)}
    return int(win.sum()) - sum(int(win[i, j]) for i, j in corner_windows)


def _line(g, length: int) -> np.ndarray:
    if g is BOTTOM:
        raise ValueError("cannot insert the undefined row")
    arr = _as_row(g)
    if arr.size != length:
        raise ValueError(f"line has length {arr.size}, expected {length}")
    return arr


def insert_row(grid: ColorGrid, i: int, g) -> ColorGrid:
    """Insert ``g`` so that it becomes row ``i``; ``i = m + 1`` appends."""
    if not 1 <= i <= grid.m + 1:
        raise IndexError(f"insert position {i} out of range [1, {grid.m + 1}]")
    line = _line(g, grid.n)
    return grid.with_cells(np.insert(grid.cells, i - 1, line, axis=0))


def insert_column(grid: ColorGrid, j: int, g) -> ColorGrid:
    if not 1 <= j <= grid.n + 1:
        raise IndexError(f"insert position {j} out of range [1, {grid.n + 1}]")
    line = _line(g, grid.m)
    return grid.with_cells(np.insert(grid.cells, j - 1, line, axis=1))


def remove_row(grid: ColorGrid, i: int) -> ColorGrid:
    if not 1 <= i <= grid.m:
        raise IndexError(f"row index {i} out of range [1, {grid.m}]")
    return grid.with_cells(np.delete(grid.cells, i - 1, axis=0))


def remove_column(grid: ColorGrid, j: int) -> ColorGrid:
    if not 1 <= j <= grid.n:
        raise IndexError(f"column index {j} out of range [1, {grid.n}]")
    return grid.with_cells(np.delete(grid.cells, j - 1, axis=1))


def merge_rows(g, h):
    """Cellwise merge; a colored cell wins over white, two distinct colors give BOTTOM."""
    if g is BOTTOM or h is BOTTOM:
        return BOTTOM
    g, h = tuple(g), tuple(h)
    if len(g) != len(h):
        raise ValueError(f"row length mismatch: {len(g)} vs {len(h)}")
    out = []
    for a, b in zip(g, h):
        if a == b or b == WHITE:
            out.append(a)
        elif a == WHITE:
            out.append(b)
        else:
            return BOTTOM
    return tuple(out)


def merge_range(grid: ColorGrid, i: int, j: int):
    """Left fold of :func:`merge_rows` over rows ``i..j`` (1-based, inclusive)."""
    if not 1 <= i <= j <= grid.m:
        raise IndexError(f"invalid row range [{i}, {j}] for {grid.m} rows")
    acc = grid.row(i)
    for r in range(i + 1, j + 1):
        acc = merge_rows(acc, grid.row(r))
        if acc is BOTTOM:
            return BOTTOM
    return acc


def eta(g):
    """Fill every white cell with the (already filled) color to its left."""
    if g is BOTTOM:
        return BOTTOM
    out = list(g)
    for idx in range(1, len(out)):
        if out[idx] == WHITE:
            out[idx] = out[idx - 1]
    return tuple(out)


def transpose(grid: ColorGrid) -> ColorGrid:
    return grid.with_cells(grid.cells.T)


def is_extension(base: ColorGrid, candidate: ColorGrid, allowed: Iterable[int]) -> bool:
    """Does ``candidate`` keep every colored cell of ``base`` and fill whites from ``allowed``?"""
    if base.shape != candidate.shape:
        raise ValueError(f"dimension mismatch: {base.shape} vs {candidate.shape}")
    allowed = set(allowed)
    colored = base.cells != WHITE
    if not np.array_equal(base.cells[colored], candidate.cells[colored]):
        return False
    filled = candidate.cells[~colored]
    return all(int(v) in allowed for v in np.unique(filled))


def row_as_grid(g, k: int) -> ColorGrid:
    """A single row viewed as a ``1 x n`` grid."""
    return ColorGrid(np.asarray(g, dtype=np.int16).reshape(1, -1), k)
