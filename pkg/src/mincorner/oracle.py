"""Brute-force ground truth for tiny grids.

Candidates are enumerated depth-first over the white cells in row-major
order with colors ascending, so the first optimum met is the
lexicographically smallest. A 2x2 window is scored as soon as its last
undecided cell is assigned, and branches whose scored windows already
exceed the best value are cut; this never drops an optimum.

``groups`` enables the constrained mode used for gadget checks: every
listed group of white cells receives one common color.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import ResourceLimitError
from .exact import SolveResult
from .grid import WHITE, ColorGrid

__all__ = ["DEFAULT_CAP", "brute_force_optimum", "enumerate_optima"]

DEFAULT_CAP = 1 << 24

Cell = tuple[int, int]


def _units(grid: ColorGrid, groups: Sequence[Sequence[Cell]] | None) -> list[list[Cell]]:
    whites = [(int(i), int(j)) for i, j in zip(*np.nonzero(grid.cells == WHITE))]
    if not groups:
        return [[c] for c in whites]
    white_set = set(whites)
    seen: set[Cell] = set()
    units = []
    for grp in groups:
        cells = sorted((int(i), int(j)) for i, j in grp)
        for c in cells:
            if c not in white_set:
                raise ValueError(f"group cell {c} is not a white cell of the grid")
            if c in seen:
                raise ValueError(f"cell {c} belongs to two groups")
            seen.add(c)
        if cells:
            units.append(cells)
    units.extend([c] for c in whites if c not in seen)
    units.sort(key=lambda u: u[0])
    return units


class _Search:
    def __init__(self, grid, allowed, colors, groups, cap):
        self.allowed = tuple(sorted(set(int(c) for c in allowed)))
        if grid.white_count() and not self.allowed:
            raise ValueError("no allowed colors for the white cells")
        bad = [c for c in self.allowed if not 0 <= c <= grid.k]
        if bad:
            raise ValueError(f"allowed colors {bad} outside palette [0, {grid.k}]")
        self.counted = set(range(1, grid.k + 1)) if colors is None else set(colors)
        self.units = _units(grid, groups)
        space = len(self.allowed) ** len(self.units)
        self.node_cap = None
        if space > cap:
            if not groups:
                raise ResourceLimitError(f"{space} candidates exceed cap {cap}")
            self.node_cap = cap  # constrained mode: bound the search instead
        self.nodes = 0
        self.grid = grid
        self.pad = grid.padded().tolist()
        m, n = grid.shape
        owner = {}
        for u, cells in enumerate(self.units):
            for i, j in cells:
                owner[(i + 1, j + 1)] = u
        # windows keyed by the unit whose assignment completes them
        self.closing: list[list[Cell]] = [[] for _ in self.units]
        self.base = 0
        for i in range(m + 1):
            for j in range(n + 1):
                us = [owner[p] for p in ((i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)) if p in owner]
                if us:
                    self.closing[max(us)].append((i, j))
                else:
                    self.base += self._window(i, j)

    def _window(self, i, j) -> int:
        p = self.pad
        a, b, c, d = p[i][j], p[i][j + 1], p[i + 1][j], p[i + 1][j + 1]
        s = 0
        for col in {a, b, c, d}:
            if col != WHITE and col in self.counted:
                s += abs((a == col) + (d == col) - (b == col) - (c == col))
        return s

    def run(self, keep_all: bool):
        self.best = math.inf
        self.found: list[list[list[int]]] = []
        self._dfs(0, self.base, keep_all)
        return self.best, self.found

    def _dfs(self, u, partial, keep_all):
        self.nodes += 1
        if self.node_cap is not None and self.nodes > self.node_cap:
            raise ResourceLimitError(f"search exceeded {self.node_cap} nodes")
        if u == len(self.units):
            sol = [row[1:-1] for row in self.pad[1:-1]]
            if partial < self.best:
                self.best = partial
                self.found = [sol]
            elif keep_all and partial == self.best:
                self.found.append(sol)
            return
        cells = self.units[u]
        for col in self.allowed:
            for i, j in cells:
                self.pad[i + 1][j + 1] = col
            v = partial + sum(self._window(i, j) for i, j in self.closing[u])
            if v < self.best or (keep_all and v == self.best):
                self._dfs(u + 1, v, keep_all)
        for i, j in cells:
            self.pad[i + 1][j + 1] = WHITE


def brute_force_optimum(grid: ColorGrid, allowed: Iterable[int] | None = None, *,
                        colors: Iterable[int] | None = None,
                        groups: Sequence[Sequence[Cell]] | None = None,
                        cap: int = DEFAULT_CAP) -> SolveResult:
    """Exact optimum by exhaustive search, with the lexicographically smallest witness."""
    if allowed is None:
        allowed = range(grid.k + 1)
    search = _Search(grid, allowed, colors, groups, cap)
    best, found = search.run(keep_all=False)
    return SolveResult(int(best), grid.with_cells(np.array(found[0], dtype=np.int16).reshape(grid.shape)))


def enumerate_optima(grid: ColorGrid, allowed: Iterable[int] | None = None, *,
                     colors: Iterable[int] | None = None,
                     groups: Sequence[Sequence[Cell]] | None = None,
                     cap: int = DEFAULT_CAP) -> list[ColorGrid]:
    """Every optimal extension, in lexicographic order."""
    if allowed is None:
        allowed = range(grid.k + 1)
    search = _Search(grid, allowed, colors, groups, cap)
    _, found = search.run(keep_all=True)
    return [grid.with_cells(np.array(f, dtype=np.int16).reshape(grid.shape)) for f in found]
