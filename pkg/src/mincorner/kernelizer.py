"""Kernelization by the two line rules, with a replayable trace.

Rule 1 drops an all-white row or column. Rule 2 replaces two adjacent
lines whose colored cells all share one color by their merge. Both keep
the optimum, and every step removes one line, so at most ``m + n`` steps
run.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .exact import DEFAULT_STATE_CAP, SolveResult, solve_exact
from .grid import WHITE, ColorGrid, count_corners, is_extension

__all__ = [
    "RemovedEmptyLine",
    "MergedLines",
    "KernelTrace",
    "kernelize",
    "lift_solution",
    "kernel_size_bound",
    "solve_fpt",
    "format_trace",
]

ROW, COL = "row", "col"


@dataclass(frozen=True)
class RemovedEmptyLine:
    axis: str
    index: int  # 1-based, in the grid the step was applied to


@dataclass(frozen=True)
class MergedLines:
    axis: str
    index: int  # lines index and index + 1 became line index
    color: int


Step = Union[RemovedEmptyLine, MergedLines]


@dataclass(frozen=True)
class KernelTrace:
    shape: tuple[int, int]
    k: int
    steps: tuple[Step, ...]

    def __len__(self) -> int:
        return len(self.steps)


def _lines(cells: np.ndarray, axis: str) -> np.ndarray:
    return cells if axis == ROW else cells.T


def _single_color(line: np.ndarray) -> set[int]:
    return set(np.unique(line).tolist()) - {WHITE}


def _rule1(cells: np.ndarray, axis: str, steps: list) -> np.ndarray:
    lines = _lines(cells, axis)
    i = 0
    while i < lines.shape[0]:
        if not lines[i].any():
            steps.append(RemovedEmptyLine(axis, i + 1))
            lines = np.delete(lines, i, axis=0)
        else:
            i += 1
    return lines if axis == ROW else lines.T


def _rule2(cells: np.ndarray, axis: str, steps: list) -> np.ndarray:
    lines = _lines(cells, axis)
    i = 0
    while i + 1 < lines.shape[0]:
        cols = _single_color(lines[i]) | _single_color(lines[i + 1])
        if len(cols) <= 1:
            c = cols.pop() if cols else WHITE
            merged = np.maximum(lines[i], lines[i + 1])
            steps.append(MergedLines(axis, i + 1, c))
            lines = np.delete(lines, i + 1, axis=0)
            lines[i] = merged
        else:
            i += 1
    return lines if axis == ROW else lines.T


def kernelize(grid: ColorGrid) -> tuple[ColorGrid, KernelTrace]:
    """Apply the rules to a fixpoint: Rule 1 rows, columns, then Rule 2 rows, columns, repeat."""
    cells = np.array(grid.cells)
    steps: list[Step] = []
    while True:
        before = len(steps)
        cells = _rule1(cells, ROW, steps)
        cells = _rule1(cells, COL, steps)
        cells = _rule2(cells, ROW, steps)
        cells = _rule2(cells, COL, steps)
        if len(steps) == before:
            break
    return grid.with_cells(cells), KernelTrace(grid.shape, grid.k, tuple(steps))


def lift_solution(trace: KernelTrace, kernel_extension: ColorGrid) -> ColorGrid:
    """Undo the trace on a kernel extension; duplicated lines add no corners."""
    shape = _replay_shape(trace)
    if kernel_extension.shape != shape:
        raise ValueError(f"extension shape {kernel_extension.shape} does not match kernel {shape}")
    cells = np.array(kernel_extension.cells)
    for step in reversed(trace.steps):
        lines = _lines(cells, step.axis)
        i = step.index - 1
        if isinstance(step, MergedLines):
            lines = np.insert(lines, i + 1, lines[i], axis=0)
        elif lines.shape[0] == 0:
            lines = np.zeros((1, lines.shape[1]), dtype=np.int16)
        else:
            src = i - 1 if i > 0 else i
            lines = np.insert(lines, i, lines[src], axis=0)
        cells = lines if step.axis == ROW else lines.T
    return ColorGrid(cells, trace.k)


def _replay_shape(trace: KernelTrace) -> tuple[int, int]:
    m, n = trace.shape
    for step in trace.steps:
        if step.axis == ROW:
            m -= 1
        else:
            n -= 1
    return m, n


def _line_color_sets(cells: np.ndarray):
    for axis in (ROW, COL):
        for line in _lines(cells, axis):
            yield _single_color(line)


def kernel_size_bound(grid: ColorGrid) -> tuple[int, int]:
    """``(r, 2 r + 1)`` where ``r`` counts cells not of the color heading most single-color lines.

    Ties between colors go to the smallest code. The computed kernel is
    checked against the bound in both dimensions.
    """
    singles = [0] * (grid.k + 1)
    for cs in _line_color_sets(grid.cells):
        if len(cs) == 1:
            singles[next(iter(cs))] += 1
    c_star = max(range(1, grid.k + 1), key=lambda c: (singles[c], -c))
    r = int(((grid.cells != WHITE) & (grid.cells != c_star)).sum())
    bound = 2 * r + 1
    kernel, _ = kernelize(grid)
    assert kernel.m <= bound and kernel.n <= bound, (kernel.shape, bound)
    return r, bound


def solve_fpt(grid: ColorGrid, state_cap: int = DEFAULT_STATE_CAP) -> SolveResult:
    """Kernelize, solve the kernel exactly over all colors, and lift the witness back."""
    kernel, trace = kernelize(grid)
    res = solve_exact(kernel, state_cap=state_cap)
    lifted = lift_solution(trace, res.extension)
    assert is_extension(grid, lifted, range(grid.k + 1))
    assert count_corners(lifted) == res.optimum
    return SolveResult(res.optimum, lifted)


def format_trace(trace: KernelTrace) -> list[str]:
    """One line per step, e.g. ``remove row 2`` or ``merge col 3 color 1``."""
    out = []
    for s in trace.steps:
        if isinstance(s, RemovedEmptyLine):
            out.append(f"remove {s.axis} {s.index}")
        else:
            out.append(f"merge {s.axis} {s.index} color {s.color}")
    return out
