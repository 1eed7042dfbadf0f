"""Exact row-by-row dynamic program for minimum-corner extensions.

``E(g, i)`` is the fewest corners in rows ``1..i`` when row ``i`` is
colored ``g``; the optimum is ``E(0, m + 1)``. Layers are dense arrays
indexed by the assignment to the row's white cells only, so an entry's
flat index orders row colorings lexicographically.

Two exact transitions compute the same minimum:

* ``pairwise``: every (previous, current) extension pair, as in the
  textbook recurrence;
* ``sweep``: the same minimization factored over the ``n + 1`` windows
  between the two rows, one column at a time.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import ResourceLimitError
from .grid import WHITE, ColorGrid, transpose

__all__ = [
    "DEFAULT_STATE_CAP",
    "SolveResult",
    "enumerate_row_extensions",
    "solve_exact",
    "optimal_value",
    "row_domains",
    "rows_array",
    "solve_over_row_sets",
]

DEFAULT_STATE_CAP = 1 << 22


@dataclass(frozen=True)
class SolveResult:
    optimum: int | float
    extension: ColorGrid


def row_domains(row: Sequence[int], allowed: Iterable[int]) -> list[tuple[int, ...]]:
    """Per-cell candidate colors: fixed colors stay, white cells range over ``allowed``."""
    allowed = tuple(sorted(set(allowed)))
    return [(int(c),) if c != WHITE else allowed for c in row]


def enumerate_row_extensions(row, allowed: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """All ``allowed``-extensions of ``row`` in lexicographic order."""
    yield from itertools.product(*row_domains(row, allowed))


def rows_array(domains: Sequence[tuple[int, ...]]) -> np.ndarray:
    """Every row of ``itertools.product(*domains)`` as an ``int16`` matrix, lexicographic."""
    n = len(domains)
    sizes = [len(d) for d in domains]
    total = math.prod(sizes)
    out = np.empty((total, n), dtype=np.int16)
    if total == 0 or n == 0:
        return out
    grids = np.indices(sizes).reshape(n, -1)
    for j, dom in enumerate(domains):
        out[:, j] = np.asarray(dom, dtype=np.int16)[grids[j]]
    return out


def _window_costs(bl, tl, tr, br, mask) -> np.ndarray:
    """cost[a, b, c, d] for the window ``[[tl[b], tr[c]], [bl[a], br[d]]]``."""
    cost = np.zeros((len(bl), len(tl), len(tr), len(br)), dtype=np.int64)
    for a, x in enumerate(bl):
        for b, y in enumerate(tl):
            for c, z in enumerate(tr):
                for d, w in enumerate(br):
                    s = 0
                    for col in {x, y, z, w}:
                        if col and mask[col]:
                            s += abs((y == col) + (w == col) - (z == col) - (x == col))
                    cost[a, b, c, d] = s
    return cost


def _sweep_size(prev_dom, cur_dom) -> int:
    """Largest intermediate table the sweep transition materializes."""
    sizes_h = [1] + [len(d) for d in prev_dom] + [1]
    sizes_g = [1] + [len(d) for d in cur_dom] + [1]
    worst = 0
    for j in range(len(cur_dom) + 1):
        frontier = math.prod(sizes_g[: j + 1]) * math.prod(sizes_h[j:])
        worst = max(worst, frontier * sizes_g[j + 1])
    return worst


def _sweep_transition(prev: np.ndarray, prev_dom, cur_dom, mask) -> np.ndarray:
    n = len(cur_dom)
    hp = [(0,)] + list(prev_dom) + [(0,)]
    gp = [(0,)] + list(cur_dom) + [(0,)]
    # slots: g_0..g_j, h_j, h_{j+1}..h_{n+1}
    shape = [1, 1] + list(prev.shape) + [1]
    state = prev.reshape(shape)
    for j in range(n + 1):
        A, B, C, D = gp[j], hp[j], hp[j + 1], gp[j + 1]
        cost = _window_costs(A, B, C, D, mask)
        L = math.prod(shape[:j])
        R = math.prod(shape[j + 3:])
        new = kernels.sweep_step(state.reshape(L, len(A), len(B), len(C), R), cost)
        shape = shape[: j + 1] + [len(D)] + shape[j + 2:]
        state = new.reshape(shape)
    return np.asarray(state).reshape(tuple(len(d) for d in cur_dom))


def _pairwise_transition(prev: np.ndarray, prev_dom, cur_dom, mask) -> np.ndarray:
    best, _ = kernels.pair_min(prev.reshape(-1), rows_array(prev_dom), rows_array(cur_dom), mask)
    return best.reshape(tuple(len(d) for d in cur_dom))


def _transition(prev, prev_dom, cur_dom, mask, how: str, cap: int) -> np.ndarray:
    n_prev, n_cur = prev.size, math.prod(len(d) for d in cur_dom)
    if how == "auto":
        how = "pairwise" if n_prev * n_cur <= 4096 else "sweep"
    if how == "pairwise":
        return _pairwise_transition(prev, prev_dom, cur_dom, mask)
    if how == "sweep":
        if _sweep_size(prev_dom, cur_dom) > cap:
            raise ResourceLimitError("sweep table exceeds the state cap")
        return _sweep_transition(prev, prev_dom, cur_dom, mask)
    raise ValueError(f"unknown transition {how!r}")


def _validate(grid: ColorGrid, allowed) -> tuple[int, ...]:
    allowed = tuple(sorted(set(int(c) for c in allowed)))
    bad = [c for c in allowed if not 0 <= c <= grid.k]
    if bad:
        raise ValueError(f"allowed colors {bad} outside palette [0, {grid.k}]")
    if not allowed and grid.white_count():
        raise ValueError("no allowed colors for the white cells")
    return allowed


def _line_whites(cells: np.ndarray) -> int:
    return int((cells == WHITE).sum(axis=1).max()) if cells.size else 0


def _should_transpose(grid: ColorGrid) -> bool:
    return _line_whites(grid.cells.T) < _line_whites(grid.cells)


def _check_cap(grid: ColorGrid, allowed, cap: int) -> None:
    if len(allowed) ** _line_whites(grid.cells) > cap:
        raise ResourceLimitError(
            f"{len(allowed)}^{_line_whites(grid.cells)} row extensions exceed cap {cap}"
        )


def _to_count(v) -> int | float:
    v = int(v)
    return math.inf if v >= kernels.INF else v


def _run(grid, allowed, mask, how, cap, keep):
    n = grid.n
    prev_dom = [(0,)] * n
    prev = np.zeros((1,) * n, dtype=np.int64)
    layers = []
    for row in grid.rows():
        dom = row_domains(row, allowed)
        prev = _transition(prev, prev_dom, dom, mask, how, cap)
        prev_dom = dom
        if keep:
            layers.append((prev, dom))
    final = _transition(prev, prev_dom, [(0,)] * n, mask, how, cap)
    return int(final.reshape(-1)[0]), layers


def _backtrack(layers, n, mask) -> np.ndarray:
    out = []
    nxt = np.zeros((1, n), dtype=np.int16)
    for layer, dom in reversed(layers):
        cand = rows_array(dom)
        _, arg = kernels.pair_min(layer.reshape(-1), cand, nxt, mask)
        row = cand[int(arg[0])]
        out.append(row)
        nxt = row.reshape(1, n)
    return np.array(out[::-1], dtype=np.int16).reshape(len(layers), n)


def solve_over_row_sets(row_sets: Sequence[np.ndarray], n: int, mask: np.ndarray,
                        keep: bool = True) -> tuple[int | float, np.ndarray | None]:
    """The row DP over arbitrary candidate sets, one ``(P_i, n)`` matrix per row.

    Returns the optimum (``inf`` when some row has no candidate) and, with
    ``keep``, the chosen rows. Candidate order decides ties: the first
    listed row among equal-cost predecessors wins.
    """
    prev_rows = np.zeros((1, n), dtype=np.int16)
    prev = np.zeros(1, dtype=np.int64)
    layers = []
    for cand in row_sets:
        cand = np.asarray(cand, dtype=np.int16).reshape(-1, n)
        if cand.shape[0] == 0:
            return math.inf, None
        prev, _ = kernels.pair_min(prev, prev_rows, cand, mask)
        prev_rows = cand
        if keep:
            layers.append((prev, cand))
    final, _ = kernels.pair_min(prev, prev_rows, np.zeros((1, n), dtype=np.int16), mask)
    value = _to_count(final[0])
    if not keep or value == math.inf:
        return value, None
    out = []
    nxt = np.zeros((1, n), dtype=np.int16)
    for cost, cand in reversed(layers):
        _, arg = kernels.pair_min(cost, cand, nxt, mask)
        nxt = cand[int(arg[0])].reshape(1, n)
        out.append(nxt[0])
    return value, np.array(out[::-1], dtype=np.int16).reshape(len(layers), n)


def _solve(grid, allowed, colors, transition, state_cap, orient, keep):
    allowed = _validate(grid, allowed)
    if grid.m == 0 or grid.n == 0:
        return 0, grid
    flip = orient and _should_transpose(grid)
    work = transpose(grid) if flip else grid
    _check_cap(work, allowed, state_cap)
    mask = kernels.color_mask(grid.k, colors)
    value, layers = _run(work, allowed, mask, transition, state_cap, keep)
    if value >= kernels.INF:
        raise ValueError("grid admits no valid extension")
    if not keep:
        return value, None
    ext = work.with_cells(_backtrack(layers, work.n, mask))
    return value, transpose(ext) if flip else ext


def solve_exact(grid: ColorGrid, allowed: Iterable[int] | None = None, *,
                colors: Iterable[int] | None = None, transition: str = "auto",
                state_cap: int = DEFAULT_STATE_CAP, orient: bool = True) -> SolveResult:
    """Minimum-corner ``allowed``-extension of ``grid`` with a witness.

    ``allowed`` defaults to every color including white. ``colors`` limits
    which colors' corners are counted; with ``allowed={c, 0}`` and
    ``colors={c}`` this is the restricted single-color variant. Among
    equal-cost predecessors the lexicographically smallest row is chosen.
    """
    if allowed is None:
        allowed = range(grid.k + 1)
    value, ext = _solve(grid, allowed, colors, transition, state_cap, orient, keep=True)
    return SolveResult(_to_count(value), ext)


def optimal_value(grid: ColorGrid, allowed: Iterable[int] | None = None, *,
                  colors: Iterable[int] | None = None, transition: str = "auto",
                  state_cap: int = DEFAULT_STATE_CAP, orient: bool = True) -> int | float:
    """Optimum only, keeping just the two most recent layers."""
    if allowed is None:
        allowed = range(grid.k + 1)
    value, _ = _solve(grid, allowed, colors, transition, state_cap, orient, keep=False)
    return _to_count(value)
