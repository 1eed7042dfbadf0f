"""Text grid format and static rendering.

A grid file starts with ``m n k`` and continues with ``m`` lines of ``n``
integers in ``[0, k]``. Lines starting with ``#`` are comments.
"""
from __future__ import annotations

import string

from .grid import WHITE, ColorGrid

__all__ = ["GridParseError", "parse_grid", "emit_grid", "render", "SVG_PALETTE", "ASCII_GLYPHS"]

ASCII_GLYPHS = string.digits + string.ascii_lowercase
SVG_PALETTE = (
    "#4e79a7", "#e15759", "#59a14f", "#f28e2b", "#b07aa1",
    "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac",
    "#1f77b4", "#d62728",
)
CELL = 20


class GridParseError(ValueError):
    def __init__(self, line: int, col: int | None, msg: str):
        where = f"line {line}" + (f", column {col}" if col is not None else "")
        super().__init__(f"{where}: {msg}")
        self.line, self.col = line, col


def parse_grid(text: str) -> ColorGrid:
    lines = [(no, raw.split()) for no, raw in enumerate(text.splitlines(), 1)
             if raw.strip() and not raw.lstrip().startswith("#")]
    if not lines:
        raise GridParseError(1, None, "missing header '<m> <n> <k>'")
    no, head = lines[0]
    if len(head) != 3 or not all(t.isdigit() for t in head):
        raise GridParseError(no, None, "header must be three non-negative integers '<m> <n> <k>'")
    m, n, k = (int(t) for t in head)
    if k < 1:
        raise GridParseError(no, 3, "palette size k must be at least 1")
    body = lines[1:]
    if len(body) != m:
        raise GridParseError(body[-1][0] if body else no, None,
                             f"expected {m} grid rows, found {len(body)}")
    rows = []
    for no, toks in body:
        if len(toks) != n:
            raise GridParseError(no, None, f"expected {n} cells, found {len(toks)}")
        row = []
        for col, t in enumerate(toks, 1):
            if not t.isdigit():
                raise GridParseError(no, col, f"cell {t!r} is not a non-negative integer")
            v = int(t)
            if v > k:
                raise GridParseError(no, col, f"color {v} outside palette [0, {k}]")
            row.append(v)
        rows.append(row)
    return ColorGrid.from_rows(rows, k) if m else ColorGrid.white(0, n, k)


def emit_grid(grid: ColorGrid) -> str:
    out = [f"{grid.m} {grid.n} {grid.k}"]
    out += [" ".join(str(int(v)) for v in row) for row in grid.cells]
    return "\n".join(out) + "\n"


def _render_ascii(grid: ColorGrid) -> str:
    return "".join("".join(ASCII_GLYPHS[int(v)] for v in row) + "\n" for row in grid.cells)


def _render_svg(grid: ColorGrid) -> str:
    w, h = grid.n * CELL, grid.m * CELL
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">']
    for i, row in enumerate(grid.cells):
        for j, v in enumerate(row):
            fill = "none" if v == WHITE else SVG_PALETTE[int(v) - 1]
            out.append(f'<rect x="{j * CELL}" y="{i * CELL}" width="{CELL}" height="{CELL}" '
                       f'fill="{fill}" stroke="#cccccc" stroke-width="1"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(grid: ColorGrid, fmt: str = "ascii") -> str:
    """``ascii``: one glyph per cell (``0-9a-z``); ``svg``: one square per cell."""
    if fmt == "ascii":
        if grid.k >= len(ASCII_GLYPHS):
            raise ValueError(f"ascii rendering supports k <= {len(ASCII_GLYPHS) - 1}")
        return _render_ascii(grid)
    if fmt == "svg":
        if grid.k > len(SVG_PALETTE):
            raise ValueError(f"svg rendering supports k <= {len(SVG_PALETTE)}")
        return _render_svg(grid)
    raise ValueError(f"unknown format {fmt!r}")
