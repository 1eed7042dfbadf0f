"""Hardness gadgets: monotone 3-bounded SAT to restricted corner complexity.

Colors are fixed: ``BLUE = 1`` is the restricted color c and ``RED = 2``
is the filler c'. A variable gadget is a 13 x 17 block. Its top-left and
bottom-right quadrants each hold a 3 x 3 lattice of blue cells joined by
white edges. Three L-shaped white corridors join the lattice columns of
the top-left quadrant to the lattice rows of the bottom-right one, and
three mirrored corridors join the top-left rows to the bottom-right
columns. An optimum uses one family: three L-shapes (true, reaching the
top outlets) or three mirrored shapes (false, reaching the bottom
outlets), at six blue corners each.

A clause is one blue cell followed by a white line to its right, two rows
per level above (positive) or below (negative) the gadget row, with a
white pathway from the line to one outlet per variable. Joining the line
to a colored outlet costs two blue corners; a lone clause cell costs four.
"""
from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import VerificationError
from .exact import optimal_value
from .grid import WHITE, ColorGrid, count_corners_color, internal_corners_color, is_extension

__all__ = [
    "BLUE",
    "RED",
    "GADGET_ROWS",
    "GADGET_COLS",
    "GADGET_CORNERS",
    "TOP_OUTLETS",
    "BOTTOM_OUTLETS",
    "Clause",
    "MonotoneFormula",
    "Embedding",
    "ReductionInstance",
    "build_variable_gadget",
    "variable_gadget_groups",
    "gadget_state",
    "build_clause_gadget",
    "clause_gadget_probe",
    "build_instance",
    "build_witness",
    "extract_assignment",
    "restricted_to_general",
    "majority_fill",
    "satisfying_assignments",
    "parse_formula",
    "parse_embedding",
]

BLUE, RED = 1, 2
GADGET_ROWS, GADGET_COLS = 13, 17
GADGET_CORNERS = 18
TOP_OUTLETS = (1, 4, 7)
BOTTOM_OUTLETS = (9, 12, 15)

# lattice geometry (gadget-local coordinates)
_TL_ROWS, _TL_COLS = (1, 3, 5), (1, 4, 7)
_BR_ROWS, _BR_COLS = (7, 9, 11), (9, 12, 15)


def _corridors() -> tuple[list[list[tuple[int, int]]], list[list[tuple[int, int]]]]:
    """White cells of the L corridors (true) and mirrored corridors (false), outermost first."""
    ls, gs = [], []
    for col, row in zip(_TL_COLS, _BR_ROWS[::-1]):
        ls.append([(r, col) for r in range(_TL_ROWS[-1] + 1, row + 1)]
                  + [(row, c) for c in range(col + 1, _BR_COLS[0])])
    for row, col in zip(_TL_ROWS, _BR_COLS[::-1]):
        gs.append([(row, c) for c in range(_TL_COLS[-1] + 1, col)]
                  + [(r, col) for r in range(row, _BR_ROWS[0])])
    return ls, gs


def _lattice_edges() -> list[list[tuple[int, int]]]:
    edges = []
    for rows, cols in ((_TL_ROWS, _TL_COLS), (_BR_ROWS, _BR_COLS)):
        for r in rows:
            for a, b in zip(cols, cols[1:]):
                edges.append([(r, c) for c in range(a + 1, b)])
        for c in cols:
            for a, b in zip(rows, rows[1:]):
                edges.append([(r, c) for r in range(a + 1, b)])
    return edges


def _raw_gadget() -> np.ndarray:
    g = np.full((GADGET_ROWS, GADGET_COLS), RED, dtype=np.int16)
    for rows, cols in ((_TL_ROWS, _TL_COLS), (_BR_ROWS, _BR_COLS)):
        for r in rows:
            for c in cols:
                g[r, c] = BLUE
    ls, gs = _corridors()
    for cells in _lattice_edges() + ls + gs:
        for r, c in cells:
            g[r, c] = WHITE
    for c in TOP_OUTLETS:
        g[0, c] = WHITE
    for c in BOTTOM_OUTLETS:
        g[GADGET_ROWS - 1, c] = WHITE
    return g


def gadget_state(value: bool) -> np.ndarray:
    """The gadget colored in its true (top outlets) or false (bottom outlets) state."""
    g = _raw_gadget()
    if value:
        for col, row in zip(_TL_COLS, _BR_ROWS[::-1]):
            for r in range(0, row + 1):
                g[r, col] = BLUE
            for c in range(col, _BR_COLS[-1] + 1):
                g[row, c] = BLUE
    else:
        for row, col in zip(_TL_ROWS, _BR_COLS[::-1]):
            for c in range(_TL_COLS[0], col + 1):
                g[row, c] = BLUE
            for r in range(row, GADGET_ROWS):
                g[r, col] = BLUE
    return g


def variable_gadget_groups() -> list[list[tuple[int, int]]]:
    """Cell groups that are colored all-or-nothing in the constrained oracle mode."""
    ls, gs = _corridors()
    return _lattice_edges() + ls + gs


def _outlet_sides(cells: np.ndarray) -> tuple[bool, bool]:
    top = any(cells[0, c] == BLUE for c in TOP_OUTLETS)
    bottom = any(cells[GADGET_ROWS - 1, c] == BLUE for c in BOTTOM_OUTLETS)
    return top, bottom


@functools.lru_cache(maxsize=None)
def _verified_gadget() -> ColorGrid:
    grid = ColorGrid(_raw_gadget(), 2)
    opt = optimal_value(grid, {WHITE, BLUE}, colors={BLUE})
    if opt != GADGET_CORNERS:
        raise VerificationError(f"variable gadget optimum is {opt}, expected {GADGET_CORNERS}")
    for value in (True, False):
        state = grid.with_cells(gadget_state(value))
        if count_corners_color(state, BLUE) != GADGET_CORNERS:
            raise VerificationError(f"{value} state does not reach the gadget optimum")
    for t, b in itertools.product(TOP_OUTLETS, BOTTOM_OUTLETS):
        forced = np.array(grid.cells)
        forced[0, t] = forced[GADGET_ROWS - 1, b] = BLUE
        v = optimal_value(grid.with_cells(forced), {WHITE, BLUE}, colors={BLUE})
        if v <= GADGET_CORNERS:
            raise VerificationError(f"outlets {t} and {b} colored together cost only {v}")
    return grid


def build_variable_gadget(verify: bool = True) -> ColorGrid:
    """The 13 x 17 variable gadget; ``verify`` machine-checks its optimum and outlet rule."""
    return _verified_gadget() if verify else ColorGrid(_raw_gadget(), 2)


def build_clause_gadget(span: int, polarity: str = "+",
                        outlets: Sequence[int] | None = None) -> ColorGrid:
    """A clause fragment of three rows: filler, the clause line, the border with openings.

    The line is a blue cell followed by ``span`` white cells; ``outlets``
    are offsets into those white cells (default: the last one). Negative
    clauses are mirrored so the openings face up.
    """
    if span < 1:
        raise ValueError(f"clause span must be >= 1, got {span}")
    outlets = (span - 1,) if outlets is None else tuple(outlets)
    if not outlets or any(not 0 <= o < span for o in outlets):
        raise ValueError(f"outlet offsets {outlets} must lie in [0, {span - 1}]")
    g = np.full((3, span + 3), RED, dtype=np.int16)
    g[1, 1] = BLUE
    g[1, 2:span + 2] = WHITE
    for o in outlets:
        g[2, o + 2] = WHITE
    if polarity == "-":
        g = g[::-1]
    elif polarity != "+":
        raise ValueError(f"polarity must be '+' or '-', got {polarity!r}")
    return ColorGrid(g, 2)


def clause_gadget_probe(span: int, outlets: Sequence[int], colored: Iterable[int],
                        polarity: str = "+") -> tuple[ColorGrid, int]:
    """A clause fragment plus one pathway row and a blue 2-cell stub under each ``colored`` outlet.

    Returns the grid and the blue corners of the stubs alone, so that the
    clause's own share is ``restricted optimum - stub corners``.
    """
    frag = np.array(build_clause_gadget(span, "+", outlets).cells)
    colored = set(colored)
    if not colored <= set(outlets):
        raise ValueError("colored outlets must be among the outlets")
    if any(b - a < 2 for a, b in zip(sorted(outlets), sorted(outlets)[1:])):
        raise ValueError("outlets must be at least two columns apart so stubs stay separate")
    extra = np.full((4, frag.shape[1]), RED, dtype=np.int16)
    for o in outlets:
        extra[0, o + 2] = WHITE
    for o in colored:
        extra[1:3, o + 2] = BLUE
    g = np.vstack([frag, extra])
    if polarity == "-":
        g = g[::-1]
    return ColorGrid(g, 2), 4 * len(colored)


# --- formulas and embeddings ---------------------------------------------


@dataclass(frozen=True)
class Clause:
    positive: bool
    variables: tuple[int, ...]


@dataclass(frozen=True)
class MonotoneFormula:
    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        pos = [0] * (self.num_vars + 1)
        neg = [0] * (self.num_vars + 1)
        for idx, cl in enumerate(self.clauses, 1):
            if not 1 <= len(cl.variables) <= 3:
                raise ValueError(f"clause {idx} has {len(cl.variables)} literals")
            if len(set(cl.variables)) != len(cl.variables):
                raise ValueError(f"clause {idx} repeats a variable")
            for v in cl.variables:
                if not 1 <= v <= self.num_vars:
                    raise ValueError(f"clause {idx} uses unknown variable {v}")
                (pos if cl.positive else neg)[v] += 1
        for v in range(1, self.num_vars + 1):
            if pos[v] > 3 or neg[v] > 3:
                raise ValueError(f"variable {v} occurs in more than three clauses of one sign")

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return all(any(assignment[v] == cl.positive for v in cl.variables) for cl in self.clauses)


@dataclass(frozen=True)
class Embedding:
    """Variable order ``pi`` (``pi[p]`` is the variable at position ``p``) and clause levels."""

    pi: tuple[int, ...]
    levels: tuple[int, ...]

    def check(self, formula: MonotoneFormula) -> None:
        if sorted(self.pi) != list(range(1, formula.num_vars + 1)):
            raise ValueError("pi must be a permutation of the variables")
        if len(self.levels) != len(formula.clauses):
            raise ValueError("need exactly one level per clause")
        for idx, (cl, lvl) in enumerate(zip(formula.clauses, self.levels), 1):
            if lvl == 0 or (lvl > 0) != cl.positive:
                raise ValueError(f"clause {idx}: level {lvl} does not match its polarity")


def satisfying_assignments(formula: MonotoneFormula) -> list[dict[int, bool]]:
    out = []
    for bits in itertools.product((False, True), repeat=formula.num_vars):
        a = dict(enumerate(bits, 1))
        if formula.satisfied_by(a):
            out.append(a)
    return out


@dataclass(frozen=True)
class ReductionInstance:
    grid: ColorGrid
    budget: int
    formula: MonotoneFormula
    embedding: Embedding
    gadget_origin: dict = field(compare=False)  # variable -> (row, col) of its gadget
    outlet_map: dict = field(compare=False)  # clause index -> ((variable, column), ...)
    clause_cells: dict = field(compare=False)  # clause index -> (blue cell, line row)


def build_instance(formula: MonotoneFormula, embedding: Embedding) -> ReductionInstance:
    """Assemble the restricted instance with budget ``18 n + 2 m``."""
    embedding.check(formula)
    n = formula.num_vars
    gpos = max([l for l in embedding.levels if l > 0], default=0)
    gneg = max([-l for l in embedding.levels if l < 0], default=0)
    top = 2 * gpos
    height, width = top + GADGET_ROWS + 2 * gneg, GADGET_COLS * n
    cells = np.full((height, width), RED, dtype=np.int16)
    owner = np.zeros((height, width), dtype=np.int32)  # 0 filler, >0 variable, <0 clause
    gadget = build_variable_gadget()
    origin = {}
    for p, v in enumerate(embedding.pi):
        col0 = GADGET_COLS * p
        cells[top:top + GADGET_ROWS, col0:col0 + GADGET_COLS] = gadget.cells
        owner[top:top + GADGET_ROWS, col0:col0 + GADGET_COLS] = v
        origin[v] = (top, col0)
    position = {v: p for p, v in enumerate(embedding.pi)}

    free = {v: {True: list(TOP_OUTLETS), False: list(BOTTOM_OUTLETS)} for v in range(1, n + 1)}
    outlet_map, clause_cells = {}, {}
    order = sorted(range(len(formula.clauses)), key=lambda i: (abs(embedding.levels[i]), i))
    for ci in order:
        cl, lvl = formula.clauses[ci], embedding.levels[ci]
        tag = -(ci + 1)
        vs = sorted(cl.variables, key=position.__getitem__)
        chosen = []
        for rank, v in enumerate(vs):
            avail = free[v][cl.positive]
            if not avail:
                raise ValueError(f"variable {v} has no free outlet for clause {ci + 1}")
            take = avail[-1] if rank == 0 else avail[0]
            avail.remove(take)
            chosen.append((v, origin[v][1] + take))
        if cl.positive:
            line = top - 2 * lvl
            path_rows = range(line + 1, top)
            outlet_row = top
        else:
            line = top + GADGET_ROWS - 1 + 2 * (-lvl)
            path_rows = range(top + GADGET_ROWS, line)
            outlet_row = top + GADGET_ROWS - 1
        cols = [c for _, c in chosen]
        new = [(line, min(cols) - 1, BLUE)]
        new += [(line, c, WHITE) for c in range(min(cols), max(cols) + 1)]
        new += [(r, c, WHITE) for c in cols for r in path_rows]
        for r, c, val in new:
            if owner[r, c] != 0 or cells[r, c] != RED:
                raise ValueError(f"clause {ci + 1} collides with another structure at ({r}, {c})")
            cells[r, c] = val
            owner[r, c] = tag
        outlets = {(outlet_row, c) for c in cols}
        for r, c, _ in new:
            for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                rr, cc = r + dr, c + dc
                if not (0 <= rr < height and 0 <= cc < width) or cells[rr, cc] == RED:
                    continue
                if owner[rr, cc] != tag and (rr, cc) not in outlets:
                    raise ValueError(f"clause {ci + 1} touches another structure at ({rr}, {cc})")
        outlet_map[ci] = tuple(chosen)
        clause_cells[ci] = ((line, min(cols) - 1), path_rows)
    grid = ColorGrid(cells, 2)
    if any(grid.cells[i, j] != RED for i in (0, height - 1) for j in (0, width - 1)):
        raise ValueError("embedding leaves a grid corner uncolored")
    return ReductionInstance(grid, 18 * n + 2 * len(formula.clauses), formula, embedding,
                             origin, outlet_map, clause_cells)


def build_witness(instance: ReductionInstance, assignment: Mapping[int, bool]) -> ColorGrid:
    """The budget-meeting extension induced by a satisfying assignment."""
    f = instance.formula
    if not f.satisfied_by(assignment):
        raise ValueError("assignment does not satisfy the formula")
    cells = np.array(instance.grid.cells)
    for v, (r0, c0) in instance.gadget_origin.items():
        cells[r0:r0 + GADGET_ROWS, c0:c0 + GADGET_COLS] = gadget_state(bool(assignment[v]))
    for ci, cl in enumerate(f.clauses):
        (line, blue_col), path_rows = instance.clause_cells[ci]
        v, col = next((v, c) for v, c in instance.outlet_map[ci] if assignment[v] == cl.positive)
        cells[line, blue_col:col + 1] = BLUE
        for r in path_rows:
            cells[r, col] = BLUE
    return instance.grid.with_cells(cells)


def extract_assignment(instance: ReductionInstance, extension: ColorGrid) -> dict[int, bool]:
    """Read a truth assignment off a within-budget restricted extension."""
    if not is_extension(instance.grid, extension, {WHITE, BLUE}):
        raise ValueError("not a valid {c, 0}-extension of the instance")
    cost = count_corners_color(extension, BLUE)
    if cost > instance.budget:
        raise ValueError(f"extension has {cost} blue corners, over budget {instance.budget}")
    out = {}
    for v, (r0, c0) in instance.gadget_origin.items():
        block = extension.cells[r0:r0 + GADGET_ROWS, c0:c0 + GADGET_COLS]
        _, bottom = _outlet_sides(block)
        out[v] = not bottom
    if not instance.formula.satisfied_by(out):
        raise VerificationError("extracted assignment does not satisfy the formula")
    return out


def _corner_cells(grid: ColorGrid) -> list[int]:
    m, n = grid.shape
    return [int(grid.cells[i, j]) for i in (0, m - 1) for j in (0, n - 1)]


def restricted_to_general(grid: ColorGrid, budget: int) -> tuple[ColorGrid, int]:
    """Map a restricted instance to a plain one: same grid, budget ``2 l + 4``."""
    if grid.m == 0 or grid.n == 0 or len(set(_corner_cells(grid))) != 1 or _corner_cells(grid)[0] == WHITE:
        raise ValueError("all four grid corners must share one non-white color")
    return grid, 2 * budget + 4


def majority_fill(grid: ColorGrid, c: int = BLUE, c2: int = RED) -> ColorGrid:
    """Fill every white cell with whichever of ``c``, ``c2`` has more internal corners (ties: ``c2``)."""
    if set(np.unique(grid.cells).tolist()) - {WHITE, c, c2}:
        raise ValueError("grid may only use white and the two given colors")
    fill = c2 if internal_corners_color(grid, c) <= internal_corners_color(grid, c2) else c
    return grid.with_cells(np.where(grid.cells == WHITE, fill, grid.cells))


# --- text formats -------------------------------------------------------------


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_formula(text: str) -> MonotoneFormula:
    """``p mono3 <n> <m>`` then one clause per line: ``+ 1 2 3`` or ``- 1 2``."""
    lines = list(_content_lines(text))
    if not lines:
        raise ValueError("empty formula file")
    no, head = lines[0]
    m = re.fullmatch(r"p\s+mono3\s+(\d+)\s+(\d+)", head)
    if not m:
        raise ValueError(f"line {no}: expected header 'p mono3 <n> <m>'")
    n_vars, n_clauses = int(m.group(1)), int(m.group(2))
    clauses = []
    for no, line in lines[1:]:
        parts = line.split()
        if parts[0] not in "+-" or len(parts) < 2:
            raise ValueError(f"line {no}: expected '+' or '-' followed by variables")
        try:
            vs = tuple(int(x) for x in parts[1:])
        except ValueError:
            raise ValueError(f"line {no}: variables must be integers") from None
        clauses.append(Clause(parts[0] == "+", vs))
    if len(clauses) != n_clauses:
        raise ValueError(f"header declares {n_clauses} clauses, found {len(clauses)}")
    return MonotoneFormula(n_vars, tuple(clauses))


def parse_embedding(text: str, num_clauses: int) -> Embedding:
    """``pi: <permutation>`` then ``lambda: <clause-index> <level>`` lines (1-based clauses)."""
    pi = None
    levels: dict[int, int] = {}
    for no, line in _content_lines(text):
        key, _, rest = line.partition(":")
        try:
            nums = [int(x) for x in rest.split()]
        except ValueError:
            raise ValueError(f"line {no}: expected integers after '{key}:'") from None
        if key.strip() == "pi":
            pi = tuple(nums)
        elif key.strip() == "lambda" and len(nums) == 2:
            if not 1 <= nums[0] <= num_clauses:
                raise ValueError(f"line {no}: clause index {nums[0]} out of range")
            levels[nums[0]] = nums[1]
        else:
            raise ValueError(f"line {no}: expected 'pi:' or 'lambda: <clause> <level>'")
    if pi is None:
        raise ValueError("embedding lacks a 'pi:' line")
    missing = [i for i in range(1, num_clauses + 1) if i not in levels]
    if missing:
        raise ValueError(f"no level given for clauses {missing}")
    return Embedding(pi, tuple(levels[i] for i in range(1, num_clauses + 1)))
