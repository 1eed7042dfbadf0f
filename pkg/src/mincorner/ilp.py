"""Integer program for minimum-corner extensions: build, export, check.

Variables live on the padded grid: ``x_c_i_j`` is 1 when padded cell
``(i, j)`` has color ``c`` and ``y_c_i_j`` bounds the ``c``-corners of the
window whose top-left cell is ``(i, j)``. Constraint families:

* ``one``: at most one color per cell, none on the padding;
* ``pos`` / ``neg``: ``+-lambda(c, i, j) <= y_c_i_j``;
* ``fix``: pre-colored cells keep their color.

No solver is bundled; ``export_lp`` writes CPLEX LP text for any external one.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .grid import ColorGrid

__all__ = ["Constraint", "IlpModel", "build_model", "export_lp", "parse_lp", "evaluate_extension"]


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[tuple[int, str], ...]
    sense: str  # "<=" or ">="
    rhs: int


@dataclass(frozen=True)
class IlpModel:
    m: int
    n: int
    k: int
    x_vars: tuple[str, ...]
    y_vars: tuple[str, ...]
    constraints: tuple[Constraint, ...]

    @property
    def objective(self) -> tuple[tuple[int, str], ...]:
        return tuple((1, y) for y in self.y_vars)


def xname(c: int, i: int, j: int) -> str:
    return f"x_{c}_{i}_{j}"


def yname(c: int, i: int, j: int) -> str:
    return f"y_{c}_{i}_{j}"


def _lam(c, i, j):
    return ((1, xname(c, i, j)), (1, xname(c, i + 1, j + 1)),
            (-1, xname(c, i, j + 1)), (-1, xname(c, i + 1, j)))


def build_model(grid: ColorGrid) -> IlpModel:
    m, n, k = grid.m, grid.n, grid.k
    colors = range(1, k + 1)
    xs = tuple(xname(c, i, j) for c in colors for i in range(m + 2) for j in range(n + 2))
    ys = tuple(yname(c, i, j) for c in colors for i in range(m + 1) for j in range(n + 1))
    cons: list[Constraint] = []
    for i in range(m + 2):
        for j in range(n + 2):
            inside = 1 <= i <= m and 1 <= j <= n
            cons.append(Constraint(f"one_{i}_{j}", tuple((1, xname(c, i, j)) for c in colors),
                                   "<=", int(inside)))
    for sign, tag in ((1, "pos"), (-1, "neg")):
        for c in colors:
            for i in range(m + 1):
                for j in range(n + 1):
                    terms = tuple((sign * a, v) for a, v in _lam(c, i, j)) + ((-1, yname(c, i, j)),)
                    cons.append(Constraint(f"{tag}_{c}_{i}_{j}", terms, "<=", 0))
    for c in colors:
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                cons.append(Constraint(f"fix_{c}_{i}_{j}", ((1, xname(c, i, j)),), ">=",
                                       int(grid.cells[i - 1, j - 1] == c)))
    return IlpModel(m, n, k, xs, ys, tuple(cons))


def _expr(terms) -> str:
    parts = []
    for a, v in terms:
        sign = "-" if a < 0 else "+"
        coef = "" if abs(a) == 1 else f"{abs(a)} "
        parts.append(f"{sign} {coef}{v}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def _wrap(prefix: str, body: str, width: int = 240) -> list[str]:
    out, line = [], prefix
    for tok in body.split(" "):
        if len(line) + len(tok) + 1 > width and line.strip():
            out.append(line.rstrip())
            line = "   "
        line += tok + " "
    out.append(line.rstrip())
    return out


def export_lp(model: IlpModel) -> str:
    """CPLEX LP text; ordering is fixed so identical models give identical bytes."""
    lines = [f"\\ min-corner ILP m={model.m} n={model.n} k={model.k}", "Minimize"]
    lines += _wrap(" obj: ", _expr(model.objective))
    lines.append("Subject To")
    for con in model.constraints:
        lines += _wrap(f" {con.name}: ", f"{_expr(con.terms)} {con.sense} {con.rhs}")
    lines.append("Bounds")
    lines += [f" 0 <= {y}" for y in model.y_vars]
    lines.append("Binaries")
    lines += _wrap(" ", " ".join(model.x_vars))
    lines.append("Generals")
    lines += _wrap(" ", " ".join(model.y_vars))
    lines.append("End")
    return "\n".join(lines) + "\n"


_SECTIONS = {"minimize", "subject to", "bounds", "binaries", "generals", "end"}


def parse_lp(text: str) -> dict[str, int]:
    """Count what an LP export declares: constraints, binaries, generals, objective terms."""
    section = None
    counts = {"constraints": 0, "binaries": 0, "generals": 0, "objective_terms": 0}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        low = line.lower()
        if low in _SECTIONS:
            section = low
            continue
        if section == "subject to" and re.match(r"^[A-Za-z_][\w]*:", line):
            counts["constraints"] += 1
        elif section == "minimize":
            counts["objective_terms"] += len(re.findall(r"\by_\d+_\d+_\d+\b", line))
        elif section == "binaries":
            counts["binaries"] += len(line.split())
        elif section == "generals":
            counts["generals"] += len(line.split())
    return counts


def evaluate_extension(grid: ColorGrid, extension: ColorGrid) -> tuple[bool, int]:
    """Set ``x`` from ``extension`` and ``y`` tightly, then check every constraint.

    Returns feasibility and the objective value, which equals the
    extension's corner count.
    """
    if grid.shape != extension.shape:
        raise ValueError(f"dimension mismatch: {grid.shape} vs {extension.shape}")
    m, n, k = grid.m, grid.n, grid.k
    pad = np.zeros((m + 2, n + 2), dtype=np.int16)
    pad[1:-1, 1:-1] = extension.cells
    x = np.stack([(pad == c) for c in range(1, k + 1)]).astype(np.int64)  # (k, m+2, n+2)
    lam = x[:, :-1, :-1] + x[:, 1:, 1:] - x[:, :-1, 1:] - x[:, 1:, :-1]
    y = np.abs(lam)
    gamma = np.zeros((m + 2, n + 2), dtype=np.int64)
    gamma[1:-1, 1:-1] = 1
    ok = bool((x.sum(axis=0) <= gamma).all())
    ok &= bool((lam <= y).all() and (-lam <= y).all())
    base = np.stack([(grid.cells == c) for c in range(1, k + 1)]).astype(np.int64)
    ok &= bool((x[:, 1:-1, 1:-1] >= base).all())
    ok &= bool((extension.cells <= k).all())  # colors beyond k have no variable
    return ok, int(y.sum())
