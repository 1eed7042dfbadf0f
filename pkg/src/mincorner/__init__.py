"""Minimum-corner extensions of partially colored grids."""
from .approx import ApproxResult, approx_extension, approx_value
from .errors import ResourceLimitError, VerificationError
from .exact import SolveResult, optimal_value, solve_exact
from .grid import (
    BOTTOM,
    INFINITE,
    WHITE,
    ColorGrid,
    corners_between_rows,
    count_corners,
    count_corners_color,
    delta_c,
    eta,
    is_extension,
    merge_range,
    merge_rows,
    transpose,
)
from .kernelizer import kernelize, lift_solution, solve_fpt
from .oracle import brute_force_optimum, enumerate_optima
from .xp import decide

__all__ = [
    "ApproxResult",
    "BOTTOM",
    "ColorGrid",
    "INFINITE",
    "ResourceLimitError",
    "SolveResult",
    "VerificationError",
    "WHITE",
    "approx_extension",
    "approx_value",
    "brute_force_optimum",
    "corners_between_rows",
    "count_corners",
    "count_corners_color",
    "decide",
    "delta_c",
    "enumerate_optima",
    "eta",
    "is_extension",
    "kernelize",
    "lift_solution",
    "merge_range",
    "merge_rows",
    "optimal_value",
    "solve_exact",
    "solve_fpt",
    "transpose",
]

__version__ = "0.1.0"
