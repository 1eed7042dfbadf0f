import random

from hypothesis import given, settings

from mincorner.approx import approx_extension, approx_value
from mincorner.exact import optimal_value
from mincorner.grid import ColorGrid, count_corners, eta, is_extension, merge_range, row_as_grid

from conftest import grids, random_grid

G = ColorGrid.from_rows


def test_examples():
    assert approx_value(ColorGrid.white(3, 3)) == 0
    assert approx_value(G([[1, 0], [0, 1]])) == 4
    assert approx_value(G([[1, 0], [2, 0]])) == 8
    r = approx_extension(G([[1, 0], [0, 1]]))
    assert r.extension.tolist() == [[1, 1], [1, 1]]
    assert r.block_boundaries == (2,)
    assert count_corners(r.extension) == 4
    assert approx_value(ColorGrid.white(0, 2)) == 0


@settings(max_examples=150, deadline=None)
@given(grids(max_m=4, max_n=4, max_k=3))
def test_blocks_are_merged_sweeps(g):
    r = approx_extension(g)
    assert is_extension(g, r.extension, range(g.k + 1))
    assert count_corners(r.extension) <= r.value
    start = 1
    for end in r.block_boundaries:
        block = eta(merge_range(g, start, end))
        for i in range(start, end + 1):
            assert r.extension.row(i) == block
        start = end + 1
    assert start == g.m + 1


@settings(max_examples=100, deadline=None)
@given(grids(max_m=4, max_n=4, max_k=3))
def test_trivial_split_monotone(g):
    prefix = [approx_value(ColorGrid(g.cells[:i], g.k)) for i in range(g.m + 1)]
    for i in range(1, g.m + 1):
        assert prefix[i] <= prefix[i - 1] + count_corners(row_as_grid(eta(g.row(i)), g.k))


def test_work_is_quadratic_in_rows():
    rng = random.Random(5)
    for _ in range(20):
        g = random_grid(rng, 8, 4, 3)
        r = approx_extension(g)
        assert r.work <= g.m * (g.m + 1) // 2


def test_bound_and_both_orientations():
    rng = random.Random(9)
    for _ in range(100):
        g = random_grid(rng, 4, 4, 3)
        opt = optimal_value(g)
        a = approx_extension(g)
        b = approx_extension(g, both_orientations=True)
        assert opt <= b.value <= a.value <= opt * opt / 2 or (opt == 0 and a.value == 0)
        assert is_extension(g, b.extension, range(g.k + 1))
        assert count_corners(b.extension) <= b.value
