import itertools

import numpy as np
import pytest

from mincorner.exact import optimal_value, solve_exact
from mincorner.grid import ColorGrid, count_corners, count_corners_color, internal_corners_color
from mincorner.reduction import (
    BLUE,
    BOTTOM_OUTLETS,
    GADGET_COLS,
    GADGET_ROWS,
    RED,
    TOP_OUTLETS,
    Clause,
    Embedding,
    MonotoneFormula,
    build_clause_gadget,
    build_instance,
    build_variable_gadget,
    build_witness,
    clause_gadget_probe,
    extract_assignment,
    gadget_state,
    majority_fill,
    parse_embedding,
    parse_formula,
    restricted_to_general,
    satisfying_assignments,
)
from mincorner.xp import decide

RESTRICT = dict(allowed={0, BLUE}, colors={BLUE})


def restricted_opt(g):
    return optimal_value(g, {0, BLUE}, colors={BLUE})


def test_variable_gadget():
    g = build_variable_gadget()
    assert g.shape == (GADGET_ROWS, GADGET_COLS)
    assert restricted_opt(g) == 18
    for value in (True, False):
        state = g.with_cells(gadget_state(value))
        assert count_corners_color(state, BLUE) == 18
    true_state = gadget_state(True)
    assert all(true_state[0, c] == BLUE for c in TOP_OUTLETS)
    assert all(true_state[-1, c] != BLUE for c in BOTTOM_OUTLETS)


def test_clause_gadget_fragment():
    g = build_clause_gadget(4, "+", outlets=(0, 3))
    assert g.cells[1, 1] == BLUE
    assert g.cells[2].tolist().count(0) == 2
    neg = build_clause_gadget(4, "-", outlets=(0, 3))
    assert neg.cells.tolist() == g.cells[::-1].tolist()
    assert restricted_opt(build_clause_gadget(3)) == 4
    with pytest.raises(ValueError):
        build_clause_gadget(0)
    with pytest.raises(ValueError):
        build_clause_gadget(3, outlets=(5,))


@pytest.mark.parametrize("polarity", ["+", "-"])
def test_clause_probe_constants(polarity):
    g, stubs = clause_gadget_probe(5, (0, 4), (), polarity)
    assert restricted_opt(g) - stubs == 4
    for colored in [(0,), (4,), (0, 4)]:
        g, stubs = clause_gadget_probe(5, (0, 4), colored, polarity)
        assert restricted_opt(g) - stubs == 2
    with pytest.raises(ValueError):
        clause_gadget_probe(5, (0, 1), (0,), polarity)


def _formula(pos, neg):
    return MonotoneFormula(2, (Clause(True, pos), Clause(False, neg)))


def test_instance_layout():
    f = _formula((1, 2), (2,))
    inst = build_instance(f, Embedding((1, 2), (1, -1)))
    assert inst.budget == 18 * 2 + 2 * 2
    m, n = inst.grid.shape
    assert (m, n) == (2 + GADGET_ROWS + 2, 2 * GADGET_COLS)
    assert all(inst.grid.cells[i, j] == RED for i in (0, m - 1) for j in (0, n - 1))
    assert inst.outlet_map[0] == ((1, 7), (2, GADGET_COLS + 1))


def test_budget_formula_small():
    f = MonotoneFormula(2, (Clause(True, (1, 2)),))
    assert build_instance(f, Embedding((1, 2), (1,))).budget == 38


def test_round_trip_and_witness_tightness():
    f = _formula((1, 2), (1, 2))
    inst = build_instance(f, Embedding((2, 1), (1, -1)))
    for a in satisfying_assignments(f):
        w = build_witness(inst, a)
        assert count_corners_color(w, BLUE) == inst.budget
        back = extract_assignment(inst, w)
        assert f.satisfied_by(back)
        assert back == a


def test_extract_rejects_over_budget():
    f = _formula((1,), (2,))
    inst = build_instance(f, Embedding((1, 2), (1, -1)))
    with pytest.raises(ValueError):
        extract_assignment(inst, inst.grid)  # nothing colored: every cell isolated


def test_nested_levels_and_three_variables():
    f = MonotoneFormula(3, (Clause(True, (1, 3)), Clause(True, (1, 2)), Clause(False, (2, 3))))
    inst = build_instance(f, Embedding((1, 2, 3), (2, 1, -1)))
    res = solve_exact(inst.grid, {0, BLUE}, colors={BLUE})
    assert bool(satisfying_assignments(f)) == (res.optimum <= inst.budget)
    assert f.satisfied_by(extract_assignment(inst, res.extension))


def test_collisions_and_validation():
    f = MonotoneFormula(3, (Clause(True, (1, 3)), Clause(True, (2,))))
    with pytest.raises(ValueError):
        # the short clause sits above the long one, so its pathway crosses the line
        build_instance(f, Embedding((1, 2, 3), (1, 2)))
    with pytest.raises(ValueError):
        build_instance(f, Embedding((1, 2, 3), (-1, 1)))
    with pytest.raises(ValueError):
        MonotoneFormula(1, (Clause(True, (1, 1)),))
    with pytest.raises(ValueError):
        MonotoneFormula(1, tuple(Clause(True, (1,)) for _ in range(4)))
    two = MonotoneFormula(1, (Clause(True, (1,)), Clause(True, (1,))))
    build_instance(two, Embedding((1,), (1, 2)))
    three = MonotoneFormula(1, tuple(Clause(True, (1,)) for _ in range(3)))
    with pytest.raises(ValueError):
        # outlet column 1 puts the line's blue end on a grid corner
        build_instance(three, Embedding((1,), (1, 2, 3)))


def test_restricted_to_general():
    g = ColorGrid.from_rows([[2, 0, 2], [2, 1, 2]], k=2)
    assert restricted_to_general(g, 38) == (g, 80)
    with pytest.raises(ValueError):
        restricted_to_general(ColorGrid.from_rows([[1, 0, 2]], k=2), 3)


def test_transform_equivalence_tiny():
    rng = np.random.default_rng(1)
    checked = 0
    for _ in range(200):
        m, n = rng.integers(2, 4, size=2)
        cells = rng.choice([0, 1, 2], size=(m, n), p=[0.4, 0.3, 0.3])
        cells[0, 0] = cells[0, -1] = cells[-1, 0] = cells[-1, -1] = 2
        g = ColorGrid(cells, 2)
        r = restricted_opt(g)
        for ell in range(0, 20, 2):
            _, b = restricted_to_general(g, ell)
            assert (r <= ell) == (optimal_value(g) <= b)
            checked += 1
    assert checked


def test_majority_fill_never_worse():
    rng = np.random.default_rng(2)
    for _ in range(300):
        m, n = rng.integers(1, 5, size=2)
        cells = rng.choice([0, 1, 2], size=(m, n))
        cells[0, 0] = cells[0, -1] = cells[-1, 0] = cells[-1, -1] = 2
        g = ColorGrid(cells, 2)
        h = majority_fill(g)
        assert not (h.cells == 0).any()
        assert count_corners(h) <= count_corners(g)
        assert internal_corners_color(h, 1) == internal_corners_color(h, 2)


FORMULA = """# two clauses
p mono3 2 2
+ 1 2
- 2
"""
EMBED = """pi: 1 2
lambda: 1 1
lambda: 2 -1
"""


def test_parsers():
    f = parse_formula(FORMULA)
    assert f == _formula((1, 2), (2,))
    e = parse_embedding(EMBED, 2)
    assert e == Embedding((1, 2), (1, -1))
    with pytest.raises(ValueError):
        parse_formula("p mono3 2 3\n+ 1\n")
    with pytest.raises(ValueError):
        parse_formula("p cnf 2 1\n+ 1\n")
    with pytest.raises(ValueError):
        parse_embedding("pi: 1 2\n", 1)
    with pytest.raises(ValueError):
        parse_embedding("pi: 1 2\nlambda: 5 1\n", 1)


def test_restricted_decide_on_instance():
    f = _formula((1,), (1,))
    inst = build_instance(f, Embedding((1, 2), (1, -1)))
    assert not decide(inst.grid, inst.budget, **RESTRICT, method="exact")
    assert decide(inst.grid, inst.budget + 2, **RESTRICT, method="exact")


def _first_embedding(f):
    for pi in itertools.permutations(range(1, f.num_vars + 1)):
        for lv in itertools.product((1, 2), repeat=len(f.clauses)):
            levels = tuple(v if c.positive else -v for v, c in zip(lv, f.clauses))
            try:
                return build_instance(f, Embedding(pi, levels))
            except ValueError:
                pass
    return None


def test_all_small_formulas():
    """Every formula on <= 3 variables and <= 2 clauses that has an embedding."""
    unembeddable = []
    for nv in (1, 2, 3):
        subsets = [s for r in (1, 2, 3) for s in itertools.combinations(range(1, nv + 1), r)]
        clauses = [Clause(p, s) for p in (True, False) for s in subsets]
        for cs in [()] + [(c,) for c in clauses] + list(itertools.combinations_with_replacement(clauses, 2)):
            f = MonotoneFormula(nv, cs)
            inst = _first_embedding(f)
            if inst is None:
                unembeddable.append(cs)
                continue
            sat = bool(satisfying_assignments(f))
            assert (restricted_opt(inst.grid) <= inst.budget) == sat, cs
    # the same 3-variable clause twice on one side: the outer leg to the middle variable must cross
    assert unembeddable == [(Clause(p, (1, 2, 3)),) * 2 for p in (True, False)]
