import numpy as np
import pytest

from mincorner import _pykernels, kernels

pytestmark = pytest.mark.skipif("compiled" not in kernels.backends(),
                                reason="compiled extension not built")

INF = kernels.INF


@pytest.fixture
def gen():
    return np.random.default_rng(11)


def _ck():
    return kernels.backends()["compiled"]


def _rows(gen, count, n, k):
    return gen.integers(0, k + 1, size=(count, n)).astype(np.int16)


def test_backend_selected():
    assert kernels.BACKEND == "compiled"


def test_pair_corners_agrees(gen):
    for _ in range(100):
        n, k = int(gen.integers(1, 6)), int(gen.integers(1, 4))
        top, bot = _rows(gen, int(gen.integers(1, 12)), n, k), _rows(gen, int(gen.integers(1, 12)), n, k)
        for mask in (kernels.color_mask(k), kernels.color_mask(k, {1})):
            np.testing.assert_array_equal(_pykernels.pair_corners(top, bot, mask),
                                          _ck().pair_corners(top, bot, mask))


def test_pair_min_agrees(gen):
    for _ in range(100):
        n, k = int(gen.integers(1, 5)), int(gen.integers(1, 4))
        prev, cur = _rows(gen, int(gen.integers(1, 20)), n, k), _rows(gen, int(gen.integers(1, 20)), n, k)
        cost = gen.integers(0, 30, size=prev.shape[0]).astype(np.int64)
        cost[gen.random(cost.size) < 0.2] = INF
        mask = kernels.color_mask(k)
        a, b = _pykernels.pair_min(cost, prev, cur, mask), _ck().pair_min(cost, prev, cur, mask)
        np.testing.assert_array_equal(a[0], b[0])
        np.testing.assert_array_equal(a[1], b[1])


def test_sweep_step_agrees(gen):
    for _ in range(50):
        L, A, B, C, R, D = (int(x) for x in gen.integers(1, 4, size=6))
        old = gen.integers(0, 50, size=(L, A, B, C, R)).astype(np.int64)
        old[gen.random(old.shape) < 0.1] = INF
        cost = gen.integers(0, 5, size=(A, B, C, D)).astype(np.int64)
        np.testing.assert_array_equal(_pykernels.sweep_step(old, cost), _ck().sweep_step(old, cost))


def test_grid_corners_agrees(gen):
    for _ in range(100):
        m, n, k = (int(x) for x in gen.integers(1, 6, size=3))
        pad = np.zeros((m + 2, n + 2), dtype=np.int16)
        pad[1:-1, 1:-1] = _rows(gen, m, n, k)
        mask = kernels.color_mask(k)
        assert _pykernels.grid_corners(pad, mask) == _ck().grid_corners(pad, mask)


def test_pure_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    code = ("from mincorner import kernels; from mincorner.grid import ColorGrid; "
            "from mincorner.exact import optimal_value; "
            "print(kernels.BACKEND, optimal_value(ColorGrid.from_rows([[1, 0, 1], [0, 2, 0]], k=2)))")
    out = {}
    for pure in ("0", "1"):
        res = subprocess.run([sys.executable, "-c", code], env=dict(os.environ, MINCORNER_PURE=pure),
                             capture_output=True, text=True, check=True)
        out[pure] = res.stdout.split()
    assert out["1"][0] == "python" and out["0"][0] == "compiled"
    assert out["0"][1] == out["1"][1]
