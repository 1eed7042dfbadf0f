import random

import numpy as np
import pytest
from hypothesis import strategies as st

from mincorner.grid import ColorGrid


def random_grid(rng: random.Random, max_m: int, max_n: int, max_k: int,
                white_lo: float = 0.3, white_hi: float = 0.7, min_dim: int = 1) -> ColorGrid:
    m, n, k = rng.randint(min_dim, max_m), rng.randint(min_dim, max_n), rng.randint(1, max_k)
    p = rng.uniform(white_lo, white_hi)
    cells = [[0 if rng.random() < p else rng.randint(1, k) for _ in range(n)] for _ in range(m)]
    return ColorGrid(np.array(cells, dtype=np.int16).reshape(m, n), k)


@st.composite
def grids(draw, max_m=4, max_n=4, max_k=3, min_dim=1):
    k = draw(st.integers(1, max_k))
    m = draw(st.integers(min_dim, max_m))
    n = draw(st.integers(min_dim, max_n))
    cells = draw(st.lists(st.lists(st.integers(0, k), min_size=n, max_size=n), min_size=m, max_size=m))
    return ColorGrid(np.array(cells, dtype=np.int16).reshape(m, n), k)


@pytest.fixture
def rng():
    return random.Random(20240611)
