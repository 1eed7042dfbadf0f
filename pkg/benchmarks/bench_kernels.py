"""Compiled vs numpy kernels, then a full exact solve under each backend.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--quick]

The end-to-end part runs each backend in a child process, since the
backend is fixed when ``mincorner.kernels`` is first imported.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from mincorner import kernels

SOLVE_SNIPPET = """
import random, time
import numpy as np
from mincorner.grid import ColorGrid
from mincorner.exact import optimal_value
from mincorner import kernels
rng = random.Random(7)
grids = []
for _ in range({count}):
    cells = [[0 if rng.random() < 0.6 else rng.randint(1, 3) for _ in range({n})] for _ in range({m})]
    grids.append(ColorGrid(np.array(cells, dtype=np.int16), 3))
t = time.perf_counter()
for how in ("pairwise", "sweep"):
    total = sum(optimal_value(g, transition=how) for g in grids)
print(kernels.BACKEND, total, time.perf_counter() - t)
"""


def kernel_cases(rng, quick):
    P = 300 if quick else 1000
    n, k = 6, 3
    prev = rng.integers(0, k + 1, size=(P, n)).astype(np.int16)
    cur = rng.integers(0, k + 1, size=(P, n)).astype(np.int16)
    cost = rng.integers(0, 40, size=P).astype(np.int64)
    mask = kernels.color_mask(k)
    old = rng.integers(0, 100, size=(64, 4, 4, 4, 16)).astype(np.int64)
    wcost = rng.integers(0, 4, size=(4, 4, 4, 4)).astype(np.int64)
    pad = np.zeros((202, 202), dtype=np.int16)
    pad[1:-1, 1:-1] = rng.integers(0, k + 1, size=(200, 200))
    return {
        f"pair_corners {P}x{P}": lambda mod: mod.pair_corners(prev, cur, mask),
        f"pair_min {P}x{P}": lambda mod: mod.pair_min(cost, prev, cur, mask),
        "sweep_step 64x4x4x4x16": lambda mod: mod.sweep_step(old, wcost),
        "grid_corners 200x200": lambda mod: mod.grid_corners(pad, mask),
    }


def bench_kernels(repeat, quick):
    impls = kernels.backends()
    if "compiled" not in impls:
        print("compiled extension not built; only the numpy backend is timed")
    rng = np.random.default_rng(3)
    print(f"{'kernel':28s}" + "".join(f"{name:>12s}" for name in impls) + "   speedup")
    for label, fn in kernel_cases(rng, quick).items():
        times = {}
        for name, mod in impls.items():
            fn(mod)  # warm up
            times[name] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=repeat))
        row = f"{label:28s}" + "".join(f"{times[name] * 1e3:10.2f}ms" for name in impls)
        if "compiled" in times:
            row += f"   {times['python'] / times['compiled']:6.1f}x"
        print(row)


def bench_solve(quick):
    m, n, count = (4, 4, 20) if quick else (5, 5, 40)
    code = SOLVE_SNIPPET.format(count=count, m=m, n=n)
    print(f"\nexact solve of {count} random {m}x{n} grids, k=3, both transitions")
    for pure in ("0", "1"):
        env = dict(os.environ, MINCORNER_PURE=pure)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print(f"  {out[0]:9s} checksum={out[1]}  {float(out[2]):.2f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args()
    bench_kernels(args.repeat, args.quick)
    bench_solve(args.quick)


if __name__ == "__main__":
    main()
