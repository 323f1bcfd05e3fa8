"""Times the compiled grid kernel against the pure-numpy twin.

The two implementations are required to agree bitwise, so this is purely a
speed comparison.  Run from the repository root:

    python3 benchmarks/bench_grid.py [--repeats 5]
"""
import argparse
import time

import numpy as np

from attrnoise._kernels._grid_py import risk_surface_kernel as numpy_kernel
from attrnoise.solvers import GridSpec

try:
    from attrnoise._kernels._grid_cy import risk_surface_kernel as cython_kernel
except ImportError:
    cython_kernel = None


def make_inputs(rng, num_atoms, step):
    axis = GridSpec.square(step=step).axis(0)
    x1 = rng.integers(0, 2, num_atoms) * 2.0 - 1.0
    x2 = rng.integers(0, 2, num_atoms) * 2.0 - 1.0
    y = rng.integers(0, 2, num_atoms) * 2.0 - 1.0
    w = rng.random(num_atoms)
    w /= w.sum()
    return axis, axis, x1, x2, 1.0, y, w


def best_of(repeats, fn, *args):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    cases = [
        ("default grid, 4 atoms", 4, 0.1),
        ("default grid, 8 atoms", 8, 0.1),
        ("default grid, 64 atoms", 64, 0.1),
        ("fine grid,    8 atoms", 8, 0.01),
        ("fine grid,   64 atoms", 64, 0.01),
    ]
    header = f"{'case':<26} {'numpy':>10} {'cython':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, num_atoms, step in cases:
        inputs = make_inputs(rng, num_atoms, step)
        t_np = best_of(args.repeats, numpy_kernel, *inputs)
        if cython_kernel is None:
            print(f"{name:<26} {t_np * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>8}")
            continue
        t_cy = best_of(args.repeats, cython_kernel, *inputs)
        a = numpy_kernel(*inputs)
        b = cython_kernel(*inputs)
        assert np.array_equal(a, b), "backends diverged"
        print(f"{name:<26} {t_np * 1e3:>8.2f}ms {t_cy * 1e3:>8.2f}ms "
              f"{t_np / t_cy:>7.1f}x")
    if cython_kernel is None:
        print("\ncompiled kernel not available; showing numpy only")


if __name__ == "__main__":
    main()
