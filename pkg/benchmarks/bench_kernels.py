"""Compiled vs numpy Poisson sums, plus the FFT radial-section path for scale.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from ophardy import _core
from ophardy.gallery import make_rotation_symbol
from ophardy.grid import CircleGrid, PoissonExtension, unit_roots
from ophardy.transforms import radial_section

CASES = [
    # (evaluation points, quadrature nodes, columns)
    (5, 4096, 4),
    (64, 4096, 4),
    (256, 16384, 1),
    (1024, 32768, 8),
]


def bench_sum(nz, nq, m, repeat):
    rng = np.random.default_rng(0)
    zetas = 0.95 * unit_roots(nz) * np.exp(0.1j)
    nodes = unit_roots(nq)
    weights = np.full(nq, 1.0 / nq)
    values = rng.standard_normal((nq, m)) + 1j * rng.standard_normal((nq, m))
    out = {}
    impls = {"numpy": _core.python_poisson_sum}
    if _core.compiled_poisson_sum is not None:
        impls["cython"] = _core.compiled_poisson_sum
    ref = None
    for name, fn in impls.items():
        t = min(timeit.repeat(lambda: fn(zetas, nodes, weights, values), number=1, repeat=repeat))
        res = fn(zetas, nodes, weights, values)
        ref = res if ref is None else ref
        out[name] = (t, float(np.max(np.abs(res - ref))))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"backend selected at import: {_core.BACKEND}")
    print(f"{'points':>7} {'nodes':>7} {'cols':>5} {'numpy [ms]':>11} {'cython [ms]':>12} {'speedup':>8} {'max diff':>10}")
    for nz, nq, m in CASES:
        res = bench_sum(nz, nq, m, args.repeat)
        t_np = res["numpy"][0]
        if "cython" in res:
            t_cy, diff = res["cython"]
            print(f"{nz:7d} {nq:7d} {m:5d} {1e3 * t_np:11.2f} {1e3 * t_cy:12.2f} {t_np / t_cy:8.2f} {diff:10.1e}")
        else:
            print(f"{nz:7d} {nq:7d} {m:5d} {1e3 * t_np:11.2f} {'n/a':>12}")

    print("\nradial section via polyphase FFT (rotation symbol d=4, 4096 nodes)")
    ext = PoissonExtension(make_rotation_symbol(4))
    grid = CircleGrid(4096)
    for K in (10, 12, 14):
        r = 1.0 - 2.0 ** -K
        t = min(timeit.repeat(lambda: radial_section(ext, r, grid), number=1, repeat=max(1, args.repeat // 2)))
        print(f"  r = 1 - 2^-{K}: {1e3 * t:8.1f} ms")


if __name__ == "__main__":
    main()
