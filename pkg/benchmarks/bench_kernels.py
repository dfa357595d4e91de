"""Compare the numba and numpy GF(p) row-reduction kernels.

Usage: python benchmarks/bench_kernels.py [--sizes 50 150 300] [--repeat 5]
"""
import argparse
import time

import numpy as np

from quarticstrata import _kernels
from quarticstrata.gfp import DEFAULT_PRIME


def bench(fn, a, p, repeat):
    best = float("inf")
    piv = None
    for _ in range(repeat):
        b = a.copy()
        t = time.perf_counter()
        piv = fn(b, p)
        best = min(best, time.perf_counter() - t)
    return best, len(piv)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 150, 300, 600])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    p = args.prime
    if _kernels.HAS_NUMBA:
        # compile outside the timed region
        _kernels.rref_nb(rng.integers(0, p, size=(4, 4)).astype(np.int64), p)
    print(f"{'size':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for n in args.sizes:
        a = rng.integers(0, p, size=(n, n + n // 2)).astype(np.int64)
        t_np, r_np = bench(_kernels.rref_np, a, p, args.repeat)
        if _kernels.HAS_NUMBA:
            t_nb, r_nb = bench(_kernels.rref_nb, a, p, args.repeat)
            assert r_np == r_nb
            print(f"{n:>6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f}")
        else:
            print(f"{n:>6} {t_np:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
