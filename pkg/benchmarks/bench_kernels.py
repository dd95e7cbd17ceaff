"""Compare the numba and numpy backends of the windowed-spread kernel.

    python3 benchmarks/bench_kernels.py [--n 20000] [--d 16] [--repeat 3]

Times full exact tables (all sizes 2..n) and default support sequences, and
checks both backends agree bit for bit.
"""
import argparse
import time

import numpy as np

from geomid import _kernels
from geomid.approx import default_support_sequence


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20_000)
    ap.add_argument("--d", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if _kernels.nb is None:
        raise SystemExit("numba is not installed; nothing to compare")
    cols = _kernels.sorted_columns(np.random.default_rng(args.seed).random((args.n, args.d)))
    cases = {
        "exact": np.arange(2, args.n + 1, dtype=np.int64),
        "support": default_support_sequence(args.n, 1000).astype(np.int64),
    }
    # compile outside the timed region
    _kernels.phi_at_sizes_numba(cols[:, :8], np.array([2], dtype=np.int64))

    print(f"n={args.n} d={args.d} threads={_kernels.nb.get_num_threads()}")
    print(f"{'sizes':>8} {'count':>7} {'numpy s':>9} {'numba s':>9} {'speedup':>8}")
    for name, sizes in cases.items():
        t_np, a = best_of(lambda: _kernels.phi_at_sizes_numpy(cols, sizes), args.repeat)
        t_nb, b = best_of(lambda: _kernels.phi_at_sizes_numba(cols, sizes), args.repeat)
        if a.tobytes() != b.tobytes():
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:>8} {len(sizes):>7} {t_np:>9.3f} {t_nb:>9.3f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
