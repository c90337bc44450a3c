"""Wall-clock comparison of the numba kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``. Each kernel is called
once untimed on the numba path so JIT compilation is excluded, then the
best of ``--repeat`` runs is reported for both backends together with a
check that they produced the same result.
"""

import argparse
import time

import numpy as np

from sic import _accel, kernels
from sic.builders import clustering


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def compare(name, fn, repeat, same):
    results = {}
    for flag in (True, False):
        if flag and not _accel.HAVE_NUMBA:
            continue
        _accel.set_numba(flag)
        if flag:
            fn()  # compile
        results["numba" if flag else "numpy"] = best_of(fn, repeat)
    line = f"{name:<34}"
    for backend, (t, _) in results.items():
        line += f" {backend} {t * 1e3:9.2f} ms"
    if len(results) == 2:
        (t_nb, a), (t_np, b) = results["numba"], results["numpy"]
        line += f"   speedup {t_np / t_nb:5.1f}x   equal={same(a, b)}"
    print(line)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--draws", type=int, default=10**6)
    args = ap.parse_args()
    rng = np.random.default_rng(0)

    for K in (10, 50, 100):
        v = 10.0 - np.concatenate([[0.0], np.cumsum(rng.exponential(size=K) / (1 + np.arange(K)))])
        lams = rng.uniform(0.0, v[0] - v[1], args.draws)
        compare(
            f"count_argmin K={K} M={args.draws:.0e}",
            lambda: kernels.count_argmin(v, lams),
            args.repeat,
            np.array_equal,
        )

    pts = clustering.five_gaussians(seed=0).points
    for c in (5, 20, 50):
        init = pts[kernels.kmeanspp_indices(pts, 0, np.random.default_rng(c).random((c - 1, 8)))]
        compare(
            f"lloyd N={len(pts)} clusters={c}",
            lambda: kernels.lloyd(pts, init),
            args.repeat,
            lambda a, b: np.array_equal(a[0], b[0]),
        )
        u = np.random.default_rng(c).random((c - 1, 8))
        compare(
            f"greedy k-means++ clusters={c}",
            lambda: kernels.kmeanspp_indices(pts, 0, u),
            args.repeat,
            np.array_equal,
        )


if __name__ == "__main__":
    main()
