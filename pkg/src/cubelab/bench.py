"""Benchmark the numba kernels against their pure-numpy fallbacks.

Run as `cubelab bench` or `python -m cubelab.bench`.  Both backends must
produce identical outputs; this only measures the speed gap on inputs
shaped like the verification workload.
"""

from __future__ import annotations

import time

import numpy as np

from . import kernels


def _time(fn, *args, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(repeat: int = 3) -> None:
    if kernels.njit is None:
        print("numba unavailable; nothing to compare")
        return

    rng = np.random.default_rng(0)
    n = 22
    table = rng.integers(0, 2, size=1 << n).astype(np.uint8)
    ints = table.astype(np.int64)
    weights = rng.integers(1, 1 << 10, size=600).astype(np.int64)
    small_weights = rng.integers(1, 1 << 6, size=n).astype(np.int64)

    cases = [
        ("walsh transform (n=22)",
         lambda: kernels.fwht_numpy(ints.copy()),
         lambda: kernels._fwht_nb(ints.copy())),
        ("signed subset-sum DP (600 weights)",
         lambda: kernels.signed_sum_counts_numpy(weights),
         lambda: kernels._signed_sum_counts_nb(weights)),
        ("dot values (n=22)",
         lambda: kernels.dot_values_numpy(small_weights),
         lambda: kernels._dot_values_nb(small_weights)),
        ("influence counts (n=22)",
         lambda: kernels.influence_counts_numpy(table, n),
         lambda: kernels._influence_counts_nb(table, n)),
        ("boundary scan (n=22)",
         lambda: kernels.boundary_counts_numpy(table, n),
         lambda: kernels._boundary_counts_nb(table, n)),
        ("monotonicity audit (n=22)",
         lambda: kernels.monotone_violations_numpy(table, n),
         lambda: kernels._monotone_violations_nb(table, n)),
    ]

    print(f"{'kernel':38s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    for name, np_fn, nb_fn in cases:
        nb_fn()  # compile outside the timed region
        t_np = _time(np_fn, repeat=repeat)
        t_nb = _time(nb_fn, repeat=repeat)
        print(f"{name:38s} {t_np * 1e3:9.1f}ms {t_nb * 1e3:9.1f}ms "
              f"{t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
