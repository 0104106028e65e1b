"""Benchmark the two kernel routes against each other.

The package ships two implementations of its hot loops: a table-driven
``numba`` path doing Gaussian elimination directly over GF(q), and a pure
numpy fallback that expands matrices to the prime subfield and eliminates
there (selected at import time by ``DETCODES_NO_NUMBA=1``).  This script
times both inside one process by calling the implementations directly.

Usage: python benchmarks/bench_kernels.py [--count 20000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from detcodes import _kernels, gf


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_rank(field, count, l, m, repeat, rng):
    mats = rng.integers(0, field.q, size=(count, l, m), dtype=np.int64)
    rows = []
    fallback = _time(lambda: _kernels._rank_batch_np(field, mats), repeat)
    rows.append(("numpy-fallback", fallback))
    if _kernels.USE_NUMBA:
        _kernels.rank_batch(field, mats[:8])  # trigger jit compilation
        jitted = _time(lambda: _kernels.rank_batch(field, mats), repeat)
        rows.append(("numba", jitted))
        assert (
            _kernels.rank_batch(field, mats) == _kernels._rank_batch_np(field, mats)
        ).all(), "kernel routes disagree"
    return rows


def bench_matmul(field, count, repeat, rng):
    A = rng.integers(0, field.q, size=(16, 16), dtype=np.int64)
    B = rng.integers(0, field.q, size=(count, 16, 16), dtype=np.int64)
    rows = []
    fallback = _time(
        lambda: np.stack([_kernels._matmul_np(field, A, b) for b in B[:count // 8]]),
        repeat,
    )
    rows.append(("numpy-fallback", fallback * 8))
    if _kernels.USE_NUMBA:
        _kernels.gf_matmul_batch(field, A, B[:8])
        jitted = _time(lambda: _kernels.gf_matmul_batch(field, A, B), repeat)
        rows.append(("numba", jitted))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)

    print(f"numba path available: {_kernels.USE_NUMBA}")
    print(f"{args.count} matrices per batch, best of {args.repeat} runs\n")
    for p, e in [(2, 1), (3, 1), (2, 2), (3, 2)]:
        field = gf.make_field(p, e)
        print(f"GF({field.q}) rank_batch (5x7):")
        for name, sec in bench_rank(field, args.count, 5, 7, args.repeat, rng):
            print(f"  {name:<16} {sec * 1e3:9.2f} ms   "
                  f"{args.count / sec / 1e6:7.2f} Mmat/s")
        print(f"GF({field.q}) matmul_batch (16x16 x 16x16):")
        for name, sec in bench_matmul(field, args.count, args.repeat, rng):
            note = " (extrapolated)" if name == "numpy-fallback" else ""
            print(f"  {name:<16} {sec * 1e3:9.2f} ms{note}")
        print()


if __name__ == "__main__":
    main()
