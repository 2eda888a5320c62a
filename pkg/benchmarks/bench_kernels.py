"""Benchmark the two cell-histogram backends on growing fixed-point data.

For a regular torus point s = (1, c, c^2, ...) with q0 = c, every coset is its
own component, so the Ext totals aggregate over |I|^2 = (n!)^2 component pairs
(25.4M popcounts at n = 7). Run:

    python benchmarks/bench_kernels.py [--max-n 7] [--repeats 3]

and compare the numba bitmask loop against the chunked numpy matmul path.
Both must produce identical histograms; the script asserts it.
"""

import argparse
import time
from math import factorial

from heckespringer import _kernels
from heckespringer.combinat import SemisimplePoint
from heckespringer.steinberg import ext_graded_totals, fixed_point_datum


def _chain_point(n):
    return SemisimplePoint.of(tuple(2 ** i for i in range(n)), 2)


def _time_backend(backend, datum, repeats):
    prev = _kernels._backend
    _kernels._backend = backend
    try:
        totals = ext_graded_totals(datum)  # warm-up (and jit compile)
        best = float("inf")
        for _ in range(repeats):
            start = time.perf_counter()
            ext_graded_totals(datum)
            best = min(best, time.perf_counter() - start)
        return best, totals
    finally:
        _kernels._backend = prev


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=7)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = ["numpy"]
    try:
        _kernels._load_numba()
        backends.insert(0, "numba")
    except ImportError:
        print("numba unavailable; timing the numpy path only")

    print(f"{'n':>3} {'pieces':>7} {'pairs':>12}", end="")
    for b in backends:
        print(f" {b + ' (s)':>12}", end="")
    print(" speedup" if len(backends) == 2 else "")

    for n in range(4, args.max_n + 1):
        datum = fixed_point_datum(_chain_point(n))
        pairs = datum.piece_count ** 2 * len(datum.group) ** 2
        assert datum.piece_count == factorial(n)
        row = f"{n:>3} {datum.piece_count:>7} {pairs:>12}"
        times = {}
        reference = None
        for b in backends:
            elapsed, totals = _time_backend(b, datum, args.repeats)
            if reference is None:
                reference = totals
            else:
                assert totals == reference, f"backend disagreement at n={n}"
            times[b] = elapsed
            row += f" {elapsed:>12.4f}"
        if len(backends) == 2:
            row += f" {times['numpy'] / times['numba']:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
