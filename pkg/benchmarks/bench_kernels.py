"""Compare the compiled and pure-numpy kernel backends.

Times the pair-exchange sum and the minor-pair sum on seeded random
states of growing size and prints a small table with the speedup.  Run
from the repository root::

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --repeats 9 --sizes 2,2,2 4,4 8,8,8

The compiled columns show '-' when numba is unavailable.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from entwedge import _kernels

DEFAULT_SIZES = ["2,2", "4,4", "2,2,2", "4,4,4", "2,2,2,2,2", "8,8,8", "16,16"]


def random_amplitudes(rng: np.random.Generator, total: int) -> np.ndarray:
    z = rng.standard_normal(total) + 1j * rng.standard_normal(total)
    return z / np.linalg.norm(z)


def best_of(fn, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def time_backends(dims: tuple[int, ...], repeats: int, rng: np.random.Generator):
    amps = random_amplitudes(rng, math.prod(dims))
    mat = amps.reshape(dims[0], -1)

    rows = []
    swap_numpy = best_of(lambda: _kernels.swap_term_sum_numpy(amps, dims), repeats)
    minor_numpy = best_of(lambda: _kernels.minor_pair_sum_numpy(mat), repeats)
    if _kernels.HAS_NUMBA:
        # first call pays for compilation; time only warmed-up runs
        _kernels.swap_term_sum_numba(amps, dims)
        _kernels.minor_pair_sum_numba(mat)
        swap_numba = best_of(lambda: _kernels.swap_term_sum_numba(amps, dims), repeats)
        minor_numba = best_of(lambda: _kernels.minor_pair_sum_numba(mat), repeats)
    else:
        swap_numba = minor_numba = None
    rows.append(("pair-exchange sum", swap_numpy, swap_numba))
    rows.append(("minor-pair sum", minor_numpy, minor_numba))
    return rows


def fmt_seconds(value) -> str:
    return "-" if value is None else f"{value * 1e3:9.3f}"


def fmt_speedup(numpy_t, numba_t) -> str:
    if numba_t is None or numba_t == 0.0:
        return "-"
    return f"{numpy_t / numba_t:6.1f}x"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repetitions per case; best time wins")
    parser.add_argument("--seed", type=int, default=0, help="state generator seed")
    parser.add_argument("--sizes", nargs="*", default=DEFAULT_SIZES,
                        help="subsystem dims per case, e.g. 2,2,2 4,4")
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"selected backend: {_kernels.active_backend()}")
    if not _kernels.HAS_NUMBA:
        print("numba unavailable; compiled columns are blank")
    header = f"{'dims':>12}  {'kernel':<18} {'numpy ms':>9} {'numba ms':>9} {'speedup':>7}"
    print(header)
    print("-" * len(header))
    for size in args.sizes:
        dims = tuple(int(n) for n in size.split(","))
        for name, numpy_t, numba_t in time_backends(dims, args.repeats, rng):
            print(
                f"{size:>12}  {name:<18} {fmt_seconds(numpy_t)} "
                f"{fmt_seconds(numba_t)} {fmt_speedup(numpy_t, numba_t):>7}"
            )


if __name__ == "__main__":
    main()
