#!/usr/bin/env python3
"""Microbenchmark: the numba kernels against their pure-numpy twins.

Run from a checkout:

    python3 benchmarks/bench_kernels.py --resolution 1024 --repeats 5

Each kernel is timed on one flattened a/b grid for the three example
domains, best-of-N wall time. With PREFTILES_NO_NUMBA=1 (or without numba
installed) only the numpy column is filled in.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from preftiles import grid_axes, kernels

TRIO = np.array(
    [
        [0.02, 0.12, 0.01, 0.85],
        [0.68, 0.08, 0.10, 0.14],
        [0.41, 0.19, 0.10, 0.30],
    ]
)
WEIGHTS = np.array([1.0, 1.0, 1.0])

KERNELS = (
    "score_components",
    "value_grid",
    "weight_grid",
    "extremum_codes",
    "preponderance_codes",
)


def flat_coords(resolution: int):
    a_axis, b_axis = grid_axes(resolution)
    bb, aa = np.meshgrid(b_axis, a_axis, indexing="ij")
    return aa.ravel(), bb.ravel()


def build_cases(resolution: int) -> dict:
    a, b = flat_coords(resolution)
    nums = np.empty((len(TRIO), a.size))
    dens = np.empty((len(TRIO), a.size))
    for d in range(len(TRIO)):
        nums[d], dens[d] = kernels.score_components_numpy(TRIO[d], a, b)
    return {
        "score_components": (TRIO[0], a, b),
        "value_grid": (nums[0], dens[0]),
        "weight_grid": (WEIGHTS, dens, 0),
        "extremum_codes": (nums, dens, True),
        "preponderance_codes": (WEIGHTS, dens),
    }


def best_of(fn, args, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def same_result(first, second) -> bool:
    if isinstance(first, tuple):
        return all(same_result(f, s) for f, s in zip(first, second))
    return bool(np.array_equal(first, second, equal_nan=first.dtype.kind == "f"))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--resolution", type=int, default=1024, help="grid side length")
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats (best wins)")
    args = parser.parse_args()

    cases = build_cases(args.resolution)
    pixels = args.resolution * args.resolution
    print(f"backend: {kernels.BACKEND}   pixels per call: {pixels}")
    print(f"{'kernel':<22}{'numpy (ms)':>12}{'numba (ms)':>12}{'speedup':>10}")

    for name in KERNELS:
        numpy_fn = getattr(kernels, name + "_numpy")
        numba_fn = getattr(kernels, name + "_numba")
        case = cases[name]

        numpy_ms = best_of(numpy_fn, case, args.repeats) * 1e3
        if numba_fn is None:
            print(f"{name:<22}{numpy_ms:>12.3f}{'-':>12}{'-':>10}")
            continue

        # First call pays the compile cost; keep it out of the timings.
        if not same_result(numpy_fn(*case), numba_fn(*case)):
            raise SystemExit(f"{name}: backends disagree, refusing to time")
        numba_ms = best_of(numba_fn, case, args.repeats) * 1e3
        print(f"{name:<22}{numpy_ms:>12.3f}{numba_ms:>12.3f}{numpy_ms / numba_ms:>9.1f}x")

    return 0


if __name__ == "__main__":
    raise SystemExit(main())
