#!/usr/bin/env python3
"""Benchmark the compiled search kernel against the pure-Python fallback.

Runs the torsion-free genus-0 enumeration at several indices on both
kernels (when the compiled one is available), checks that their outputs
are identical, and reports wall time and speedup.

Usage: python3 benchmarks/bench_backends.py [--max-index 30] [--repeat 3]
"""

import argparse
import importlib
import statistics
import time

from modmaps import _kernel_py


def load_kernels():
    kernels = [("python", _kernel_py)]
    try:
        compiled = importlib.import_module("modmaps._kernel")
    except ImportError:
        print("compiled kernel not built; benchmarking the fallback only")
    else:
        kernels.insert(0, ("cython", compiled))
    return kernels


def run(kernel, mu: int) -> tuple:
    target_h = mu // 6 + 2  # genus-0 cusp count
    start = time.perf_counter()
    solutions, _ = kernel.search(mu, True, target_h, None)
    return time.perf_counter() - start, solutions


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-index", type=int, default=30,
                        help="largest index to benchmark (multiples of 6)")
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions; the median is reported")
    args = parser.parse_args()

    kernels = load_kernels()
    header = f"{'index':>6} {'count':>8}"
    for name, _ in kernels:
        header += f" {name + ' (s)':>12}"
    if len(kernels) == 2:
        header += f" {'speedup':>9}"
    print(header)

    for mu in range(6, args.max_index + 1, 6):
        times = []
        counts = []
        baseline_solutions = None
        for _, kernel in kernels:
            best = statistics.median(
                run(kernel, mu)[0] for _ in range(args.repeat)
            )
            _, solutions = run(kernel, mu)
            if baseline_solutions is None:
                baseline_solutions = solutions
            elif solutions != baseline_solutions:
                raise SystemExit(f"kernel outputs differ at index {mu}")
            times.append(best)
            counts.append(len(solutions))
        row = f"{mu:>6} {counts[0]:>8}"
        for t in times:
            row += f" {t:>12.4f}"
        if len(times) == 2:
            row += f" {times[1] / times[0]:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
