"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from extbloch import kernels
from extbloch.basis import composite_basis, gell_mann_basis
from extbloch.rand import random_density, rng


def cases():
    g = rng(0)
    d16 = random_density(16, g)
    a, b = random_density(4, g), random_density(4, g)
    gens = np.ascontiguousarray(composite_basis(gell_mann_basis(4), gell_mann_basis(4)).generators)
    u = g.random(1_000_000)
    cdf = np.cumsum(np.full(6, 1 / 6))
    cdf[-1] = 1.0
    return {
        "kron 4x4 (x) 4x4": lambda m: m.kron(a, b),
        "partial_trace 16 -> 4": lambda m: m.partial_trace(d16, 4, 4, True),
        "trace_products 255 x 16x16": lambda m: m.trace_products(d16, gens),
        "count_outcomes 1e6 shots, N=6": lambda m: m.count_outcomes(u, cdf),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.backends()
    print(f"{'kernel':<32}" + "".join(f"{name:>14}" for name in backends) + "   (best of repeats, ms)")
    for label, fn in cases().items():
        row = []
        for impl in backends.values():
            t = timeit.Timer(lambda: fn(impl))
            n, _ = t.autorange()
            best = min(t.repeat(args.repeat, n)) / n
            row.append(f"{best * 1e3:14.4f}")
        print(f"{label:<32}" + "".join(row))


if __name__ == "__main__":
    main()
