"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from qkdpp import kernels
from qkdpp.pipeline.cascade import block_sizes


def cases(rng):
    n = 4096
    alice = rng.integers(0, 2, n, dtype=np.uint8)
    bob = alice ^ (rng.random(n) < 0.05).astype(np.uint8)
    sizes = np.array(block_sizes(n, 0.05, 4), dtype=np.int64)
    perms = np.stack([np.arange(n)] + [rng.permutation(n) for _ in range(3)]).astype(np.int64)
    x = rng.integers(0, 2, 100_000, dtype=np.uint8)
    seed = rng.integers(0, 2, 100_000 + 60_000 - 1, dtype=np.uint8)
    swaps = rng.integers(0, np.arange(100_000, 1, -1)).astype(np.int64)
    return {
        "cascade n=4096 q=0.05": lambda b: b.cascade(alice, bob, sizes, perms),
        "toeplitz 100000 -> 60000": lambda b: b.toeplitz_hash(x, seed, 60_000),
        "fisher_yates n=100000": lambda b: b.fisher_yates(swaps),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    names = kernels.available()
    print(f"backends: {', '.join(names)} (default {kernels.BACKEND})")
    for label, fn in cases(np.random.default_rng(0)).items():
        times = {}
        for name in names:
            backend = kernels.get_backend(name)
            times[name] = min(timeit.repeat(lambda: fn(backend), number=1, repeat=args.repeat))
        row = "  ".join(f"{k} {v * 1e3:9.3f} ms" for k, v in times.items())
        if len(times) == 2:
            row += f"  speedup {times['python'] / times['cython']:.1f}x"
        print(f"{label:28s} {row}")


if __name__ == "__main__":
    main()
