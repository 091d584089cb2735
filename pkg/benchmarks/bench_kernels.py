"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from boxblocks import kernels
from boxblocks.family import generate_family
from boxblocks.geometry import FamilyParams
from boxblocks.graph import family_boxes, integer_arrays


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    P = FamilyParams(3, 3, 2)
    arrays = integer_arrays(family_boxes(generate_family(P)))
    yield "adjacency (3,3,2), n=486", "adjacency_matrix", arrays
    adj = kernels.python_backend.adjacency_matrix(*arrays)
    yield "fingerprint (3,3,2), I=empty", "fingerprint", (adj, np.zeros(len(adj), dtype=np.uint8), 2 * P.M)
    rng = np.random.default_rng(0)
    for n, p in ((60, 0.1), (90, 0.2)):
        a = np.triu((rng.random((n, n)) < p).astype(np.uint8), 1)
        yield f"max independent set G({n}, {p})", "max_independent_set", (a | a.T,)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.backends()
    print(f"default backend: {kernels.BACKEND}")
    print(f"{'case':38s}" + "".join(f"{name:>12s}" for name in backends) + "     speedup")
    for label, fn, argv in cases():
        row = {name: best_of(lambda: getattr(be, fn)(*argv), args.repeat) for name, be in backends.items()}
        line = f"{label:38s}" + "".join(f"{row[name]:11.4f}s" for name in backends)
        if "cython" in row:
            line += f"  {row['python'] / row['cython']:8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
