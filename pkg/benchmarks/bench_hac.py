"""Benchmark the compiled clustering kernel against the pure-Python fallback.

Both kernels receive identical distance matrices and must return identical
partitions; the script reports wall-clock times and the speedup per size.

Usage:  python3 benchmarks/bench_hac.py [--sizes 50,100,200,400] [--repeat 3]
"""
import argparse
import time

import numpy as np

from xcoref.clustering import HAC_BACKEND, cosine_distance_matrix
from xcoref.clustering._hac_py import hac_average as hac_python

try:
    from xcoref.clustering._hac_cy import hac_average as hac_cython
except ImportError:
    hac_cython = None


def time_kernel(kernel, dist, threshold, repeat):
    best = float("inf")
    labels = None
    for _ in range(repeat):
        work = dist.copy()
        started = time.perf_counter()
        labels = kernel(work, threshold)
        best = min(best, time.perf_counter() - started)
    return best, list(labels)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="50,100,200,400")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--threshold", type=float, default=0.4)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print("active backend: %s" % HAC_BACKEND)
    if hac_cython is None:
        print("compiled kernel unavailable; timing the fallback only")
    print("%8s %12s %12s %9s" % ("n", "python (s)", "compiled (s)", "speedup"))
    rng = np.random.default_rng(0)
    for n in sizes:
        vectors = rng.normal(size=(n, 50))
        dist = cosine_distance_matrix(vectors)
        py_time, py_labels = time_kernel(hac_python, dist, args.threshold,
                                         args.repeat)
        if hac_cython is None:
            print("%8d %12.4f %12s %9s" % (n, py_time, "-", "-"))
            continue
        cy_time, cy_labels = time_kernel(hac_cython, dist, args.threshold,
                                         args.repeat)
        assert cy_labels == py_labels, "backends disagree at n=%d" % n
        print("%8d %12.4f %12.4f %8.1fx" % (n, py_time, cy_time,
                                            py_time / cy_time))


if __name__ == "__main__":
    main()
