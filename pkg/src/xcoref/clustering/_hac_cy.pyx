# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled average-linkage agglomeration kernel.

Mirrors _hac_py.hac_average operation for operation (same pair scan order,
same exact sum updates) so both backends produce identical partitions.
"""
import numpy as np

cimport numpy as cnp

cnp.import_array()


def hac_average(cnp.ndarray[cnp.float64_t, ndim=2] dist, double threshold):
    cdef Py_ssize_t n = dist.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] sums = dist.astype(np.float64).copy()
    cdef cnp.ndarray[cnp.int64_t, ndim=1] size = np.ones(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] alive = np.ones(n, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] parent = np.arange(n, dtype=np.int64)
    cdef Py_ssize_t i, j, k, best_i, best_j
    cdef double avg, best, merged
    cdef Py_ssize_t remaining = n

    while remaining > 1:
        best = 0.0
        best_i = -1
        best_j = -1
        for i in range(n):
            if not alive[i]:
                continue
            for j in range(i + 1, n):
                if not alive[j]:
                    continue
                avg = sums[i, j] / (size[i] * size[j])
                if best_i < 0 or avg < best:
                    best = avg
                    best_i = i
                    best_j = j
        if best > threshold:
            break
        i = best_i
        j = best_j
        for k in range(n):
            if alive[k] and k != i and k != j:
                merged = sums[i, k] + sums[j, k]
                sums[i, k] = merged
                sums[k, i] = merged
        size[i] += size[j]
        alive[j] = 0
        parent[j] = i
        remaining -= 1

    # resolve each item to its surviving cluster, then relabel contiguously
    cdef cnp.ndarray[cnp.int64_t, ndim=1] labels = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t root
    next_label = 0
    label_of = {}
    for i in range(n):
        root = i
        while parent[root] != root:
            root = parent[root]
        if root not in label_of:
            label_of[root] = next_label
            next_label += 1
        labels[i] = label_of[root]
    return labels
