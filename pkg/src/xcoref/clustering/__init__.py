"""Clustering backends used by the sieves.

The average-linkage agglomeration loop is the hot kernel; a compiled Cython
version is preferred when available and a pure-Python version is the
fallback.  Set XCOREF_PURE_PYTHON=1 to force the fallback (used by the
benchmark and to debug backend mismatches).
"""
import os

import numpy as np

from ..errors import DimensionMismatch
from ._hac_py import hac_average as _hac_python
from .core import core_cluster

if os.environ.get("XCOREF_PURE_PYTHON"):
    _hac_kernel = _hac_python
    HAC_BACKEND = "python"
else:
    try:
        from ._hac_cy import hac_average as _hac_kernel
        HAC_BACKEND = "cython"
    except ImportError:
        _hac_kernel = _hac_python
        HAC_BACKEND = "python"

__all__ = [
    "HAC_BACKEND",
    "core_cluster",
    "cosine_distance_matrix",
    "hac_average_cosine",
    "pairwise_cosine",
]


def pairwise_cosine(vectors):
    """Symmetric cosine similarity matrix; zero vectors yield 0 rows."""
    matrix = np.asarray(vectors, dtype=np.float64)
    if matrix.ndim != 2:
        raise DimensionMismatch("vectors must share one dimension")
    norms = np.linalg.norm(matrix, axis=1)
    safe = np.where(norms == 0.0, 1.0, norms)
    unit = matrix / safe[:, None]
    sim = unit @ unit.T
    sim[norms == 0.0, :] = 0.0
    sim[:, norms == 0.0] = 0.0
    np.fill_diagonal(sim, np.where(norms == 0.0, 0.0, 1.0))
    return np.clip(sim, -1.0, 1.0)


def cosine_distance_matrix(vectors):
    """1 - cosine similarity, zero diagonal, entries in [0, 2]."""
    dist = 1.0 - pairwise_cosine(vectors)
    np.fill_diagonal(dist, 0.0)
    return np.clip(dist, 0.0, 2.0)


def hac_average_cosine(vectors, threshold):
    """Average-linkage agglomerative clustering under cosine distance.

    Returns a contiguous integer label per item; clusters are numbered by
    their smallest member index, and merge ties break the same way.
    """
    vectors = [np.asarray(v, dtype=np.float64) for v in vectors]
    if not vectors:
        return np.empty(0, dtype=np.int64)
    dims = {v.shape for v in vectors}
    if len(dims) > 1:
        raise DimensionMismatch("mixed vector dimensions: %s" % sorted(dims))
    dist = cosine_distance_matrix(np.stack(vectors))
    return np.asarray(_hac_kernel(dist, float(threshold)), dtype=np.int64)
