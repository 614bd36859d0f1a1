"""Pure-Python average-linkage agglomeration kernel.

Fallback for the compiled Cython kernel; both run the identical algorithm:
cluster pair distance sums are maintained exactly (S[new] = S[i] + S[j]) so
the average linkage is the true mean over all inter-cluster pairs, and ties
break on the smallest member index of each cluster.
"""
import numpy as np


def hac_average(dist, threshold):
    """Merge until the minimum inter-cluster average distance exceeds the
    threshold; returns one integer label per item, contiguous, ordered by
    each cluster's smallest member index."""
    n = dist.shape[0]
    active = list(range(n))
    members = {i: [i] for i in range(n)}
    sums = [[float(dist[i, j]) for j in range(n)] for i in range(n)]
    while len(active) > 1:
        best = None
        best_pair = None
        for ai in range(len(active)):
            for aj in range(ai + 1, len(active)):
                i, j = active[ai], active[aj]
                avg = sums[i][j] / (len(members[i]) * len(members[j]))
                if best is None or avg < best:
                    best = avg
                    best_pair = (i, j)
        if best > threshold:
            break
        i, j = best_pair
        for k in active:
            if k != i and k != j:
                merged = sums[i][k] + sums[j][k]
                sums[i][k] = merged
                sums[k][i] = merged
        members[i].extend(members[j])
        del members[j]
        active.remove(j)
    order = sorted(active, key=lambda c: min(members[c]))
    labels = np.empty(n, dtype=np.int64)
    for label, cluster in enumerate(order):
        for item in members[cluster]:
            labels[item] = label
    return labels
