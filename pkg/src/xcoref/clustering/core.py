"""Two-factor core-detection clustering used by the group sieve.

Cores are groups of mutually similar items (pairwise cosine >= s_core) whose
members are each similar to a sufficient share of all items (degree/(n-1) >=
d_min).  Remaining items join the core they are most similar to when that
similarity reaches s_assign; the rest stay unassigned and become singleton
concepts upstream.

The greedy seeding (highest-degree vertex first, deterministic order) is a
reconstruction of the cited external clustering method from prose only; all
three parameters are configuration, not constants.
"""
import numpy as np


def core_cluster(vectors, s_core, d_min, s_assign):
    """Returns (clusters, unassigned): clusters are sorted index lists."""
    n = len(vectors)
    if n == 0:
        return [], []
    from . import pairwise_cosine  # local import avoids a module cycle

    sim = pairwise_cosine(np.stack([np.asarray(v, dtype=np.float64) for v in vectors]))
    adjacency = sim >= s_core
    np.fill_diagonal(adjacency, False)
    degree = adjacency.sum(axis=1)
    if n > 1:
        eligible = (degree / (n - 1) >= d_min) & (degree >= 1)
    else:
        eligible = np.zeros(1, dtype=bool)

    # degree ties break on vector content so permuting the input cannot
    # change the resulting partition
    matrix = np.stack([np.asarray(v, dtype=np.float64) for v in vectors])
    order = sorted(range(n), key=lambda i: (-degree[i], tuple(matrix[i]), i))
    used = np.zeros(n, dtype=bool)
    cores = []
    for seed in order:
        if used[seed] or not eligible[seed]:
            continue
        group = [seed]
        for candidate in order:
            if candidate == seed or used[candidate] or not eligible[candidate]:
                continue
            if all(adjacency[candidate, member] for member in group):
                group.append(candidate)
        if len(group) >= 2:
            for member in group:
                used[member] = True
            cores.append(sorted(group))

    unassigned = []
    for item in order:  # same invariant order as seeding
        if used[item]:
            continue
        best_sim = None
        best_core = None
        for index, core in enumerate(cores):
            top = max(sim[item, member] for member in core)
            if top >= s_assign and (best_sim is None or top > best_sim):
                best_sim = top
                best_core = index
        if best_core is not None:
            cores[best_core].append(item)
        else:
            unassigned.append(item)
    return (sorted((sorted(core) for core in cores), key=min),
            sorted(unassigned))
