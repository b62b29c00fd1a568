"""Seeded random instance families for tests and benchmarks.

All generators draw from ``numpy.random.default_rng(seed)`` and relabel the
vertices by a random permutation at the end, so vertex ids carry no
structural information.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .graph import Graph


def _relabel(n: int, edges, rng) -> Graph:
    perm = rng.permutation(n).tolist()
    return Graph.from_edges(n, sorted((min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in edges))


def random_forest(n: int, seed: int, attach: float = 0.97) -> Graph:
    """Vertex i > 0 joins a uniform earlier vertex with probability ``attach``
    and otherwise starts a new tree."""
    rng = np.random.default_rng(seed)
    edges = []
    for i in range(1, n):
        if rng.random() < attach:
            edges.append((int(rng.integers(i)), i))
    return _relabel(n, edges, rng)


def random_tree(n: int, seed: int) -> Graph:
    return random_forest(n, seed, attach=1.0)


def random_partial_ktree(n: int, k: int, seed: int, drop: float = 0.3) -> Graph:
    """Grow a k-tree by attaching each new vertex to a random k-clique, then
    delete each edge independently with probability ``drop``.  Treewidth is
    at most k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = np.random.default_rng(seed)
    base = min(n, k + 1)
    edges = set(combinations(range(base), 2))
    cliques = list(combinations(range(base), k)) if n > k + 1 else []
    for v in range(base, n):
        c = cliques[int(rng.integers(len(cliques)))]
        edges.update((u, v) for u in c)
        cliques.extend(c[:i] + c[i + 1 :] + (v,) for i in range(k))
    kept = [e for e in sorted(edges) if rng.random() >= drop]
    return _relabel(n, kept, rng)


def random_k_degenerate(n: int, k: int, seed: int) -> Graph:
    """Each vertex picks min(k, i) distinct earlier vertices as neighbors, so
    the insertion order has back-degree at most k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = np.random.default_rng(seed)
    edges = []
    for i in range(1, n):
        for j in rng.choice(i, size=min(k, i), replace=False).tolist():
            edges.append((j, i))
    return _relabel(n, edges, rng)


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


FAMILIES = {
    "forest": lambda n, param, seed: random_forest(n, seed),
    "partial-ktree": random_partial_ktree,
    "k-degenerate": random_k_degenerate,
}
