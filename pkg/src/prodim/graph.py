"""Simple undirected graphs with stable vertex ids.

Vertex ids are arbitrary non-negative integers that are never renumbered by
subgraph operations, so an id assigned at the top of a recursion stays unique
all the way down.
"""

from __future__ import annotations

import heapq
from collections import deque
from itertools import combinations
from typing import Iterable


class OddCycle(ValueError):
    """Raised when a 2-coloring is requested for a non-bipartite graph."""


class UnknownVertex(KeyError):
    pass


class Graph:
    """Immutable simple graph.

    Adjacency is kept both as a set of sorted pairs and as per-vertex sorted
    neighbour tuples.
    """

    __slots__ = ("_vertices", "_adj", "_edges", "_index")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]] = ()):
        verts = sorted(set(int(v) for v in vertices))
        adj: dict[int, set[int]] = {v: set() for v in verts}
        pairs = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in adj or v not in adj:
                raise UnknownVertex((u, v))
            adj[u].add(v)
            adj[v].add(u)
            pairs.add((u, v) if u < v else (v, u))
        self._vertices = tuple(verts)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self._edges = frozenset(pairs)
        self._index = None

    @classmethod
    def _from_adj(cls, adj: dict[int, tuple[int, ...]], edges: frozenset) -> "Graph":
        g = cls.__new__(cls)
        g._vertices = tuple(sorted(adj))
        g._adj = adj
        g._edges = edges
        g._index = None
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] = ()) -> "Graph":
        """Graph on vertices 0..n-1."""
        return cls(range(n), edges)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> frozenset:
        return self._edges

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def ids(self) -> dict[int, int]:
        """Position of each vertex in the sorted vertex tuple."""
        if self._index is None:
            self._index = {v: i for i, v in enumerate(self._vertices)}
        return self._index

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edges

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def is_forest(self) -> bool:
        return self.m == self.n - len(connected_components(self))

    def complement(self) -> "Graph":
        return Graph(
            self._vertices,
            ((u, v) for u, v in combinations(self._vertices, 2) if not self.has_edge(u, v)),
        )


def connected_components(g: Graph) -> list[frozenset]:
    """Components sorted by size (largest first), ties by smallest id."""
    seen: set[int] = set()
    comps = []
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append((root, frozenset(comp)))
    # roots are visited in increasing order, so root == min(comp)
    comps.sort(key=lambda rc: (-len(rc[1]), rc[0]))
    return [c for _, c in comps]


def induced_subgraph(g: Graph, x: Iterable[int]) -> Graph:
    xs = set(x)
    for v in xs:
        if v not in g:
            raise UnknownVertex(v)
    adj = {v: tuple(w for w in g.neighbors(v) if w in xs) for v in xs}
    edges = frozenset((u, w) for u, ns in adj.items() for w in ns if u < w)
    return Graph._from_adj(adj, edges)


def with_clique(g: Graph, s: Iterable[int]) -> Graph:
    """Same vertices, with every pair inside ``s`` made adjacent."""
    ss = sorted(set(s))
    for v in ss:
        if v not in g:
            raise UnknownVertex(v)
    if len(ss) < 2:
        return g
    return Graph(g.vertices, list(g.edges) + list(combinations(ss, 2)))


def degeneracy_ordering(g: Graph) -> tuple[list[int], int]:
    """Order with every vertex having at most ``k`` earlier neighbours.

    Repeatedly removes a vertex of minimum residual degree (smallest id on
    ties); the removal sequence reversed is the ordering and the largest
    degree seen at removal time is the degeneracy ``k``.
    """
    deg = {v: g.degree(v) for v in g.vertices}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    removed: set[int] = set()
    removal = []
    k = 0
    while heap:
        d, v = heapq.heappop(heap)
        if v in removed or d != deg[v]:
            continue
        removed.add(v)
        removal.append(v)
        k = max(k, d)
        for w in g.neighbors(v):
            if w not in removed:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    removal.reverse()
    return removal, k


def back_degree(g: Graph, order: list[int]) -> int:
    """Largest number of earlier neighbours over the positions of ``order``."""
    pos = {v: i for i, v in enumerate(order)}
    return max((sum(1 for w in g.neighbors(v) if pos[w] < pos[v]) for v in order), default=0)


def greedy_coloring(g: Graph, order: Iterable[int]) -> dict[int, int]:
    """First-fit coloring along ``order``."""
    color: dict[int, int] = {}
    for v in order:
        used = {color[w] for w in g.neighbors(v) if w in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def bipartition(g: Graph) -> dict[int, int]:
    """Proper 2-coloring by BFS; the smallest id of each component gets 0."""
    color: dict[int, int] = {}
    for root in g.vertices:
        if root in color:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    raise OddCycle(f"edge {u}-{w} closes an odd cycle")
    return color


def is_proper_coloring(g: Graph, coloring: dict[int, int]) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges)


# small named families, handy in tests and demos

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n)


def star_graph(leaves: int) -> Graph:
    """Star with centre 0 and leaves 1..leaves."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def disjoint_cliques(copies: int, size: int) -> Graph:
    """``copies`` disjoint copies of K_size; copy i occupies ids i*size..."""
    edges = []
    for c in range(copies):
        base = c * size
        edges.extend((base + a, base + b) for a, b in combinations(range(size), 2))
    return Graph.from_edges(copies * size, edges)
