"""Divide-and-conquer encoder for forests.

A forest is split at a vertex whose removal leaves two or three balanced
pieces, each piece (plus the split vertex) is encoded recursively, and the
piece encodings are glued back together along the shared vertex with
ceil(log2 k) extra coordinates.  Forests on at most three vertices use fixed
3-coordinate encodings whose last coordinate is the vertex id.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .encoding import Encoding
from .graph import Graph

#: Makes (1/2 + eps)^2 == 1/2 - eps, which balances the two split kinds.
DEFAULT_EPSILON = math.sqrt(5) / 2 - 1


class NotAForest(ValueError):
    pass


class TooLarge(ValueError):
    pass


class PieceNotWellBegun(ValueError):
    pass


class SharedVertexMissing(ValueError):
    pass


class IntersectionNotSingleton(ValueError):
    pass


class SplitKind(enum.Enum):
    TWO = 2
    THREE = 3


@dataclass(frozen=True)
class SplitResult:
    v: int
    kind: SplitKind
    parts: tuple[frozenset, ...]
    epsilon: float


@dataclass(frozen=True)
class AmalgamationPlan:
    """Suffix words used when gluing ``k`` pieces at vertex ``g``."""

    k: int
    g: int

    @property
    def suffix_len(self) -> int:
        return math.ceil(math.log2(self.k)) if self.k > 1 else 0

    def b0(self, i: int) -> tuple[int, ...]:
        L = self.suffix_len
        return tuple((i >> (L - 1 - b)) & 1 for b in range(L))

    def b1(self, i: int) -> tuple[int, ...]:
        return tuple(1 - b for b in self.b0(i))


def find_split_vertex(t: Graph, epsilon: float = DEFAULT_EPSILON) -> SplitResult:
    """Vertex whose removal leaves two or three balanced parts.

    Takes the vertex minimising the largest component left after its
    removal.  If that component is bigger than (1/2 - eps) n it forms one
    side of a 2-split; otherwise the components are packed first-fit
    decreasing into bins of capacity (1/2 - eps) n, and while more than
    three bins remain the two smallest are merged.  A merged bin that
    overflows the capacity is at most n/2 by pigeonhole and becomes one side
    of a 2-split.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    if not t.is_forest():
        raise NotAForest("graph contains a cycle")
    if t.n == 0:
        raise ValueError("empty forest has no split vertex")
    adj = {v: t.neighbors(v) for v in t.vertices}
    v, kind, parts = _split(adj, set(t.vertices), epsilon)
    return SplitResult(v, kind, _ordered(frozenset(p) for p in parts), epsilon)


def _split(adj, live: set, epsilon: float):
    """Split the sub-forest of ``adj`` induced by ``live``.

    Returns (split vertex, kind, list of vertex lists).  One DFS gives a
    preorder in which every subtree is a contiguous slice, which is enough
    to read off the components left by any vertex.
    """
    n = len(live)
    parent: dict[int, int | None] = {}
    order: list[int] = []
    comp_of: dict[int, int] = {}
    spans = []  # (start, stop) of each tree in ``order``
    for root in sorted(live):
        if root in parent:
            continue
        start = len(order)
        parent[root] = None
        stack = [root]
        while stack:
            u = stack.pop()
            order.append(u)
            for w in adj[u]:
                if w in live and w not in parent:
                    parent[w] = u
                    stack.append(w)
        spans.append((start, len(order)))
    pos = {u: i for i, u in enumerate(order)}
    sub = dict.fromkeys(order, 1)
    big_child = dict.fromkeys(order, 0)
    for u in reversed(order):
        p = parent[u]
        if p is not None:
            sub[p] += sub[u]
            if sub[u] > big_child[p]:
                big_child[p] = sub[u]
    sizes = sorted(((b - a, order[a]) for a, b in spans), reverse=True)
    best_v, best = None, None
    for ci, (a, b) in enumerate(spans):
        size = b - a
        root = order[a]
        if sizes[0][1] == root:
            other = sizes[1][0] if len(sizes) > 1 else 0
        else:
            other = sizes[0][0]
        for u in order[a:b]:
            c1 = max(other, big_child[u], size - sub[u])
            if best is None or c1 < best or (c1 == best and u < best_v):
                best, best_v = c1, u
            comp_of[u] = ci
    v = best_v
    pv, sv = pos[v], sub[v]
    comps = []
    for ci, (a, b) in enumerate(spans):
        if ci != comp_of[v]:
            comps.append(order[a:b])
        else:
            outside = order[a:pv] + order[pv + sv : b]
            if outside:
                comps.append(outside)
    for w in adj[v]:
        if w in live and parent[w] == v:
            comps.append(order[pos[w] : pos[w] + sub[w]])
    comps.sort(key=lambda c: (-len(c), min(c)))
    beta_n = (0.5 - epsilon) * n

    def two(part):
        inside = set(part)
        return v, SplitKind.TWO, [list(part), [u for u in live if u != v and u not in inside]]

    if comps and len(comps[0]) > beta_n:
        return two(comps[0])
    bins: list[list] = []
    for comp in comps:  # sorted by size, descending
        for bn in bins:
            if len(bn) + len(comp) <= beta_n:
                bn.extend(comp)
                break
        else:
            bins.append(list(comp))
    while len(bins) > 3:
        bins.sort(key=lambda bn: (len(bn), min(bn)))
        merged = bins[0] + bins[1]
        if len(merged) > beta_n:
            return two(merged)
        bins = [merged] + bins[2:]
    kind = SplitKind.THREE if len(bins) == 3 else SplitKind.TWO
    while len(bins) < 2:
        bins.append([])
    return v, kind, bins


def _ordered(parts) -> tuple[frozenset, ...]:
    return tuple(sorted(parts, key=lambda p: (-len(p), min(p) if p else -1)))


def base_case_encode(t: Graph) -> Encoding:
    """Fixed well-begun 3-encodings of the six forests on <= 3 vertices."""
    n = t.n
    if n > 3:
        raise TooLarge(f"base case covers at most 3 vertices, got {n}")
    if not t.is_forest():
        raise NotAForest("graph contains a cycle")
    return Encoding(3, _base_codes(t))


def _base_codes(t: Graph) -> dict[int, tuple[int, int, int]]:
    zero = {v: (0, 0, v) for v in t.vertices}
    if t.m == 0:
        return zero
    if t.m == 1:
        (a, b), = t.edges
        codes = {a: (0, 0, a), b: (1, 1, b)}
        for k in t.vertices:
            if k not in codes:
                codes[k] = (0, 1, k)
        return codes
    # path on three vertices: the middle vertex is the one of degree 2
    mid = next(v for v in t.vertices if t.degree(v) == 2)
    zero[mid] = (1, 1, mid)
    return zero


_SMALL = 256


def _glue(pieces, g: int):
    """Core of the bipartite amalgamation on raw code rows.

    ``pieces`` holds (vertex list, codes) pairs, every one containing ``g``;
    codes are a list of rows for small pieces and an int64 matrix otherwise.
    Returns the combined (vertex list, codes) in the same convention.
    """
    L = max(len(codes[0]) for _, codes in pieces)
    plan = AmalgamationPlan(len(pieces), g)
    sl = plan.suffix_len
    total = sum(len(verts) for verts, _ in pieces)
    out_verts = [g]
    if total < _SMALL:
        out = [[0] * L + [2] * sl]
        for i, (verts, rows) in enumerate(pieces):
            b0 = list(plan.b0(i))
            b1 = [1 - b for b in b0]
            gi = verts.index(g)
            grow = rows[gi]
            grow = grow + [grow[-1]] * (L - len(grow))
            for v, row in zip(verts, rows):
                if v == g:
                    continue
                row = row + [row[-1]] * (L - len(row))
                row = [0 if x == gs else (gs if x == 0 else x) for x, gs in zip(row, grow)]
                row.extend(b0 if row[0] == 0 else b1)
                out_verts.append(v)
                out.append(row)
        return out_verts, out
    blocks = [np.array([[0] * L + [2] * sl], dtype=np.int64)]
    for i, (verts, arr) in enumerate(pieces):
        arr = np.asarray(arr, dtype=np.int64)
        if arr.shape[1] < L:
            arr = np.concatenate([arr, np.repeat(arr[:, -1:], L - arr.shape[1], axis=1)], axis=1)
        gi = verts.index(g)
        grow = arr[gi]
        arr = np.where(arr == grow, 0, np.where(arr == 0, grow, arr))
        arr = np.delete(arr, gi, axis=0)
        if sl:
            b0 = np.array(plan.b0(i), dtype=np.int64)
            arr = np.concatenate([arr, np.where(arr[:, :1] == 0, b0, 1 - b0)], axis=1)
        out_verts.extend(verts[:gi] + verts[gi + 1 :])
        blocks.append(arr)
    return out_verts, np.concatenate(blocks, axis=0)


def _as_encoding(verts, codes) -> Encoding:
    rows = codes.tolist() if isinstance(codes, np.ndarray) else codes
    return Encoding(len(rows[0]), dict(zip(verts, map(tuple, rows))))


def amalgamate_bipartite(pieces: list[tuple[Graph, Encoding]], g: int) -> Encoding:
    """Glue well-begun encodings of bipartite pieces sharing only ``g``.

    Pieces are padded to a common length, each coordinate of each piece is
    renamed by the transposition taking g's symbol to 0, and every vertex
    other than ``g`` gets the binary word of its piece index (complemented
    when its first coordinate is 1) appended; ``g`` gets a run of 2s.
    """
    if not pieces:
        raise ValueError("no pieces to amalgamate")
    seen: set[int] = set()
    arrays = []
    for graph, enc in pieces:
        if g not in enc.codes or g not in graph:
            raise SharedVertexMissing(f"vertex {g} missing from a piece")
        others = set(graph.vertices) - {g}
        if others & seen:
            raise IntersectionNotSingleton("pieces share vertices other than the glue vertex")
        seen |= others
        if any(code[0] not in (0, 1) for code in enc.codes.values()):
            raise PieceNotWellBegun("first coordinate must use symbols 0 and 1 only")
        verts = enc.vertices
        arrays.append((verts, [list(enc.codes[v]) for v in verts]))
    return _as_encoding(*_glue(arrays, g))


def _encode(adj, live: set, epsilon: float):
    if len(live) <= 3:
        verts = sorted(live)
        t = Graph(verts, [(u, w) for u in verts for w in adj[u] if u < w and w in live])
        codes = _base_codes(t)
        return verts, [list(codes[v]) for v in verts]
    v, _, parts = _split(adj, live, epsilon)
    pieces = [_encode(adj, set(part) | {v}, epsilon) for part in parts if part]
    return _glue(pieces, v)


def encode_forest(t: Graph, epsilon: float = DEFAULT_EPSILON) -> Encoding:
    """Well-begun encoding of a forest of length at most 1.441 log2(n) + 3."""
    if not t.is_forest():
        raise NotAForest("graph contains a cycle")
    if t.n == 0:
        return Encoding(3, {})
    adj = {v: t.neighbors(v) for v in t.vertices}
    return _as_encoding(*_encode(adj, set(t.vertices), epsilon))


def forest_bound(n: int) -> float:
    return 1.441 * math.log2(n) + 3 if n >= 2 else 3.0
