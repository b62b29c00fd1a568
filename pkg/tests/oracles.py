"""Brute-force reference implementations used only by the tests.

Deliberately naive and sharing no code with the package beyond the Graph
container.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product

from prodim.graph import Graph


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def pdim_bruteforce(n: int, edges) -> int:
    """Minimum number of proper colorings such that every non-adjacent pair
    shares a color somewhere but not everywhere (and n >= 2)."""
    edges = {tuple(sorted(e)) for e in edges}
    if n == 1:
        return 1
    nonedges = [p for p in combinations(range(n), 2) if p not in edges]
    if not nonedges:
        return 1
    bit = {p: 1 << i for i, p in enumerate(nonedges)}
    full = (1 << len(nonedges)) - 1
    masks = set()
    for part in set_partitions(range(n)):
        if any(tuple(sorted(p)) in edges for block in part for p in combinations(block, 2)):
            continue
        m = 0
        for block in part:
            for p in combinations(sorted(block), 2):
                m |= bit[p]
        masks.add(m)
    masks = sorted(masks)
    for l in range(2, n + 2):
        for combo in combinations_with_replacement(masks, l):
            union, inter = 0, full
            for m in combo:
                union |= m
                inter &= m
            if union == full and inter == 0:
                return l
    raise AssertionError("unreachable")


def canonical(n: int, edges) -> tuple:
    edges = [tuple(sorted(e)) for e in edges]
    best = None
    for perm in permutations(range(n)):
        form = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or form < best:
            best = form
    return (n, best)


@lru_cache(maxsize=None)
def pdim_canonical(form: tuple) -> int:
    n, edges = form
    return pdim_bruteforce(n, edges)


def all_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for bits in product((0, 1), repeat=len(pairs)):
        yield [p for p, b in zip(pairs, bits) if b]


def isomorphism_classes(max_n: int):
    """Representatives (n, edges) of every graph with 1 <= n <= max_n."""
    out = []
    for n in range(1, max_n + 1):
        seen = set()
        for edges in all_graphs(n):
            form = canonical(n, edges)
            if form not in seen:
                seen.add(form)
                out.append(form)
    return out


def treewidth_bruteforce(g: Graph) -> int:
    """Subset dynamic program over elimination prefixes.

    TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v)
    is the set of vertices outside S + v reachable from v through S.
    """
    verts = list(g.vertices)
    n = len(verts)
    if n == 0:
        return -1
    idx = {v: i for i, v in enumerate(verts)}
    nb = [sum(1 << idx[w] for w in g.neighbors(v)) for v in verts]

    def q(s, v):
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            u = stack.pop()
            for w in range(n):
                if nb[u] >> w & 1 and not seen >> w & 1:
                    seen |= 1 << w
                    if s >> w & 1:
                        stack.append(w)
                    else:
                        out += 1
        return out

    tw = {0: -1}
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            s = sum(1 << i for i in combo)
            tw[s] = min(max(tw[s & ~(1 << v)], q(s & ~(1 << v), v)) for v in combo)
    return tw[(1 << n) - 1]


def is_valid_naive(g: Graph, codes: dict, length: int) -> bool:
    verts = list(g.vertices)
    if set(codes) != set(verts):
        return False
    if any(len(c) != length for c in codes.values()):
        return False
    for u, v in combinations(verts, 2):
        a, b = codes[u], codes[v]
        differ_all = all(x != y for x, y in zip(a, b))
        if a == b or differ_all != g.has_edge(u, v):
            return False
    return True
