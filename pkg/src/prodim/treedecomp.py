"""Tree decompositions: construction, checking, normalization, splitting."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph, degeneracy_ordering


class InvalidInput(ValueError):
    pass


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class TreeDecomposition:
    bags: dict  # node index -> frozenset of vertices
    tree: frozenset = frozenset()  # edges (i, j) with i < j
    root: int | None = None
    normalized: bool = False

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {i: [] for i in self.bags}
        for i, j in sorted(self.tree):
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def rooted(self, root: int | None = None):
        """(parent, BFS order) for the tree hung from ``root``."""
        root = self.root if root is None else root
        adj = self.adjacency()
        parent = {root: None}
        order = [root]
        for u in order:
            for w in adj[u]:
                if w not in parent:
                    parent[w] = u
                    order.append(w)
        return parent, order


def _edge(i, j):
    return (i, j) if i < j else (j, i)


@dataclass
class TDReport:
    valid: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def validate(g: Graph, td: TreeDecomposition) -> TDReport:
    """Check the three decomposition conditions (plus normalization if claimed)."""
    problems: list[str] = []
    nodes = set(td.bags)
    if not nodes:
        return TDReport(False, ["decomposition has no nodes"])
    for i, j in td.tree:
        if i not in nodes or j not in nodes:
            problems.append(f"tree edge ({i}, {j}) uses an unknown node")
    if problems:
        return TDReport(False, problems)
    adj = td.adjacency()
    start = next(iter(nodes))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(td.tree) != len(nodes) - 1 or seen != nodes:
        problems.append("index graph is not a tree")
        return TDReport(False, problems)
    covered = set().union(*td.bags.values())
    for v in g.vertices:
        if v not in covered:
            problems.append(f"vertex {v} is in no bag")
    extra = covered - set(g.vertices)
    if extra:
        problems.append(f"bags mention unknown vertices {sorted(extra)[:5]}")
    holders: dict[int, list[int]] = {}
    for i, bag in td.bags.items():
        for v in bag:
            holders.setdefault(v, []).append(i)
    for u, v in sorted(g.edges):
        hu = set(holders.get(u, ()))
        if not any(i in hu for i in holders.get(v, ())):
            problems.append(f"edge ({u}, {v}) is in no bag")
    for v, hs in sorted(holders.items()):
        hs_set = set(hs)
        reach = {hs[0]}
        queue = deque([hs[0]])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w in hs_set and w not in reach:
                    reach.add(w)
                    queue.append(w)
        if reach != hs_set:
            problems.append(f"nodes holding vertex {v} are not connected")
    if td.normalized:
        if td.root not in nodes:
            problems.append("normalized decomposition has no valid root")
        else:
            if len(td.bags[td.root]) != 1 and g.n > 0:
                problems.append("root bag is not a singleton")
            parent, _ = td.rooted()
            for c, p in parent.items():
                if p is not None and len(td.bags[c] ^ td.bags[p]) != 1:
                    problems.append(f"bags of nodes {p} and {c} differ in more than one vertex")
    return TDReport(not problems, problems)


def from_elimination_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Decomposition whose bags are each vertex with its later fill neighbours."""
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    bags = {}
    parent = {}
    for i, v in enumerate(order):
        nb = adj.pop(v)
        for a in nb:
            adj[a].discard(v)
        for a, b in combinations(nb, 2):
            adj[a].add(b)
            adj[b].add(a)
        bags[i] = frozenset(nb | {v})
        if nb:
            parent[i] = min(pos[a] for a in nb)
    if not bags:
        return TreeDecomposition({0: frozenset()})
    roots = [i for i in bags if i not in parent]
    edges = {_edge(i, p) for i, p in parent.items()}
    edges |= {_edge(a, b) for a, b in zip(roots, roots[1:])}
    return TreeDecomposition(bags, frozenset(edges))


def min_fill_order(g: Graph) -> list[int]:
    """Greedy min-fill elimination ordering; ties go to the smallest id."""
    adj = {v: set(g.neighbors(v)) for v in g.vertices}

    def fill(v):
        nb = list(adj[v])
        return sum(1 for a, b in combinations(nb, 2) if b not in adj[a])

    current = {v: fill(v) for v in adj}
    heap = [(f, v) for v, f in current.items()]
    heapq.heapify(heap)
    order = []
    while heap:
        f, v = heapq.heappop(heap)
        if v not in adj or current[v] != f:
            continue
        order.append(v)
        nb = adj.pop(v)
        for a in nb:
            adj[a].discard(v)
        for a, b in combinations(nb, 2):
            adj[a].add(b)
            adj[b].add(a)
        touched = set(nb)
        for a in nb:
            touched |= adj[a]
        for u in touched:
            fu = fill(u)
            if fu != current[u]:
                current[u] = fu
                heapq.heappush(heap, (fu, u))
    return order


def decompose_heuristic(g: Graph) -> TreeDecomposition:
    td = from_elimination_order(g, min_fill_order(g))
    report = validate(g, td)
    assert report.valid, report.violations
    return td


def minor_min_width(g: Graph) -> int:
    """Treewidth lower bound: contract a min-degree vertex into its
    lowest-degree neighbour, recording the largest min degree seen."""
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    best = 0
    while len(adj) > 1:
        v = min(adj, key=lambda u: (len(adj[u]), u))
        best = max(best, len(adj[v]))
        nb = adj.pop(v)
        if not nb:
            continue
        u = min(nb, key=lambda w: (len(adj[w]), w))
        for w in nb:
            adj[w].discard(v)
        for w in nb - {u}:
            adj[w].add(u)
            adj[u].add(w)
    return best


def decompose_exact(g: Graph, max_vertices: int = 25) -> TreeDecomposition:
    """Width-optimal decomposition by search over eliminated vertex sets.

    For each candidate width k (from the degeneracy lower bound up to the
    min-fill upper bound) a depth-first search eliminates vertices whose
    current elimination degree is at most k, memoising eliminated sets that
    failed.  A simplicial vertex of small enough degree is always eliminated
    without branching, which is safe.
    """
    n = g.n
    if n > max_vertices:
        raise TooLarge(f"exact decomposition limited to {max_vertices} vertices, got {n}")
    heuristic = from_elimination_order(g, min_fill_order(g))
    if n == 0:
        return heuristic
    lower = max(degeneracy_ordering(g)[1], minor_min_width(g))
    upper = heuristic.width
    best = heuristic
    verts = g.vertices
    idx = g.ids
    adjm = [0] * n
    for u, v in g.edges:
        adjm[idx[u]] |= 1 << idx[v]
        adjm[idx[v]] |= 1 << idx[u]
    full = (1 << n) - 1

    def reach(S, v):
        seen = 1 << v
        out = 0
        stack = [v]
        while stack:
            u = stack.pop()
            nb = adjm[u] & ~seen
            seen |= nb
            out |= nb & ~S
            inside = nb & S
            while inside:
                low = inside & -inside
                stack.append(low.bit_length() - 1)
                inside ^= low
        return out

    def bits(mask):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    for k in range(lower, upper):
        failed: set[int] = set()

        def search(S):
            R = full & ~S
            if bin(R).count("1") <= k + 1:
                return list(bits(R))
            if S in failed:
                return None
            cands = []
            for v in bits(R):
                q = reach(S, v)
                d = bin(q).count("1")
                if d > k:
                    continue
                if all((reach(S, u) | (1 << u)) & q == q for u in bits(q)):
                    rest = search(S | (1 << v))
                    if rest is None:
                        failed.add(S)
                        return None
                    return [v] + rest
                cands.append((d, v))
            for _, v in sorted(cands):
                rest = search(S | (1 << v))
                if rest is not None:
                    return [v] + rest
            failed.add(S)
            return None

        found = search(0)
        if found is not None:
            best = from_elimination_order(g, [verts[i] for i in found])
            break
    report = validate(g, best)
    assert report.valid, report.violations
    return best


def normalize(g: Graph, td: TreeDecomposition) -> TreeDecomposition:
    """Rooted decomposition with a singleton root and one-vertex steps.

    The root is a chain growing the smallest bag one vertex at a time; every
    tree edge becomes a chain that first drops and then adds vertices, so no
    intermediate bag is larger than its endpoints.  Adjacent disjoint bags
    keep one vertex alive across the switch when the width allows it.
    """
    report = validate(g, td)
    if not report.valid:
        raise InvalidInput("; ".join(report.violations[:5]))
    width = td.width
    start = min(td.bags, key=lambda i: (len(td.bags[i]), i))
    parent, order = td.rooted(start)
    bags: dict[int, frozenset] = {}
    edges: set[tuple[int, int]] = set()

    def new(bag, prev):
        k = len(bags)
        bags[k] = frozenset(bag)
        if prev is not None:
            edges.add((prev, k))
        return k

    root_bag = sorted(td.bags[start])
    node = new(root_bag[:1], None)
    for i in range(2, len(root_bag) + 1):
        node = new(root_bag[:i], node)
    image = {start: node}
    for c in order[1:]:
        p = parent[c]
        cur = set(td.bags[p])
        target = td.bags[c]
        node = image[p]
        drop = sorted(cur - target)
        add = sorted(target - cur)
        if drop and add and not (cur & target) and width >= 1:
            keep = drop.pop()
            for v in drop:
                cur.discard(v)
                node = new(cur, node)
            cur.add(add[0])
            node = new(cur, node)
            cur.discard(keep)
            node = new(cur, node)
            add = add[1:]
        else:
            for v in drop:
                cur.discard(v)
                node = new(cur, node)
        for v in add:
            cur.add(v)
            node = new(cur, node)
        image[c] = node
    out = TreeDecomposition(bags, frozenset(edges), root=0, normalized=True)
    report = validate(g, out)
    assert report.valid, report.violations
    return out


def restrict(g: Graph, td: TreeDecomposition, x) -> TreeDecomposition:
    """Decomposition of g[x]: bags intersected with x, empty nodes contracted."""
    xs = frozenset(x)
    bags = {i: b & xs for i, b in td.bags.items()}
    adj = {i: set(ns) for i, ns in td.adjacency().items()}
    for e in sorted(i for i, b in bags.items() if not b):
        if len(bags) == 1:
            break
        nbs = adj.pop(e)
        del bags[e]
        if not nbs:
            continue
        keep = min(nbs, key=lambda j: (not bags[j], j))
        for j in nbs:
            adj[j].discard(e)
            if j != keep:
                adj[j].add(keep)
                adj[keep].add(j)
    edges = frozenset(_edge(i, j) for i, ns in adj.items() for j in ns)
    return TreeDecomposition(bags, edges)


@dataclass(frozen=True)
class BagSplit:
    l: int
    bag: frozenset
    parts: tuple[frozenset, ...]


def find_split_bag(g: Graph, ntd: TreeDecomposition) -> BagSplit:
    """Bag whose removal leaves at most three parts of size <= (n - |X_l| + 1) / 2.

    The bag minimises the largest vertex set hanging off one of its tree
    directions (ties: smaller bag, then smaller index); those sets are then
    packed first-fit decreasing under the cap, and while more than three
    bins remain the two smallest are merged, which always fits by pigeonhole.
    """
    if not ntd.normalized or ntd.root is None:
        raise InvalidInput("find_split_bag needs a normalized decomposition")
    n = g.n
    parent, order = ntd.rooted()
    depth = {ntd.root: 0}
    for u in order[1:]:
        depth[u] = depth[parent[u]] + 1
    top: dict[int, int] = {}
    for i in order:
        for v in ntd.bags[i]:
            if v not in top:
                top[v] = i
    below = dict.fromkeys(order, 0)
    for i in top.values():
        below[i] += 1
    children: dict[int, list[int]] = {i: [] for i in order}
    for u in reversed(order):
        p = parent[u]
        if p is not None:
            below[p] += below[u]
            children[p].append(u)

    def largest(i):
        inside = sum(below[c] for c in children[i])
        up = n - len(ntd.bags[i]) - inside
        return max([up] + [below[c] for c in children[i]])

    l = min(order, key=lambda i: (largest(i), len(ntd.bags[i]), i))
    bag = ntd.bags[l]
    owner: dict[int, int] = {}
    for c in children[l]:
        stack = [c]
        while stack:
            u = stack.pop()
            owner[u] = c
            stack.extend(children[u])
    groups: dict[int, set] = {}
    for v, i in top.items():
        if v in bag:
            continue
        groups.setdefault(owner.get(i, -1), set()).add(v)
    pieces = sorted(groups.values(), key=lambda s: (-len(s), min(s)))
    cap = (n - len(bag) + 1) / 2
    bins: list[set] = []
    for piece in pieces:
        for b in bins:
            if len(b) + len(piece) <= cap:
                b |= piece
                break
        else:
            bins.append(set(piece))
    while len(bins) > 3:
        bins.sort(key=lambda b: (len(b), min(b)))
        bins = [bins[0] | bins[1]] + bins[2:]
    parts = tuple(
        frozenset(b) for b in sorted(bins, key=lambda b: (-len(b), min(b)))
    )
    if any(len(p) > cap for p in parts):
        raise InvalidInput("no balanced split bag; is the decomposition valid and normalized?")
    return BagSplit(l, bag, parts)
