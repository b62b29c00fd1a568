"""Exact product dimension by exhaustive search, plus a greedy fallback."""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .encoding import Encoding
from .graph import Graph


class BudgetExceeded(RuntimeError):
    """Search ran out of time or dimension budget.

    ``witness`` is the best valid encoding known (not necessarily optimal)
    and ``lower_bound`` the smallest length not yet ruled out.
    """

    def __init__(self, msg: str, witness: Encoding | None = None, lower_bound: int = 1):
        super().__init__(msg)
        self.witness = witness
        self.lower_bound = lower_bound


@dataclass(frozen=True)
class SearchBudget:
    max_dimension: int | None = None  # None means n
    deadline_ms: float = 30_000.0

    def __post_init__(self):
        if self.max_dimension is not None and self.max_dimension < 1:
            raise ValueError("max_dimension must be >= 1")
        if self.deadline_ms <= 0:
            raise ValueError("deadline_ms must be positive")


class _Timeout(Exception):
    pass


def greedy_equivalence_encode(g: Graph) -> Encoding:
    """Cover the non-adjacent pairs with greedily built proper colorings.

    Each pass starts from singleton classes and walks the still uncovered
    non-adjacent pairs in id order, merging the two classes whenever the union
    stays independent.  A final coordinate holds the vertex id itself, which
    makes the map injective.
    """
    verts = g.vertices
    uncovered = {
        (u, v) for u, v in combinations(verts, 2) if not g.has_edge(u, v)
    }
    columns: list[dict[int, int]] = []
    while uncovered:
        rep = {v: v for v in verts}
        members = {v: {v} for v in verts}
        nbrs = {v: set(g.neighbors(v)) for v in verts}
        for u, v in sorted(uncovered):
            a, b = rep[u], rep[v]
            if a == b or nbrs[a] & members[b]:
                continue
            if len(members[a]) < len(members[b]):
                a, b = b, a
            for w in members[b]:
                rep[w] = a
            members[a] |= members.pop(b)
            nbrs[a] |= nbrs.pop(b)
        labels: dict[int, int] = {}
        col = {}
        for v in verts:
            col[v] = labels.setdefault(rep[v], len(labels))
        columns.append(col)
        uncovered = {(u, v) for u, v in uncovered if col[u] != col[v]}
    return Encoding(
        len(columns) + 1,
        {v: tuple(col[v] for col in columns) + (v,) for v in verts},
    )


def _search(g: Graph, l: int, deadline: float) -> Encoding | None:
    """Find an ``l``-encoding or prove none exists.

    Vertices get codewords in id order, one coordinate at a time.  Symmetry
    breaking: every coordinate's column is a restricted growth string (a new
    symbol is always the smallest unused one), and the columns are kept in
    non-decreasing lexicographic order.  Symbols never exceed n - 1 since a
    proper coloring of n vertices needs at most n colors.
    """
    verts = g.vertices
    n = len(verts)
    pos = g.ids
    prev_nb = [[pos[w] for w in g.neighbors(v) if pos[w] < i] for i, v in enumerate(verts)]
    prev_non = [
        [j for j in range(i) if not g.has_edge(verts[j], v)] for i, v in enumerate(verts)
    ]
    cols = [[0] * n for _ in range(l)]
    maxused = [-1] * l
    counter = [0]

    def place(i: int, ties: tuple) -> bool:
        if i == n:
            return True
        return choose(i, 0, prev_non[i], prev_non[i], ties, ())

    def choose(i, c, unagreed, identical, ties, new_ties) -> bool:
        counter[0] += 1
        if counter[0] & 0x3FF == 0 and time.monotonic() > deadline:
            raise _Timeout
        if c == l:
            if identical:
                return False
            return place(i + 1, new_ties)
        col = cols[c]
        forbidden = {col[j] for j in prev_nb[i]}
        hi = min(maxused[c] + 1, n - 1)
        lo = 0
        tied = c > 0 and ties[c - 1]
        if tied:
            lo = cols[c - 1][i]
        if c == l - 1 and unagreed:
            s = col[unagreed[0]]
            if any(col[j] != s for j in unagreed):
                return False
            candidates = [s] if lo <= s <= hi else []
        else:
            candidates = range(lo, hi + 1)
        for s in candidates:
            if s in forbidden:
                continue
            col[i] = s
            old = maxused[c]
            if s > old:
                maxused[c] = s
            t = new_ties + ((tied and cols[c - 1][i] == s),) if c > 0 else new_ties
            ok = choose(
                i,
                c + 1,
                [j for j in unagreed if col[j] != s],
                [j for j in identical if col[j] == s],
                ties,
                t,
            )
            maxused[c] = old
            if ok:
                return True
        return False

    if not place(0, (True,) * (l - 1)):
        return None
    return Encoding(l, {v: tuple(cols[c][i] for c in range(l)) for i, v in enumerate(verts)})


def pdim_exact(g: Graph, budget: SearchBudget | None = None) -> tuple[int, Encoding]:
    """Minimum encoding length of ``g`` together with a witness.

    Iterative deepening from the trivial lower bound; the greedy equivalence
    encoding supplies the upper bound, so lengths at or above it are never
    searched.
    """
    budget = budget or SearchBudget()
    n = g.n
    if n == 0:
        raise ValueError("pdim_exact needs at least one vertex")
    if n == 1:
        return 1, Encoding(1, {g.vertices[0]: (0,)})
    deadline = time.monotonic() + budget.deadline_ms / 1000.0
    max_dim = budget.max_dimension if budget.max_dimension is not None else n
    upper = greedy_equivalence_encode(g)
    complete = g.m == n * (n - 1) // 2
    lower = 1 if complete else 2
    for l in range(lower, min(upper.length - 1, max_dim) + 1):
        try:
            found = _search(g, l, deadline)
        except _Timeout:
            raise BudgetExceeded(
                f"deadline hit while searching length {l}", witness=upper, lower_bound=l
            ) from None
        if found is not None:
            return l, found
        lower = l + 1
    if upper.length <= max_dim:
        return upper.length, upper
    raise BudgetExceeded(
        f"no encoding of length <= {max_dim}", witness=upper, lower_bound=lower
    )


def encode_small(g: Graph, budget: SearchBudget | None = None) -> tuple[Encoding, bool]:
    """Encoding of a small graph and whether it is known to be optimal.

    Falls back to :func:`greedy_equivalence_encode` when the exact search
    exceeds its budget.
    """
    if g.n == 0:
        return Encoding(1, {}), True
    try:
        _, enc = pdim_exact(g, budget)
        return enc, True
    except BudgetExceeded as exc:
        return exc.witness, False
