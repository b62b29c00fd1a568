"""Divide-and-conquer encoder for graphs of bounded treewidth.

A balanced bag S of a normalized tree decomposition splits the graph into at
most three parts.  Each part together with S, with S turned into a clique,
is encoded recursively.  The piece encodings are renamed so every vertex of
S reads as its own id in every coordinate, and a suffix is appended: for a
vertex outside S, the codeword of (piece index, color) in a code for three
disjoint cliques built from two orthogonal Latin squares; for a vertex of S,
its codeword in a separate encoding of g[S] on a disjoint alphabet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .encoding import Encoding, align_on_subset, pad_encoding, verify_encoding
from .exact import SearchBudget, encode_small
from .graph import Graph, degeneracy_ordering, greedy_coloring, induced_subgraph, with_clique
from .latin import TripleCliqueCode, choose_ols_order, encode_triple_clique
from .treedecomp import (
    InvalidInput,
    TreeDecomposition,
    decompose_exact,
    decompose_heuristic,
    find_split_bag,
    normalize,
    restrict,
    validate,
)

EXACT_DECOMPOSITION_LIMIT = 25


class PiecesDisagreeOnS(ValueError):
    pass


class InvalidPieceEncoding(ValueError):
    pass


@dataclass
class GeneralAmalgamationPlan:
    """Inputs for gluing up to three pieces along a shared vertex set ``s``.

    ``pieces`` are the clique-filled piece graphs with their encodings,
    ``coloring`` a proper coloring of the graph minus ``s`` and ``phi_s`` an
    encoding of the graph induced by ``s`` (None when ``s`` is empty).
    """

    s: frozenset
    pieces: list[tuple[Graph, Encoding]]
    coloring: dict[int, int]
    phi_s: Encoding | None = None

    @property
    def colors(self) -> int:
        return max(self.coloring.values(), default=0) + 1

    @property
    def ols_order(self) -> int:
        return choose_ols_order(self.colors)

    @property
    def l_s(self) -> int:
        return self.phi_s.length if self.phi_s is not None and self.s else 0

    @property
    def m_pad(self) -> int:
        return max(self.ols_order, self.l_s)

    def triple(self) -> TripleCliqueCode:
        return encode_triple_clique(self.ols_order)


def amalgamate_general(plan: GeneralAmalgamationPlan, check: bool = True) -> Encoding:
    """Combine piece encodings into one encoding of the union graph."""
    s = plan.s
    if not 1 <= len(plan.pieces) <= 3:
        raise ValueError("need between one and three pieces")
    outside = [set(gr.vertices) - s for gr, _ in plan.pieces]
    for i, (gr, enc) in enumerate(plan.pieces):
        if not s <= set(gr.vertices):
            raise ValueError(f"piece {i} does not contain the shared set")
        for j in range(i):
            if outside[i] & outside[j]:
                raise ValueError(f"pieces {j} and {i} overlap outside the shared set")
        if check and not verify_encoding(gr, enc, cap=0).valid:
            raise InvalidPieceEncoding(f"piece {i} encoding is not valid for its graph")
    L = max(enc.length for _, enc in plan.pieces)
    targets = {v: v for v in s}
    aligned = [align_on_subset(pad_encoding(enc, L), targets) for _, enc in plan.pieces]
    for v in s:
        if any(a.codes[v] != aligned[0].codes[v] for a in aligned[1:]):
            raise PiecesDisagreeOnS(f"pieces disagree on shared vertex {v}")
    m_pad = plan.m_pad
    triple = plan.triple()
    m = triple.order

    def padded(word):
        return word + (word[-1],) * (m_pad - len(word))

    codes: dict[int, tuple[int, ...]] = {}
    for i in range(len(plan.pieces)):
        for x in outside[i]:
            codes[x] = aligned[i].codes[x] + padded(triple.word(i, plan.coloring[x]))
    for x in s:
        word = tuple(sym + m for sym in plan.phi_s.codes[x])
        codes[x] = aligned[0].codes[x] + padded(word)
    return Encoding(L + m_pad, codes)


@dataclass
class TreewidthEncoding:
    encoding: Encoding
    width: int
    bound: float
    bound_certified: bool
    source: str  # where the decomposition came from
    levels: int = 0
    fallbacks: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return self.encoding.length


def treewidth_bound(n: int, t: int) -> float:
    return (t + 2) * (math.log2(n) + 1) if n >= 1 else float(t + 2)


def _edgeless(g: Graph) -> Encoding:
    if g.n <= 1:
        return Encoding(1, {v: (0,) for v in g.vertices})
    return Encoding(2, {v: (0, v) for v in g.vertices})


class _Run:
    def __init__(self, t: int, budget: SearchBudget | None):
        self.t = t
        self.budget = budget
        self.fallbacks = 0
        self.levels = 0

    def small(self, g: Graph) -> Encoding:
        enc, exact = encode_small(g, self.budget)
        if not exact:
            self.fallbacks += 1
        return enc

    def encode(self, g: Graph, ntd: TreeDecomposition, depth: int) -> Encoding:
        self.levels = max(self.levels, depth)
        if g.m == 0:
            return _edgeless(g)
        if g.n <= self.t + 3:
            return self.small(g)
        split = find_split_bag(g, ntd)
        s = split.bag
        pieces = []
        for part in split.parts:
            keep = part | s
            piece = with_clique(induced_subgraph(g, keep), s)
            sub_td = normalize(piece, restrict(g, ntd, keep))
            pieces.append((piece, self.encode(piece, sub_td, depth + 1)))
        rest = induced_subgraph(g, set(g.vertices) - s)
        order, _ = degeneracy_ordering(rest)
        coloring = greedy_coloring(rest, order)
        phi_s = self.small(induced_subgraph(g, s)) if s else None
        plan = GeneralAmalgamationPlan(s, pieces, coloring, phi_s)
        return amalgamate_general(plan, check=False)


def encode_treewidth(
    g: Graph,
    td: TreeDecomposition | None = None,
    budget: SearchBudget | None = None,
) -> TreewidthEncoding:
    """Encode ``g`` with length at most (t + 2)(log2 n + 1), t the width used.

    Without a supplied decomposition, an exact one is computed for up to 25
    vertices and a min-fill one beyond.  ``bound_certified`` is False when
    some small-graph search hit its budget and a greedy encoding stood in.
    """
    n = g.n
    if td is not None:
        report = validate(g, td)
        if not report.valid:
            raise InvalidInput("; ".join(report.violations[:5]))
        source = "supplied"
    elif n <= EXACT_DECOMPOSITION_LIMIT:
        td = decompose_exact(g)
        source = "exact"
    else:
        td = decompose_heuristic(g)
        source = "min-fill"
    t = max(td.width, 0)
    bound = treewidth_bound(n, t)
    if g.m == 0:
        return TreewidthEncoding(_edgeless(g), t, bound, True, source)
    run = _Run(t, budget)
    enc = run.encode(g, normalize(g, td), 0)
    certified = run.fallbacks == 0
    notes = []
    if certified and enc.length > bound:
        certified = False
        notes.append(f"length {enc.length} exceeds bound {bound:.3f}")
    return TreewidthEncoding(enc, t, bound, certified, source, run.levels, run.fallbacks, notes)
