"""Randomized encoder for k-degenerate graphs.

Each coordinate is a random proper coloring from a palette of 3k colors,
drawn along a degeneracy order so every vertex has at least 2k admissible
colors.  A final coordinate holds the vertex id.  The batch is checked and
redrawn from the next seed until every non-adjacent pair agrees somewhere,
so the output is always valid and only the number of draws is random.

Randomness: numpy's PCG64, one child stream per coloring spawned from
``SeedSequence(seed)``.  A vertex takes the allowed color at index
``floor(u * len(allowed))`` of the sorted allowed list, where ``u`` is the
uniform drawn for its position in the order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encoding import Encoding, VerificationReport, verify_encoding
from .graph import Graph, back_degree, degeneracy_ordering

CONSTANT = 8.317


class PaletteTooSmall(ValueError):
    pass


class RetriesExhausted(RuntimeError):
    def __init__(self, msg: str, report: VerificationReport, retries: int):
        super().__init__(msg)
        self.report = report
        self.retries = retries


@dataclass(frozen=True)
class DegenerateParams:
    k: int | None = None  # None means the computed degeneracy
    seed: int = 0
    multiplier: float = 1.0
    max_retries: int = 64

    def __post_init__(self):
        if self.k is not None and self.k < 1:
            raise ValueError("k must be >= 1")
        if self.multiplier <= 0:
            raise ValueError("multiplier must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")


@dataclass
class DegenerateEncoding:
    encoding: Encoding
    k: int
    p: int
    retries: int
    seed: int  # seed of the accepted batch

    @property
    def dimension(self) -> int:
        return self.encoding.length

    @property
    def colors(self) -> int:
        return 3 * self.k


def coloring_count(n: int, k: int, multiplier: float = 1.0) -> int:
    base = math.ceil(CONSTANT * k * math.log2(n))
    return max(1, base if multiplier == 1 else math.ceil(multiplier * base))


def degenerate_bound(n: int, k: int) -> int:
    return coloring_count(n, k) + 1 if n >= 2 else 1


def constrained_random_coloring(
    g: Graph, order: list[int], colors: int, rng: np.random.Generator
) -> dict[int, int]:
    """Color along ``order``, each vertex uniform over the colors its earlier
    neighbors do not use."""
    if len(order) != g.n or set(order) != set(g.vertices):
        raise ValueError("order must list every vertex exactly once")
    bd = back_degree(g, order)
    if colors <= bd:
        raise PaletteTooSmall(f"{colors} colors cannot beat back-degree {bd}")
    u = rng.random(len(order))
    palette = range(colors)
    col: dict[int, int] = {}
    for x, v in zip(u.tolist(), order):
        used = {col[w] for w in g.neighbors(v) if w in col}
        allowed = [c for c in palette if c not in used]
        col[v] = allowed[int(x * len(allowed))]
    return col


def _draw(g: Graph, order, colors: int, p: int, seed: int) -> np.ndarray:
    """p colorings at once as a (p, n) array indexed by vertex position.

    Same streams and selection rule as :func:`constrained_random_coloring`,
    vectorised across the p colorings.
    """
    streams = np.random.SeedSequence(seed).spawn(p)
    n = len(order)
    u = np.stack([np.random.Generator(np.random.PCG64(s)).random(n) for s in streams])
    pos = g.ids
    out = np.full((p, n), -1, dtype=np.int64)
    rows = np.arange(p)
    done: set[int] = set()
    for step, v in enumerate(order):
        back = [pos[w] for w in g.neighbors(v) if w in done]
        used = np.zeros((p, colors), dtype=bool)
        for j in back:
            used[rows, out[:, j]] = True
        free = ~used
        idx = (u[:, step] * free.sum(axis=1)).astype(np.int64)
        # position of the (idx+1)-th free color in each row
        out[:, pos[v]] = np.argmax(np.cumsum(free, axis=1) > idx[:, None], axis=1)
        done.add(v)
    return out


def _trivial(g: Graph) -> Encoding:
    if g.n <= 1:
        return Encoding(1, {v: (0,) for v in g.vertices})
    return Encoding(2, {v: (0, v) for v in g.vertices})


def encode_degenerate(g: Graph, params: DegenerateParams | None = None) -> DegenerateEncoding:
    params = params or DegenerateParams()
    order, k0 = degeneracy_ordering(g)
    if params.k is not None and params.k < k0:
        raise ValueError(f"k = {params.k} is below the degeneracy {k0}")
    k = params.k if params.k is not None else max(k0, 1)
    if g.n <= 1 or g.m == 0:
        return DegenerateEncoding(_trivial(g), k, 0, 0, params.seed)
    p = coloring_count(g.n, k, params.multiplier)
    report = None
    for attempt in range(params.max_retries + 1):
        seed = params.seed + attempt
        rows = np.vstack([_draw(g, order, 3 * k, p, seed), np.array(g.vertices)[None, :]]).T.tolist()
        enc = Encoding(p + 1, dict(zip(g.vertices, rows)))
        report = verify_encoding(g, enc, cap=10)
        if report.valid:
            return DegenerateEncoding(enc, k, p, attempt, seed)
    raise RetriesExhausted(
        f"no valid batch in {params.max_retries + 1} draws", report, params.max_retries
    )
