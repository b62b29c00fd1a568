"""Encodings: injective maps from vertices to integer tuples.

An encoding of ``g`` is valid when distinct vertices get distinct tuples and
two vertices are adjacent exactly when their tuples differ in every
coordinate.  Equivalently, each coordinate is a proper coloring of ``g``, and
every non-adjacent pair shares a color somewhere but not everywhere.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .graph import Graph


class DomainMismatch(ValueError):
    pass


class NonInjectiveMapping(ValueError):
    pass


class TargetsClashInCoordinate(ValueError):
    pass


class Encoding:
    """Fixed-length integer tuples keyed by vertex id."""

    __slots__ = ("length", "codes")

    def __init__(self, length: int, codes: Mapping[int, Sequence[int]]):
        if length < 1:
            raise ValueError("encoding length must be >= 1")
        out = {}
        for v, code in codes.items():
            code = tuple(int(s) for s in code)
            if len(code) != length:
                raise ValueError(f"vertex {v}: code {code} has length != {length}")
            if any(s < 0 for s in code):
                raise ValueError(f"vertex {v}: negative symbol in {code}")
            out[int(v)] = code
        self.length = length
        self.codes = out

    @property
    def vertices(self) -> list[int]:
        return sorted(self.codes)

    def __getitem__(self, v: int) -> tuple[int, ...]:
        return self.codes[v]

    def __len__(self) -> int:
        return len(self.codes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Encoding):
            return NotImplemented
        return self.length == other.length and self.codes == other.codes

    def __repr__(self) -> str:
        return f"Encoding(length={self.length}, n={len(self.codes)})"

    def column(self, c: int) -> dict[int, int]:
        return {v: code[c] for v, code in self.codes.items()}

    def restrict(self, vertices) -> "Encoding":
        return Encoding(self.length, {v: self.codes[v] for v in vertices})


class Reason(str, enum.Enum):
    NOT_INJECTIVE = "NotInjective"
    EDGE_AGREES = "EdgeAgrees"
    NON_EDGE_DISAGREES = "NonEdgeDisagreesEverywhere"


@dataclass(frozen=True)
class Violation:
    u: int
    v: int
    reason: Reason


@dataclass
class VerificationReport:
    valid: bool
    violations: list[Violation] = field(default_factory=list)
    truncated: bool = False

    def __bool__(self) -> bool:
        return self.valid


def _bits(mask: int, limit_from: int = 0):
    """Indices of set bits of ``mask`` that are >= limit_from, increasing."""
    mask >>= limit_from
    i = limit_from
    while mask:
        low = mask & -mask
        i += low.bit_length() - 1
        yield i
        mask >>= low.bit_length()
        i += 1


def verify_encoding(g: Graph, e: Encoding, cap: int = 100) -> VerificationReport:
    """Check ``e`` against ``g``, listing at most ``cap`` offending pairs.

    Uses one bitset per (coordinate, symbol) class, so the cost is about
    n * l big-integer operations of n bits each instead of n^2 * l tuple
    comparisons.  The verdict always reflects every pair.
    """
    if set(e.codes) != set(g.vertices):
        raise DomainMismatch("encoding domain differs from the vertex set")
    verts = g.vertices
    n = len(verts)
    index = g.ids
    l = e.length
    classes: list[dict[int, int]] = [dict() for _ in range(l)]
    for i, v in enumerate(verts):
        bit = 1 << i
        for c, s in enumerate(e.codes[v]):
            cls = classes[c]
            cls[s] = cls.get(s, 0) | bit
    full = (1 << n) - 1
    violations: list[Violation] = []
    valid = True
    truncated = False

    def record(i, mask, reason):
        nonlocal truncated
        for j in _bits(mask, i + 1):
            if len(violations) >= cap:
                truncated = True
                return
            violations.append(Violation(verts[i], verts[j], reason))

    for i, v in enumerate(verts):
        code = e.codes[v]
        any_agree = 0
        all_agree = full
        for c, s in enumerate(code):
            m = classes[c][s]
            any_agree |= m
            all_agree &= m
        bit = 1 << i
        nbrs = 0
        for w in g.neighbors(v):
            nbrs |= 1 << index[w]
        higher = full ^ ((bit << 1) - 1)
        same = all_agree & higher
        edge_agree = any_agree & nbrs & higher
        lonely = full & ~any_agree & ~nbrs & higher
        if same or edge_agree or lonely:
            valid = False
            if not truncated:
                record(i, same, Reason.NOT_INJECTIVE)
                record(i, edge_agree, Reason.EDGE_AGREES)
                record(i, lonely, Reason.NON_EDGE_DISAGREES)
    return VerificationReport(valid, violations, truncated)


def verify_as_colorings(g: Graph, e: Encoding) -> bool:
    """Pairwise check of the proper-colorings formulation.

    Deliberately naive; used to cross-check :func:`verify_encoding`.
    """
    if set(e.codes) != set(g.vertices):
        raise DomainMismatch("encoding domain differs from the vertex set")
    for c in range(e.length):
        if any(e.codes[u][c] == e.codes[v][c] for u, v in g.edges):
            return False
    for u, v in combinations(g.vertices, 2):
        if g.has_edge(u, v):
            continue
        agree = [a == b for a, b in zip(e.codes[u], e.codes[v])]
        if not any(agree) or all(agree):
            return False
    return True


def is_valid(g: Graph, e: Encoding) -> bool:
    return verify_encoding(g, e, cap=0).valid


def pad_encoding(e: Encoding, q: int) -> Encoding:
    """Lengthen to ``q`` by repeating the last coordinate."""
    if q < e.length:
        raise ValueError(f"cannot pad length {e.length} down to {q}")
    extra = q - e.length
    return Encoding(q, {v: code + (code[-1],) * extra for v, code in e.codes.items()})


def rename_coordinate(e: Encoding, coord: int, mapping: Mapping[int, int]) -> Encoding:
    """Apply a symbol renaming to one coordinate; unmapped symbols are kept."""
    used = {code[coord] for code in e.codes.values()}
    images = [mapping.get(s, s) for s in used]
    if len(set(images)) != len(images):
        raise NonInjectiveMapping(f"mapping is not injective on coordinate {coord}")
    codes = {}
    for v, code in e.codes.items():
        s = code[coord]
        codes[v] = code[:coord] + (mapping.get(s, s),) + code[coord + 1 :]
    return Encoding(e.length, codes)


def align_on_subset(e: Encoding, targets: Mapping[int, int]) -> Encoding:
    """Rename every coordinate so that target ``v`` reads ``(targets[v],)*l``.

    In each coordinate the target vertices' symbols go to their prescribed
    values and every other symbol ``s`` goes to ``s + offset`` with offset
    chosen above all prescribed values, so the renaming is injective.
    """
    if not targets:
        return e
    values = list(targets.values())
    if len(set(values)) != len(values):
        raise TargetsClashInCoordinate("prescribed values are not distinct")
    offset = len(e.codes) + max(values) + 1
    codes = {v: list(code) for v, code in e.codes.items()}
    for c in range(e.length):
        rename: dict[int, int] = {}
        for v, val in targets.items():
            s = e.codes[v][c]
            if s in rename:
                raise TargetsClashInCoordinate(f"two targets share symbol {s} in coordinate {c}")
            rename[s] = val
        for v, code in codes.items():
            s = e.codes[v][c]
            code[c] = rename.get(s, s + offset)
    return Encoding(e.length, codes)


def is_well_begun(g: Graph, e: Encoding, chi: int) -> bool:
    return all(code[0] < chi for code in e.codes.values())


# JSON wire format: {"n": int, "l": int, "codes": [[int, ...], ...]} by vertex id

def encoding_to_dict(e: Encoding) -> dict:
    n = len(e.codes)
    if set(e.codes) != set(range(n)):
        raise DomainMismatch("JSON form needs vertex ids 0..n-1")
    return {"n": n, "l": e.length, "codes": [list(e.codes[v]) for v in range(n)]}


def encoding_from_dict(d: Mapping) -> Encoding:
    n, l, rows = int(d["n"]), int(d["l"]), d["codes"]
    if len(rows) != n:
        raise ValueError(f"expected {n} codes, got {len(rows)}")
    return Encoding(l, {v: row for v, row in enumerate(rows)})


def dumps(e: Encoding, meta: Mapping | None = None) -> str:
    d = encoding_to_dict(e)
    if meta:
        d["meta"] = dict(meta)
    return json.dumps(d, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> Encoding:
    return encoding_from_dict(json.loads(text))
