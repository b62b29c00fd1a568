"""Readers and writers for graph and decomposition text formats.

Vertex ids are 0-indexed internally.  DIMACS and PACE files are 1-indexed
and converted at the boundary.
"""

from __future__ import annotations

from .graph import Graph
from .treedecomp import TreeDecomposition

FORMATS = ("edgelist", "dimacs", "pace-gr")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


class IndexOutOfRange(ParseError):
    pass


def _lines(text: str, comment: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith(comment):
            yield no, s.split()


def _ints(tokens, no):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", no) from None


class _Builder:
    def __init__(self, n: int, m: int | None, base: int, header_line: int):
        if n < 0 or (m is not None and m < 0):
            raise ParseError("negative count in header", header_line)
        self.n, self.m, self.base, self.header_line = n, m, base, header_line
        self.edges: set[tuple[int, int]] = set()

    def add(self, u: int, v: int, no: int):
        u -= self.base
        v -= self.base
        for x in (u, v):
            if not 0 <= x < self.n:
                raise IndexOutOfRange(f"vertex {x + self.base} outside 0..{self.n - 1 + self.base}", no)
        if u == v:
            raise ParseError(f"self-loop at vertex {u + self.base}", no)
        e = (min(u, v), max(u, v))
        if e in self.edges:
            raise ParseError(f"duplicate edge {u + self.base} {v + self.base}", no)
        self.edges.add(e)

    def done(self) -> Graph:
        if self.m is not None and len(self.edges) != self.m:
            raise ParseError(f"header declares {self.m} edges, found {len(self.edges)}", self.header_line)
        return Graph.from_edges(self.n, sorted(self.edges))


def _parse_edgelist(text: str) -> Graph:
    b = None
    for no, tok in _lines(text, "#"):
        vals = _ints(tok, no)
        if len(vals) != 2:
            raise ParseError("expected two integers", no)
        if b is None:
            b = _Builder(vals[0], vals[1], 0, no)
        else:
            b.add(*vals, no)
    if b is None:
        raise ParseError("missing 'n m' header")
    return b.done()


def _parse_prefixed(text: str, comment: str, problem: str, edge_tag: str | None) -> Graph:
    b = None
    for no, tok in _lines(text, comment):
        if tok[0] == "p":
            if b is not None:
                raise ParseError("second problem line", no)
            if len(tok) != 4 or tok[1] != problem:
                raise ParseError(f"expected 'p {problem} n m'", no)
            n, m = _ints(tok[2:], no)
            b = _Builder(n, m, 1, no)
            continue
        if b is None:
            raise ParseError("edge before problem line", no)
        if edge_tag is not None:
            if tok[0] != edge_tag:
                raise ParseError(f"unexpected line type {tok[0]!r}", no)
            tok = tok[1:]
        vals = _ints(tok, no)
        if len(vals) != 2:
            raise ParseError("expected two vertex indices", no)
        b.add(*vals, no)
    if b is None:
        raise ParseError("missing problem line")
    return b.done()


def parse_graph(data: bytes | str, fmt: str = "edgelist") -> Graph:
    """Parse ``data`` in one of ``FORMATS``; duplicates and self-loops are errors."""
    text = data.decode() if isinstance(data, bytes) else data
    if fmt == "edgelist":
        return _parse_edgelist(text)
    if fmt == "dimacs":
        return _parse_prefixed(text, "c", "edge", "e")
    if fmt == "pace-gr":
        return _parse_prefixed(text, "c", "tw", None)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def detect_format(text: str) -> str:
    for _, tok in _lines(text, "#"):
        if tok[0] == "c":
            continue
        if tok[0] == "p" and len(tok) > 1:
            return "pace-gr" if tok[1] == "tw" else "dimacs"
        return "edgelist"
    return "edgelist"


def format_graph(g: Graph, fmt: str = "edgelist") -> str:
    if list(g.vertices) != list(range(g.n)):
        raise ValueError("writers need vertex ids 0..n-1")
    edges = sorted(g.edges)
    if fmt == "edgelist":
        head, body = f"{g.n} {g.m}", [f"{u} {v}" for u, v in edges]
    elif fmt == "dimacs":
        head, body = f"p edge {g.n} {g.m}", [f"e {u + 1} {v + 1}" for u, v in edges]
    elif fmt == "pace-gr":
        head, body = f"p tw {g.n} {g.m}", [f"{u + 1} {v + 1}" for u, v in edges]
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return "\n".join([head, *body]) + "\n"


def parse_td(text: str) -> TreeDecomposition:
    """Read a PACE ``.td`` file.  The declared width is ignored."""
    header = None
    bags: dict[int, frozenset] = {}
    tree = set()
    for no, tok in _lines(text, "c"):
        if tok[0] == "s":
            if len(tok) != 5 or tok[1] != "td":
                raise ParseError("expected 's td <bags> <width+1> <n>'", no)
            header = (_ints(tok[2:], no), no)
        elif header is None:
            raise ParseError("line before solution header", no)
        elif tok[0] == "b":
            vals = _ints(tok[1:], no)
            if not vals:
                raise ParseError("bag line without index", no)
            idx, verts = vals[0], vals[1:]
            if not 1 <= idx <= header[0][0]:
                raise IndexOutOfRange(f"bag {idx} outside 1..{header[0][0]}", no)
            if idx - 1 in bags:
                raise ParseError(f"bag {idx} listed twice", no)
            if any(not 1 <= v <= header[0][2] for v in verts):
                raise IndexOutOfRange("bag vertex outside 1..n", no)
            bags[idx - 1] = frozenset(v - 1 for v in verts)
        else:
            vals = _ints(tok, no)
            if len(vals) != 2 or any(not 1 <= x <= header[0][0] for x in vals):
                raise ParseError("bad tree edge", no)
            i, j = vals[0] - 1, vals[1] - 1
            tree.add((min(i, j), max(i, j)))
    if header is None:
        raise ParseError("missing 's td' header")
    (nb, _, _), no = header
    if len(bags) != nb:
        raise ParseError(f"header declares {nb} bags, found {len(bags)}", no)
    return TreeDecomposition(bags, frozenset(tree))


def format_td(td: TreeDecomposition, n: int) -> str:
    ids = {b: i + 1 for i, b in enumerate(sorted(td.bags))}
    lines = [f"s td {len(ids)} {td.width + 1} {n}"]
    for b in sorted(td.bags):
        lines.append(" ".join(["b", str(ids[b]), *(str(v + 1) for v in sorted(td.bags[b]))]))
    for i, j in sorted(td.tree):
        lines.append(f"{ids[i]} {ids[j]}")
    return "\n".join(lines) + "\n"
