"""Pairs of orthogonal Latin squares and the t-coordinate code for 3K_t.

Only orders that are odd or divisible by 4 are built: odd orders by the
modular construction, powers of two over GF(2^a), and everything else as a
Kronecker product of those.  Orders that are 2 mod 4 are bumped to the next
(odd) order by :func:`choose_ols_order` instead of being constructed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class BadOrder(ValueError):
    pass


class PropertyViolation(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LatinSquare:
    cells: np.ndarray  # m x m, symbols 0..m-1

    @property
    def order(self) -> int:
        return self.cells.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, LatinSquare) and np.array_equal(self.cells, other.cells)

    def is_latin(self) -> bool:
        m = self.order
        c = self.cells
        if c.shape != (m, m):
            return False
        target = np.arange(m)
        return bool(
            np.array_equal(np.sort(c, axis=1), np.broadcast_to(target, (m, m)))
            and np.array_equal(np.sort(c, axis=0), np.broadcast_to(target[:, None], (m, m)))
        )


@dataclass(frozen=True)
class MolsPair:
    a: LatinSquare
    b: LatinSquare

    @property
    def order(self) -> int:
        return self.a.order


def mols_problems(pair: MolsPair) -> list[str]:
    """Every violated invariant of ``pair``; empty when the pair is sound."""
    problems = []
    a, b = pair.a.cells, pair.b.cells
    m = pair.order
    if b.shape != a.shape:
        return ["squares have different shapes"]
    if not pair.a.is_latin():
        problems.append("first square is not Latin")
    if not pair.b.is_latin():
        problems.append("second square is not Latin")
    if len(set(zip(a.ravel().tolist(), b.ravel().tolist()))) != m * m:
        problems.append("squares are not orthogonal")
    # row-meeting: row i of a and row j of b share a symbol in some column
    meets = (a[:, None, :] == b[None, :, :]).any(axis=2)
    if not meets.all():
        i, j = map(int, np.argwhere(~meets)[0])
        problems.append(f"row {i} of the first square never meets row {j} of the second")
    return problems


def _checked(pair: MolsPair) -> MolsPair:
    problems = mols_problems(pair)
    if problems:
        raise PropertyViolation("; ".join(problems))
    return pair


def mols_odd(m: int) -> MolsPair:
    """a[i][j] = i + j and b[i][j] = i + 2j, both mod m."""
    if m < 3 or m % 2 == 0:
        raise BadOrder(f"mols_odd needs an odd order >= 3, got {m}")
    i, j = np.indices((m, m))
    return _checked(MolsPair(LatinSquare((i + j) % m), LatinSquare((i + 2 * j) % m)))


def _gf2_mulmod(x: int, y: int, poly: int, degree: int) -> int:
    acc = 0
    while y:
        if y & 1:
            acc ^= x
        y >>= 1
        x <<= 1
        if x >> degree & 1:
            x ^= poly
    return acc


def _gf2_mod(x: int, y: int) -> int:
    dy = y.bit_length()
    while x.bit_length() >= dy:
        x ^= y << (x.bit_length() - dy)
    return x


def irreducible_poly(degree: int) -> int:
    """Smallest irreducible polynomial of ``degree`` over GF(2), as a bitmask."""
    for poly in range(1 << degree, 1 << (degree + 1)):
        if not poly & 1:
            continue
        if all(
            _gf2_mod(poly, d) != 0
            for d in range(2, 1 << (degree // 2 + 1))
        ):
            return poly
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


def mols_power_of_two(m: int) -> MolsPair:
    """Squares over GF(m): a[i][j] = i + j and b[i][j] = i + x*j."""
    a_exp = m.bit_length() - 1
    if m < 4 or m != 1 << a_exp:
        raise BadOrder(f"mols_power_of_two needs m = 2^a with a >= 2, got {m}")
    poly = irreducible_poly(a_exp)
    g = 2  # the class of x; neither 0 nor 1 in fields of order >= 4
    times_g = np.array([_gf2_mulmod(j, g, poly, a_exp) for j in range(m)])
    i, j = np.indices((m, m))
    return _checked(MolsPair(LatinSquare(i ^ j), LatinSquare(i ^ times_g[j])))


def mols_product(p: MolsPair, q: MolsPair) -> MolsPair:
    """Kronecker product; cell ((i1,i2),(j1,j2)) holds m2*p[i1][j1] + q[i2][j2]."""
    m2 = q.order

    def kron(x, y):
        return (x[:, None, :, None] * m2 + y[None, :, None, :]).reshape(
            x.shape[0] * m2, x.shape[1] * m2
        )

    return _checked(
        MolsPair(LatinSquare(kron(p.a.cells, q.a.cells)), LatinSquare(kron(p.b.cells, q.b.cells)))
    )


def mols(m: int) -> MolsPair:
    """Orthogonal pair of order ``m`` for m >= 3 odd or divisible by 4."""
    if m < 3 or m % 4 == 2:
        raise BadOrder(f"no construction for order {m}")
    two_part = m & -m
    odd_part = m // two_part
    if two_part == 1:
        return mols_odd(m)
    if odd_part == 1:
        return mols_power_of_two(m)
    return mols_product(mols_power_of_two(two_part), mols_odd(odd_part))


def choose_ols_order(c: int) -> int:
    """Smallest constructible order >= max(c, 3): odd or divisible by 4."""
    if c < 1:
        raise ValueError("color count must be >= 1")
    x = max(c, 3)
    return x if x % 2 == 1 or x % 4 == 0 else x + 1


@dataclass(frozen=True)
class TripleCliqueCode:
    """Codewords for three disjoint copies of K_t on t coordinates."""

    order: int
    codes: tuple  # codes[i][j] is the word of vertex j in copy i

    def word(self, copy: int, j: int) -> tuple[int, ...]:
        return self.codes[copy][j]


def triple_clique_problems(code: TripleCliqueCode) -> list[str]:
    t = code.order
    words = np.array([code.word(i, j) for i in range(3) for j in range(t)])
    eq = words[:, None, :] == words[None, :, :]
    agree = eq.any(axis=2)
    copy = np.repeat(np.arange(3), t)
    same_copy = copy[:, None] == copy[None, :]
    off_diag = ~np.eye(3 * t, dtype=bool)
    problems = []
    if (eq.all(axis=2) & off_diag).any():
        problems.append("codewords are not distinct")
    for x, y in np.argwhere(agree & same_copy & off_diag):
        if x < y:
            problems.append(f"{divmod(int(x), t)} and {divmod(int(y), t)} agree inside a copy")
    for x, y in np.argwhere(~agree & ~same_copy):
        if x < y:
            problems.append(f"{divmod(int(x), t)} and {divmod(int(y), t)} never agree")
    return problems


def encode_triple_clique(t: int, via: MolsPair | None = None) -> TripleCliqueCode:
    """Constant words for copy 0, rows of the two squares for copies 1 and 2.

    A constant word meets every Latin row since each row contains every
    symbol; rows of the two squares meet by the row-meeting property.
    """
    if t < 3:
        raise BadOrder(f"order must be >= 3, got {t}")
    via = via if via is not None else mols(t)
    if via.order != t:
        raise BadOrder(f"pair has order {via.order}, expected {t}")
    rows_a = [tuple(int(s) for s in row) for row in via.a.cells]
    rows_b = [tuple(int(s) for s in row) for row in via.b.cells]
    code = TripleCliqueCode(t, (tuple((j,) * t for j in range(t)), tuple(rows_a), tuple(rows_b)))
    problems = triple_clique_problems(code)
    if problems:
        raise PropertyViolation("; ".join(problems[:5]))
    return code


def format_pair(pair: MolsPair) -> str:
    """Two whitespace-separated grids, separated by a blank line."""
    def grid(sq):
        return "\n".join(" ".join(str(int(s)) for s in row) for row in sq.cells)

    return grid(pair.a) + "\n\n" + grid(pair.b) + "\n"


def parse_pair(text: str) -> MolsPair:
    rows = [list(map(int, line.split())) for line in text.splitlines() if line.strip()]
    if len(rows) % 2:
        raise ValueError("expected two square grids")
    m = len(rows) // 2
    if any(len(r) != m for r in rows):
        raise ValueError(f"expected rows of length {m}")
    return MolsPair(LatinSquare(np.array(rows[:m])), LatinSquare(np.array(rows[m:])))
