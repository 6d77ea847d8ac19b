"""Exact integer lattices given by symmetric Gram matrices.

Everything here works on Python ints and ``fractions.Fraction``; there is no
floating point anywhere, so results are exact for any rank.

>>> discriminant_group(a2_lattice()).invariant_factors
(3,)
>>> inertia(k3_lattice())
Inertia(positive=3, negative=19, null=0)
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classification import InvariantPair, is_admissible

Matrix = tuple[tuple[int, ...], ...]

K3_RANK = 22


class LatticeError(ValueError):
    """Base class for lattice input and computation errors."""


class NonSymmetricError(LatticeError):
    pass


class DegenerateLatticeError(LatticeError):
    """The Gram matrix has determinant zero."""


class FixedLatticeRankError(LatticeError):
    """Rank is odd or exceeds the rank of the K3 lattice."""


class GramParseError(LatticeError):
    """Malformed Gram matrix document.

    ``position`` is either ``(line, column)`` for JSON syntax errors or a
    path such as ``gram[2][1]`` for structural errors.
    """

    def __init__(self, message: str, position: str):
        super().__init__(f"{position}: {message}")
        self.position = position


def _as_int(x, where: str) -> int:
    # bool is an int subclass; reject it along with floats
    if isinstance(x, bool) or not isinstance(x, int):
        raise LatticeError(f"{where}: expected integer, got {x!r}")
    return x


def _to_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(
        tuple(_as_int(x, f"[{i}][{j}]") for j, x in enumerate(row))
        for i, row in enumerate(rows)
    )


def _check_symmetric(m: Matrix) -> None:
    n = len(m)
    for i, row in enumerate(m):
        if len(row) != n:
            raise LatticeError(f"row {i} has length {len(row)}, expected {n}")
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise NonSymmetricError(
                    f"entry [{i}][{j}]={m[i][j]} differs from [{j}][{i}]={m[j][i]}"
                )


@dataclass(frozen=True)
class GramLattice:
    """Integer lattice presented by its symmetric Gram matrix."""

    gram: Matrix

    def __init__(self, gram: Sequence[Sequence[int]]):
        m = _to_matrix(gram)
        _check_symmetric(m)
        object.__setattr__(self, "gram", m)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def determinant(self) -> int:
        return determinant(self.gram)

    def __repr__(self) -> str:
        return f"GramLattice(rank={self.rank}, gram={[list(r) for r in self.gram]})"


@dataclass(frozen=True)
class DiscriminantGroup:
    """Finite abelian group as its invariant-factor chain d_1 | d_2 | ... ."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if any(d < 2 for d in fs):
            raise ValueError(f"invariant factors must be >= 2: {fs}")
        for d, e in zip(fs, fs[1:]):
            if e % d:
                raise ValueError(f"{d} does not divide {e}")

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def is_elementary(self, p: int) -> bool:
        """True if the group is (Z/p)^a for some a >= 0."""
        return all(d == p for d in self.invariant_factors)

    def __str__(self) -> str:
        if self.is_trivial:
            return "trivial"
        return " x ".join(f"Z{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    null: int

    @property
    def rank(self) -> int:
        return self.positive + self.negative + self.null

    def __add__(self, other: Inertia) -> Inertia:
        return Inertia(
            self.positive + other.positive,
            self.negative + other.negative,
            self.null + other.null,
        )

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.null)


@dataclass(frozen=True)
class SnfDecomposition:
    """``u @ a @ v == d`` with ``u``, ``v`` unimodular and ``d`` diagonal."""

    d: Matrix
    u: Matrix
    v: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i][i] for i in range(min(len(self.d), len(self.v))))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nonzero diagonal entries, 1s included."""
        return tuple(x for x in self.diagonal if x)


# -- constructors -----------------------------------------------------------

# Cartan matrix of E8, Bourbaki numbering: chain 1-3-4-5-6-7-8 with 2 on 4.
_E8_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]


def hyperbolic_plane() -> GramLattice:
    return GramLattice([[0, 1], [1, 0]])


def e8_lattice(negative: bool = False) -> GramLattice:
    g = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        g[i - 1][j - 1] = g[j - 1][i - 1] = -1
    lat = GramLattice(g)
    return rescale(lat, -1) if negative else lat


def a2_lattice(negative: bool = False) -> GramLattice:
    lat = GramLattice([[2, -1], [-1, 2]])
    return rescale(lat, -1) if negative else lat


def direct_sum(*lattices: GramLattice) -> GramLattice:
    n = sum(lat.rank for lat in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for lat in lattices:
        for i, row in enumerate(lat.gram):
            g[off + i][off : off + lat.rank] = row
        off += lat.rank
    return GramLattice(g)


def rescale(lat: GramLattice, factor: int) -> GramLattice:
    """Multiply the form by ``factor``; ``rescale(H, 3)`` is H(3)."""
    factor = _as_int(factor, "factor")
    if factor == 0:
        raise LatticeError("rescale factor must be nonzero")
    return GramLattice([[factor * x for x in row] for row in lat.gram])


def k3_lattice() -> GramLattice:
    """H^3 + (-E8)^2, rank 22, signature (3, 19), unimodular."""
    h = hyperbolic_plane()
    e = e8_lattice(negative=True)
    return direct_sum(h, h, h, e, e)


# -- exact linear algebra ---------------------------------------------------


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    a = [list(row) for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise LatticeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: Sequence[Sequence[int]]) -> SnfDecomposition:
    """Smith normal form ``u @ m @ v = d`` of a rectangular integer matrix.

    Each round moves the smallest nonzero entry of the remaining block into
    the pivot position, clears its row and column by Euclidean steps, and
    repairs divisibility of the rest of the block by folding an offending row
    into the pivot row.
    """
    a = [[_as_int(x, f"[{i}][{j}]") for j, x in enumerate(row)] for i, row in enumerate(m)]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise LatticeError("ragged matrix")
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])

        while True:
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            # remainders are smaller than |p|; bring the smallest to the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
            if cand:
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    freeze = lambda mat: tuple(tuple(r) for r in mat)  # noqa: E731
    return SnfDecomposition(d=freeze(a), u=freeze(u), v=freeze(v))


def discriminant_group(lat: GramLattice) -> DiscriminantGroup:
    """Dual lattice modulo the lattice, read off the Smith form of the Gram matrix."""
    if lat.determinant() == 0:
        raise DegenerateLatticeError("Gram matrix is degenerate (determinant 0)")
    snf = smith_normal_form(lat.gram)
    return DiscriminantGroup(tuple(d for d in snf.invariant_factors if d > 1))


def inertia(lat: GramLattice | Sequence[Sequence[int]]) -> Inertia:
    """Signature counts by symmetric Gaussian elimination over the rationals.

    A nonzero diagonal pivot contributes its sign. When the whole remaining
    diagonal is zero but some off-diagonal entry b is not, the 2x2 block
    [[0, b], [b, 0]] is split off instead and contributes (1, 1).
    """
    if isinstance(lat, GramLattice):
        gram = lat.gram
    else:
        gram = _to_matrix(lat)
        _check_symmetric(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    pos = neg = null = 0
    while a:
        n = len(a)
        piv = next((i for i in range(n) if a[i][i]), None)
        if piv is not None:
            p = a[piv][piv]
            if p > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(n) if i != piv]
            a = [[a[i][j] - a[i][piv] * a[piv][j] / p for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j]), None)
        if pair is None:
            null += n
            break
        i0, j0 = pair
        b = a[i0][j0]
        pos += 1
        neg += 1
        rest = [i for i in range(n) if i not in pair]
        # Schur complement with inverse block [[0, 1/b], [1/b, 0]]
        a = [
            [a[i][j] - (a[i][i0] * a[j0][j] + a[i][j0] * a[i0][j]) / b for j in rest]
            for i in rest
        ]
    return Inertia(pos, neg, null)


# -- fixed lattice invariants -----------------------------------------------

M_INTERPRETATION = (
    "m is read as half the rank of the orthogonal complement in the rank-22 "
    "K3 lattice: m = (22 - rank) / 2"
)


@dataclass(frozen=True)
class FixedLatticeReading:
    """The (m, a) reading of a candidate fixed lattice."""

    m: int
    a: int
    discriminant: DiscriminantGroup
    three_elementary: bool
    admissible: bool
    warnings: tuple[str, ...] = field(default=())

    @property
    def pair(self) -> InvariantPair:
        return InvariantPair(self.m, self.a)


def fixed_lattice_invariants(lat: GramLattice) -> FixedLatticeReading:
    if lat.rank % 2:
        raise FixedLatticeRankError(f"rank {lat.rank} is odd")
    if lat.rank > K3_RANK:
        raise FixedLatticeRankError(f"rank {lat.rank} exceeds {K3_RANK}")
    disc = discriminant_group(lat)
    m = (K3_RANK - lat.rank) // 2
    a = len(disc.invariant_factors)
    three = disc.is_elementary(3)
    admissible = three and m >= 1 and is_admissible(InvariantPair(m, a))
    warnings = []
    if not three:
        warnings.append(f"discriminant group {disc} is not 3-elementary")
    if not admissible:
        warnings.append(f"(m, a) = ({m}, {a}) is not an admissible pair")
    return FixedLatticeReading(m, a, disc, three, admissible, tuple(warnings))


# -- Gram matrix files ------------------------------------------------------


def parse_gram_json(text: str) -> GramLattice:
    """Parse ``{"gram": [[...], ...]}``; integers only, square and symmetric."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GramParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict) or "gram" not in doc:
        raise GramParseError('expected an object with key "gram"', "$")
    rows = doc["gram"]
    if not isinstance(rows, list):
        raise GramParseError("expected an array of arrays", "gram")
    n = len(rows)
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise GramParseError("expected an array", f"gram[{i}]")
        if len(row) != n:
            raise GramParseError(f"row has {len(row)} entries, matrix is not {n}x{n}", f"gram[{i}]")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise GramParseError(f"expected integer, got {json.dumps(x)}", f"gram[{i}][{j}]")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise GramParseError(
                    f"not symmetric: {rows[i][j]} != gram[{j}][{i}] = {rows[j][i]}",
                    f"gram[{i}][{j}]",
                )
    return GramLattice(rows)


def gram_to_json(lat: GramLattice) -> str:
    return json.dumps({"gram": [list(r) for r in lat.gram]})
