"""Admissible invariant pairs (m, a) and the topology of the fixed locus.

A K3 surface with a non-symplectic automorphism of order three has a fixed
lattice described by two integers (m, a). There are 24 admissible pairs; each
one fixes the shape of the fixed locus of the automorphism.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

K3_EULER = 24


class InadmissiblePairError(ValueError):
    def __init__(self, pair, reasons=()):
        self.pair = pair
        self.reasons = tuple(reasons)
        msg = f"(m, a) = ({pair[0]}, {pair[1]}) is not admissible"
        if self.reasons:
            msg += ": " + "; ".join(self.reasons)
        super().__init__(msg)


class InvariantPair(NamedTuple):
    """Value type ordered by (m, a)."""

    m: int
    a: int

    def __str__(self) -> str:
        return f"({self.m},{self.a})"


ADMISSIBLE_PAIRS: tuple[InvariantPair, ...] = tuple(
    InvariantPair(m, a)
    for m, a in [
        (1, 1), (2, 0), (2, 2), (3, 1), (3, 3), (4, 2), (4, 4), (5, 1),
        (5, 3), (5, 5), (6, 0), (6, 2), (6, 4), (6, 6), (7, 1), (7, 3),
        (7, 5), (7, 7), (8, 2), (8, 4), (9, 1), (9, 3), (10, 0), (10, 2),
    ]
)
_ADMISSIBLE_SET = frozenset(ADMISSIBLE_PAIRS)


def admissible_pairs() -> list[InvariantPair]:
    return sorted(ADMISSIBLE_PAIRS)


def is_admissible(p) -> bool:
    return tuple(p) in _ADMISSIBLE_SET


def pair_violations(p) -> list[str]:
    """Human-readable reasons a pair fails the structural constraints."""
    m, a = p
    out = []
    if (m + a) % 2:
        out.append(f"parity: m + a = {m + a} is odd")
    if not 1 <= m <= 10:
        out.append(f"m = {m} outside 1..10")
    if not 0 <= a <= m:
        out.append(f"a = {a} outside 0..m")
    if not out and not is_admissible(p):
        out.append("not in the table of admissible pairs")
    return out


def nearest_admissible(p, count: int = 3) -> list[InvariantPair]:
    m, a = p
    return sorted(ADMISSIBLE_PAIRS, key=lambda q: ((q.m - m) ** 2 + (q.a - a) ** 2, q))[:count]


def require_admissible(p) -> InvariantPair:
    p = InvariantPair(*p)
    if not is_admissible(p):
        raise InadmissiblePairError(p, pair_violations(p))
    return p


class Shape(enum.Enum):
    GENERIC = "Generic"
    THREE_ISOLATED_POINTS = "ThreeIsolatedPoints"


@dataclass(frozen=True)
class FixedLocusTopology:
    """Isolated points, k rational curves and one genus-g curve, or three points.

    ``chi`` is supplied as 24 - 3m and checked against the value implied by
    the counts.
    """

    shape: Shape
    n: int
    k: int
    g: int | None
    chi: int

    def __post_init__(self):
        if self.chi != self.chi_from_counts():
            raise AssertionError(
                f"fixed-locus Euler characteristic {self.chi_from_counts()} "
                f"from counts disagrees with {self.chi}"
            )

    def chi_from_counts(self) -> int:
        if self.shape is Shape.THREE_ISOLATED_POINTS:
            return self.n
        return self.n + 2 * self.k + (2 - 2 * self.g)

    @property
    def curve_genera(self) -> list[int]:
        """Genus of every fixed curve: k rational ones, then the genus-g curve."""
        if self.shape is Shape.THREE_ISOLATED_POINTS:
            return []
        return [0] * self.k + [self.g]


def fixed_locus(p) -> FixedLocusTopology:
    m, a = require_admissible(p)
    chi = K3_EULER - 3 * m
    # the generic formulas would give k = -1 here
    if (m, a) == (7, 7):
        return FixedLocusTopology(Shape.THREE_ISOLATED_POINTS, n=3, k=0, g=None, chi=chi)
    return FixedLocusTopology(
        Shape.GENERIC, n=10 - m, k=6 - (m + a) // 2, g=(m - a) // 2, chi=chi
    )


class TangentKind(enum.Enum):
    ISOLATED_POINT = "IsolatedPoint"
    ON_CURVE = "OnCurve"


@dataclass(frozen=True)
class TangentAction:
    """Diagonal action on T_pS as exponents of a primitive cube root of unity."""

    kind: TangentKind
    weights: tuple[int, int]


_TANGENT_WEIGHTS = {
    TangentKind.ISOLATED_POINT: (2, 2),
    TangentKind.ON_CURVE: (1, 0),
}


def tangent_action(kind: TangentKind) -> TangentAction:
    kind = TangentKind(kind)
    return TangentAction(kind, _TANGENT_WEIGHTS[kind])
