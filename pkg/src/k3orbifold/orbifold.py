"""Invariant-level model of the orbifold construction.

S x P^1 is divided by rho x psi, where psi(z) = zeta^2 z. The singularities
over z = 0 are resolved crepantly, and then a threefold cover branched along
a K3 fibre D0 is taken. Each stage's Euler characteristic is computed two
ways:

* ``ClosedForm``: the printed closed forms 48 - m, 96 - 7m, 240 - 21m.
* ``FirstPrinciples``: the quotient formula, the resolution increment and the
  branched-cover formula, evaluated directly from the fixed-locus data.

The two disagree from the quotient stage onward. Reports carry both and flag
every stage where they differ.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classification import (
    K3_EULER,
    FixedLocusTopology,
    InvariantPair,
    Shape,
    TangentKind,
    fixed_locus,
    require_admissible,
    tangent_action,
)

CHI_P1 = 2
CHI_PRODUCT = K3_EULER * CHI_P1  # chi(S x P^1)
# D0 is the preimage of a generic fibre S x {z}, a K3 surface
CHI_D0 = K3_EULER
COVER_DEGREE = 3
CHI_P2 = 3
# two P^1s meeting in a point
CHI_A2_FIBRE = 3

# psi acts on T_0 P^1 by zeta^2 and on T_inf P^1 by zeta
PSI_WEIGHT = {"zero": 2, "infinity": 1}

STAGES = ("product", "Z", "X0", "X")


class InconsistencyError(ArithmeticError):
    """An exact computation produced a value the construction cannot have."""


# -- singularity types ------------------------------------------------------


class Carrier(enum.Enum):
    ISOLATED_POINT = "IsolatedPoint"
    CURVE = "Curve"


def canonical_weights(weights: Sequence[int]) -> tuple[int, int, int]:
    """Canonical representative of 1/3(a,b,c) up to reordering and generator choice.

    Both generators g and g^2 are sorted descending and the lexicographically
    larger triple wins.
    """
    w = tuple(int(x) % 3 for x in weights)
    if len(w) != 3:
        raise ValueError(f"expected three weights, got {weights!r}")
    first = tuple(sorted(w, reverse=True))
    second = tuple(sorted(((2 * x) % 3 for x in w), reverse=True))
    return max(first, second)


@dataclass(frozen=True)
class SingularityType:
    """Quotient singularity C^3 / Z3 with diagonal weights, stored canonically."""

    weights: tuple[int, int, int]
    carrier: Carrier
    written: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        raw = tuple(self.weights)
        if all(x % 3 == 0 for x in raw):
            raise ValueError("weights (0,0,0) describe the trivial action")
        object.__setattr__(self, "weights", canonical_weights(raw))
        object.__setattr__(self, "carrier", Carrier(self.carrier))
        if self.written is None:
            object.__setattr__(self, "written", raw)

    @property
    def label(self) -> str:
        return "1/3({},{},{})".format(*self.weights)

    @property
    def gorenstein(self) -> bool:
        return is_gorenstein(self)


def is_gorenstein(t: SingularityType | Sequence[int]) -> bool:
    """The generator has determinant zeta^(a+b+c); Gorenstein iff that is 1."""
    w = t.weights if isinstance(t, SingularityType) else tuple(t)
    return sum(w) % 3 == 0


# -- inventory --------------------------------------------------------------


@dataclass(frozen=True)
class SingularLocus:
    """``count`` copies of a singularity type along points or curves of one genus."""

    type: SingularityType
    count: int
    genus: int | None = None


@dataclass(frozen=True)
class SingularityInventory:
    at_zero: tuple[SingularLocus, ...]
    at_infinity: tuple[SingularLocus, ...]

    def points(self, side: str) -> int:
        return sum(e.count for e in self._side(side) if e.type.carrier is Carrier.ISOLATED_POINT)

    def curves(self, side: str) -> int:
        return sum(e.count for e in self._side(side) if e.type.carrier is Carrier.CURVE)

    def _side(self, side: str) -> tuple[SingularLocus, ...]:
        return {"zero": self.at_zero, "infinity": self.at_infinity}[side]


def _quotient_type(kind: TangentKind, side: str) -> SingularityType:
    w = tangent_action(kind).weights + (PSI_WEIGHT[side],)
    carrier = Carrier.ISOLATED_POINT if kind is TangentKind.ISOLATED_POINT else Carrier.CURVE
    return SingularityType(w, carrier)


def quotient_inventory(f: FixedLocusTopology) -> SingularityInventory:
    """Singularities of the quotient over z = 0 and z = infinity."""

    def side(s):
        out = [SingularLocus(_quotient_type(TangentKind.ISOLATED_POINT, s), f.n)]
        curve_t = _quotient_type(TangentKind.ON_CURVE, s)
        if f.shape is Shape.GENERIC:
            if f.k:
                out.append(SingularLocus(curve_t, f.k, genus=0))
            out.append(SingularLocus(curve_t, 1, genus=f.g))
        return tuple(e for e in out if e.count)

    return SingularityInventory(side("zero"), side("infinity"))


# -- Euler characteristic building blocks -----------------------------------


def chi_quotient(chi_fixed_per_element: Sequence[int], group_order: int) -> Fraction:
    """Average of chi(M^g) over the group; identity element first."""
    if group_order <= 0:
        raise ValueError("group order must be positive")
    if len(chi_fixed_per_element) != group_order:
        raise ValueError(
            f"need one fixed-set Euler characteristic per element: "
            f"got {len(chi_fixed_per_element)}, order {group_order}"
        )
    return Fraction(sum(chi_fixed_per_element), group_order)


def chi_fixed_locus_product(f: FixedLocusTopology) -> int:
    """chi of the fixed set of rho x psi on S x P^1: S^rho over 0 and over infinity."""
    return 2 * f.chi


def chi_resolution(chi_base: int, chi_exceptional: int, chi_center: int) -> int:
    return chi_base + chi_exceptional - chi_center


def resolution_delta(f: FixedLocusTopology) -> int:
    """Change in chi from crepantly resolving every singularity over z = 0."""
    total = 0
    for _ in range(f.n):
        # P^2 replaces a point
        total = chi_resolution(total, CHI_P2, 1)
    for genus in f.curve_genera:
        chi_curve = 2 - 2 * genus
        total = chi_resolution(total, CHI_A2_FIBRE * chi_curve, chi_curve)
    return total


def chi_branched_cover(n: int, chi_base: int, chi_branch: int) -> int:
    if n < 1:
        raise ValueError("cover degree must be >= 1")
    return n * chi_base - (n - 1) * chi_branch


def cover_order_obstruction(p: int) -> bool:
    """Whether an order-p quotient admits the cover: L^p = [D0]^(p-2) must equal [D0]."""
    if p < 2:
        raise ValueError("order must be >= 2")
    return p - 2 == 1


# -- staged pipeline --------------------------------------------------------


class Mode(enum.Enum):
    CLOSED_FORM = "ClosedForm"
    FIRST_PRINCIPLES = "FirstPrinciples"


@dataclass(frozen=True)
class EulerStage:
    mode: Mode
    chi_product: int
    chi_Z: int
    chi_X0: int
    chi_X: int

    def value(self, stage: str) -> int:
        return getattr(self, f"chi_{stage}")


@dataclass(frozen=True)
class Note:
    code: str
    message: str


ASSUMPTION_NOTES = (
    Note("assumption.chi_D0", f"chi(D0) = {CHI_D0}: D0 is a K3 fibre"),
    Note(
        "assumption.blowup_neutral",
        "blowing up the self-intersections of the cover is taken to leave chi unchanged",
    ),
    Note("assumption.infinity_unresolved", "singularities over z = infinity are not resolved"),
)


@dataclass(frozen=True)
class ConstructionReport:
    pair: InvariantPair
    fixed_locus: FixedLocusTopology
    inventory: SingularityInventory
    closed_form: EulerStage
    first_principles: EulerStage
    mismatch_flags: dict[str, bool]
    notes: tuple[Note, ...]


def closed_form_stages(m: int) -> EulerStage:
    return EulerStage(
        Mode.CLOSED_FORM,
        chi_product=CHI_PRODUCT,
        chi_Z=48 - m,
        chi_X0=96 - 7 * m,
        chi_X=240 - 21 * m,
    )


def first_principles_stages(f: FixedLocusTopology) -> EulerStage:
    fixed = chi_fixed_locus_product(f)
    z = chi_quotient([CHI_PRODUCT, fixed, fixed], COVER_DEGREE)
    if z.denominator != 1:
        raise InconsistencyError(f"quotient Euler characteristic {z} is not an integer")
    z = int(z)
    x0 = z + resolution_delta(f)
    x = chi_branched_cover(COVER_DEGREE, x0, CHI_D0)
    return EulerStage(Mode.FIRST_PRINCIPLES, CHI_PRODUCT, z, x0, x)


def build_report(pair) -> ConstructionReport:
    pair = require_admissible(pair)
    f = fixed_locus(pair)
    closed = closed_form_stages(pair.m)
    first = first_principles_stages(f)
    flags = {s: closed.value(s) != first.value(s) for s in STAGES}
    notes = list(ASSUMPTION_NOTES)
    for s in STAGES:
        if flags[s]:
            notes.append(
                Note(
                    f"mismatch.{s}",
                    f"chi({s}): closed form {closed.value(s)} != first principles {first.value(s)}",
                )
            )
    return ConstructionReport(pair, f, quotient_inventory(f), closed, first, flags, tuple(notes))
