"""Exact invariants of Calabi-Yau orbifolds built from K3 surfaces with
non-symplectic automorphisms of order three."""

from .classification import (
    InadmissiblePairError,
    InvariantPair,
    admissible_pairs,
    fixed_locus,
    is_admissible,
    tangent_action,
)
from .lattice import (
    GramLattice,
    discriminant_group,
    fixed_lattice_invariants,
    inertia,
    k3_lattice,
    smith_normal_form,
)
from .orbifold import build_report

__version__ = "0.1.0"

__all__ = [
    "GramLattice",
    "InadmissiblePairError",
    "InvariantPair",
    "admissible_pairs",
    "build_report",
    "discriminant_group",
    "fixed_lattice_invariants",
    "fixed_locus",
    "inertia",
    "is_admissible",
    "k3_lattice",
    "smith_normal_form",
    "tangent_action",
]
