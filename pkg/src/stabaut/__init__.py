"""Stabilizer code analysis and permutation automorphism search."""

from .analysis import (
    CodeParameters,
    CodespaceBasis,
    check_correctable,
    codespace_basis,
    distance,
)
from .automorphism import (
    AutomorphismKind,
    AutomorphismResult,
    compute_group,
    is_clifford,
    is_strong,
    is_weak,
    transitivity_degree,
    weak_twist_witness,
)
from .catalog import CATALOG, catalog_lookup
from .group import MembershipAnswer, MembershipStatus, StabilizerGroup, build_group
from .pauli import (
    LocalCliffordTwist,
    PauliOperator,
    Permutation,
    apply_permutation,
    apply_twist,
    commutes,
    complexity,
    multiply,
    parse_cycles,
    parse_pauli,
    serialize_pauli,
    weight,
)

__all__ = [
    "AutomorphismKind", "AutomorphismResult", "CATALOG", "CodeParameters",
    "CodespaceBasis", "LocalCliffordTwist", "MembershipAnswer", "MembershipStatus",
    "PauliOperator", "Permutation", "StabilizerGroup", "apply_permutation",
    "apply_twist", "build_group", "catalog_lookup", "check_correctable",
    "codespace_basis", "commutes", "complexity", "compute_group", "distance",
    "is_clifford", "is_strong", "is_weak", "multiply", "parse_cycles",
    "parse_pauli", "serialize_pauli", "transitivity_degree", "weak_twist_witness",
    "weight",
]
