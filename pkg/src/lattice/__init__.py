"""Integral lattice arithmetic."""
from .core import (
    DiscGroup,
    FiniteAbelianGroup,
    IntLattice,
    Sublattice,
    determinant,
    direct_sum,
    discriminant_form,
    discriminant_group,
    is_primitive,
    lattice_from_gram,
    orthogonal_complement,
    quotient_group,
    rescale,
    saturation,
    signature,
    two_elementary_invariants,
)
from .integer_matrix import SmithForm, hermite_rows, left_kernel, smith_form

__all__ = [
    "DiscGroup",
    "FiniteAbelianGroup",
    "IntLattice",
    "SmithForm",
    "Sublattice",
    "determinant",
    "direct_sum",
    "discriminant_form",
    "discriminant_group",
    "hermite_rows",
    "is_primitive",
    "lattice_from_gram",
    "left_kernel",
    "orthogonal_complement",
    "quotient_group",
    "rescale",
    "saturation",
    "signature",
    "smith_form",
    "two_elementary_invariants",
]
