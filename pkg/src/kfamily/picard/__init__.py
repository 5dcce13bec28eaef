"""Picard lattices of the blowup towers and the pullback action on them."""

from .derived import (
    atlas_basis,
    derived_matrix,
    pullback_column,
    pullback_H_column,
    strict_class,
    strict_form,
    total_multiplicities,
)
from .encoded import ZResolution, ZVariantError, pic_basis, pic_matrix, resolve_z, z_candidates
from .lattice import DivisorClass, IntersectionForm, PicBasis, PicMatrix
from .linalg import (
    GrowthClass,
    charpoly,
    check_isometry,
    growth_class,
    nilpotency_index,
    poly_divides,
    poly_str,
    predicted_degrees,
    rational_rank,
    root_magnitudes,
    spectral_radius,
)

__all__ = [
    "DivisorClass", "GrowthClass", "IntersectionForm", "PicBasis", "PicMatrix", "ZResolution",
    "ZVariantError", "atlas_basis", "charpoly", "check_isometry", "derived_matrix",
    "growth_class", "nilpotency_index", "pic_basis", "pic_matrix", "poly_divides", "poly_str",
    "predicted_degrees", "pullback_H_column", "pullback_column", "rational_rank",
    "resolve_z", "root_magnitudes", "spectral_radius", "strict_class", "strict_form",
    "total_multiplicities", "z_candidates",
]
