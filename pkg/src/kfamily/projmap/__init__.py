"""Projective points, plane maps, the involutions and the maps k built from them."""

from .analysis import (
    BasePoints,
    CurveImage,
    JacobianReport,
    base_points_on_curve,
    check_invariant,
    cubic_invariant,
    image_of_curve,
    jacobian,
    jacobian_factored,
)
from .builders import (
    Curve,
    CurveCatalog,
    backward_curves,
    build_iota,
    build_jf,
    build_k,
    build_k_any,
    build_k_inverse,
    forward_curves,
)
from .degrees import BudgetExceeded, DegreeSequence, degree_sequence
from .family import DEFAULT_HORIZON, FamilyParams, GenericityFlags
from .maps import DegenerateMap, ProjMap, apply, compose, iterate, proj_equal
from .points import Indeterminate, ProjPoint

__all__ = [
    "DEFAULT_HORIZON", "BasePoints", "BudgetExceeded", "Curve", "CurveCatalog", "CurveImage",
    "DegenerateMap", "DegreeSequence", "FamilyParams", "GenericityFlags", "Indeterminate",
    "JacobianReport", "ProjMap", "ProjPoint", "apply", "backward_curves",
    "base_points_on_curve", "build_iota", "build_jf", "build_k", "build_k_any",
    "build_k_inverse", "check_invariant", "compose", "cubic_invariant", "degree_sequence",
    "forward_curves", "image_of_curve", "iterate", "jacobian", "jacobian_factored",
    "proj_equal",
]
