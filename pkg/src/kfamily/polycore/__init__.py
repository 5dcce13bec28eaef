"""Exact arithmetic kernel: scalars, sparse polynomials, gcd."""

from .gcd import (
    TrialDivision,
    certify_coprime,
    content_in,
    gcd_many,
    lowest_order,
    normalize,
    normalize_many,
    poly_gcd,
    trial_divide,
)
from .parse import PolySyntaxError, poly_parse, poly_print
from .poly import MixedRingError, MultiPoly, Ring
from .ratfunc import RatFunc
from . import upoly
from .scalars import fmt_scalar, random_prime, reduce_mod, to_rational

PLANE = Ring(("x0", "x1", "x2"))


def poly_eval(p: MultiPoly, point):
    """Exact value of ``p`` at ``point``."""
    return p.evaluate(point)


__all__ = [
    "PLANE", "MixedRingError", "MultiPoly", "PolySyntaxError", "RatFunc", "Ring", "TrialDivision",
    "certify_coprime", "content_in", "gcd_many", "lowest_order", "normalize",
    "normalize_many", "poly_eval", "poly_gcd", "poly_parse", "poly_print",
    "fmt_scalar", "random_prime", "reduce_mod", "to_rational", "trial_divide",
]
