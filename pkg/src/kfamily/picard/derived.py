"""Pullback columns recomputed from vanishing orders in the tower charts.

Independent of the encoded lists: every entry comes from u-orders of
pulled-back local equations.
"""

from __future__ import annotations

from ..polycore import MultiPoly
from ..projmap.maps import ProjMap
from ..tower import ChartAtlas, map_order, order_of_vanishing, pull_through
from ..tower.limits import LimitUndefined, _expansion
from .encoded import pic_basis
from .lattice import DivisorClass, IntersectionForm, PicBasis, PicMatrix

__all__ = ["atlas_basis", "total_multiplicities", "strict_form", "strict_class",
           "pullback_H_column", "pullback_column", "derived_matrix"]

SOURCE_CURVES = ("C1", "C2", "C3", "C4")


def atlas_basis(atlas: ChartAtlas) -> PicBasis:
    return PicBasis.of(list(atlas.fibers))


def _order_into(target, triple) -> int | None:
    """u-order of target's local equation along a source, or None when the
    source does not land over the target's chart (η-limit infinite)."""
    u_img = target.substitute(target.inverse[0], triple)
    ou, _, _ = _expansion(u_img)
    if ou <= 0:
        return None
    e_img = target.substitute(target.inverse[1], triple)
    oe, _, _ = _expansion(e_img)
    if oe < 0:
        return None
    return ou


def total_multiplicities(atlas: ChartAtlas) -> dict[tuple[str, str], int]:
    """mult[(F, G)]: multiplicity of the fiber G in the total transform of F."""
    names = list(atlas.fibers)
    out = {}
    for f in names:
        for g in names:
            if f == g:
                continue
            m = _order_into(atlas[f], atlas[g].forward)
            if m:
                out[(f, g)] = m
    return out


def strict_form(atlas: ChartAtlas) -> IntersectionForm:
    """Intersection form in the basis of H and the strict fiber classes."""
    return IntersectionForm.from_total_multiplicities(atlas_basis(atlas),
                                                      total_multiplicities(atlas))


def strict_class(atlas: ChartAtlas, curve: MultiPoly) -> DivisorClass:
    """Class of the strict transform of a plane curve: deg H - sum ord_F F."""
    B = atlas_basis(atlas)
    terms = {"H": curve.degree_in_vars((0, 1, 2))}
    for name, chart in atlas.fibers.items():
        terms[name] = -order_of_vanishing(curve, chart)
    return DivisorClass.of(B, terms)


def pullback_H_column(atlas: ChartAtlas, f: ProjMap) -> DivisorClass:
    """deg(f) H minus the vanishing order of a generic line's pullback on each fiber."""
    B = atlas_basis(atlas)
    terms = {"H": f.degree}
    for name, chart in atlas.fibers.items():
        terms[name] = -map_order(f, chart)
    return DivisorClass.of(B, terms)


def _curve_polys(atlas: ChartAtlas) -> dict[str, MultiPoly]:
    R = atlas.params.plane_ring()
    x0, x1, x2 = R.gens()[:3]
    return {"C1": x0, "C2": x1 - x0, "C3": x2, "C4": x0 ** 2 - x0 * x1 - x1 * x2}


def _total_pullbacks(atlas: ChartAtlas, f: ProjMap) -> dict[str, DivisorClass]:
    B = atlas_basis(atlas)
    polys = _curve_polys(atlas)
    sources = {name: ("fiber", ch) for name, ch in atlas.fibers.items()}
    sources.update({c: ("curve", atlas.curves[c]) for c in SOURCE_CURVES})
    images = {name: pull_through(f, ch) for name, (_, ch) in sources.items()}
    out = {}
    for target in atlas.fibers:
        acc = B.zero()
        for name, (kind, _) in sources.items():
            try:
                m = _order_into(atlas[target], images[name])
            except LimitUndefined:
                m = None
            if not m:
                continue
            cls = B.unit(name) if kind == "fiber" else strict_class(atlas, polys[name])
            acc = acc + m * cls
        out[target] = acc
    return out


def pullback_column(atlas: ChartAtlas, f: ProjMap, label: str) -> DivisorClass:
    return derived_matrix(atlas, f).column(label)


def derived_matrix(atlas: ChartAtlas, f: ProjMap) -> PicMatrix:
    """The full pullback matrix on strict classes, from vanishing orders only."""
    B = atlas_basis(atlas)
    mult = total_multiplicities(atlas)
    total = _total_pullbacks(atlas, f)
    strict: dict[str, DivisorClass] = {}
    # strict_F = T_F - sum_G mult(F, G) strict_G; pull back from the deepest fiber up
    pending = list(atlas.fibers)
    while pending:
        for name in pending:
            deps = [g for (a, g) in mult if a == name]
            if all(g in strict for g in deps):
                col = total[name]
                for g in deps:
                    col = col - mult[(name, g)] * strict[g]
                strict[name] = col
                pending.remove(name)
                break
        else:
            raise RuntimeError("cyclic fiber multiplicities")
    cols = dict(strict)
    cols["H"] = pullback_H_column(atlas, f)
    return PicMatrix.from_columns(B, cols, "derived")
