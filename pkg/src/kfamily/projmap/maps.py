"""Rational self-maps of the plane as normalized triples of forms."""

from __future__ import annotations

from collections.abc import Sequence

from ..polycore import MixedRingError, MultiPoly, Ring, gcd_many, normalize_many, poly_print, trial_divide
from .points import Indeterminate, ProjPoint

PROJ = (0, 1, 2)  # the homogeneous coordinates are the first three ring variables


class DegenerateMap(ValueError):
    """The component triple is identically zero or not a map of the plane."""


class ProjMap:
    """[f0 : f1 : f2] with gcd 1, jointly primitive, first leading coefficient positive.

    Any variables after x0, x1, x2 are parameters: the map is homogeneous in
    the coordinates only. ``hints`` lists polynomials likely to divide the
    unnormalized composite of another map with this one (the curves this map
    contracts); they feed the fast path of normalization.
    """

    __slots__ = ("ring", "components", "degree", "label", "hints")

    def __init__(self, components: Sequence[MultiPoly], label: str = "",
                 hints: Sequence[MultiPoly] = (), *, normalized: bool = False):
        comps = list(components)
        if len(comps) != 3:
            raise DegenerateMap("a plane map has three components")
        R = comps[0].ring
        for c in comps:
            if c.ring != R:
                raise MixedRingError("components live in different rings")
        if R.variables[:3] != ("x0", "x1", "x2"):
            raise DegenerateMap("first three ring variables must be x0, x1, x2")
        if all(c.is_zero for c in comps):
            raise DegenerateMap("identically zero component triple")
        degs = {c.degree_in_vars(PROJ) for c in comps if not c.is_zero}
        if len(degs) != 1 or not all(c.is_homogeneous_in(PROJ) for c in comps):
            raise DegenerateMap("components are not forms of one common degree")
        hints = tuple(h for h in hints if h.ring == R and not h.is_constant)
        if not normalized:
            g = gcd_many(comps, hints)
            if not g.is_constant:
                comps = [c.exact_div(g) for c in comps]
            comps = normalize_many(comps)
        self.ring: Ring = R
        self.components: tuple[MultiPoly, ...] = tuple(comps)
        self.degree: int = max(c.degree_in_vars(PROJ) for c in comps if not c.is_zero)
        self.label = label
        self.hints = hints

    @classmethod
    def identity(cls, ring: Ring) -> ProjMap:
        return cls(ring.gens()[:3], "id", normalized=True)

    def __eq__(self, other):
        return isinstance(other, ProjMap) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"ProjMap({self.label or '?'}, degree {self.degree})"

    def __str__(self):
        return "[" + " : ".join(poly_print(c) for c in self.components) + "]"

    def is_identity(self) -> bool:
        return self.components == self.ring.gens()[:3]

    def param_gens(self) -> list[MultiPoly]:
        return list(self.ring.gens()[3:])

    def pull(self, h: MultiPoly) -> MultiPoly:
        """h composed with this map (unnormalized)."""
        if h.ring != self.ring:
            raise MixedRingError("polynomial and map live in different rings")
        return h.compose(list(self.components) + self.param_gens())

    def total_terms(self) -> int:
        return sum(len(c) for c in self.components)

    def to_json(self) -> dict:
        return {"components": [poly_print(c) for c in self.components],
                "degree": self.degree, "label": self.label}

    def reduce_mod(self, p: int) -> ProjMap:
        return ProjMap([c.reduce_mod(p) for c in self.components], self.label,
                       normalized=True)


def compose(f: ProjMap, g: ProjMap, label: str | None = None) -> ProjMap:
    """Normalized f o g."""
    if f.ring != g.ring:
        raise MixedRingError("maps live in different rings")
    comps = [g.pull(c) for c in f.components]
    if all(c.is_zero for c in comps):
        raise DegenerateMap("composite is identically zero")
    hints = list(g.hints)
    for h in f.hints:
        # the pullback of a curve contracted by f, stripped of g's curves
        pulled = trial_divide(g.pull(h), g.hints).remainder if g.hints else g.pull(h)
        if not pulled.is_constant and pulled not in hints:
            hints.append(pulled)
    for h in f.hints:
        if h not in hints:
            hints.append(h)
    if label is None:
        label = f"{f.label or '?'}.{g.label or '?'}"
    return ProjMap(comps, label, hints)


def iterate(f: ProjMap, m: int) -> ProjMap:
    if m < 1:
        raise ValueError("iteration count must be positive")
    out = f
    for _ in range(m - 1):
        out = compose(f, out)
    return out


def apply(f: ProjMap, p: ProjPoint) -> ProjPoint:
    """Image of a point; raises Indeterminate at base points."""
    if f.ring.nvars != 3:
        raise ValueError("apply needs a map with concrete parameters")
    vals = [c.evaluate(p.coords) for c in f.components]
    if all(v == 0 for v in vals):
        raise Indeterminate(f"{p} is a base point of {f.label or 'the map'}")
    return ProjPoint(tuple(vals))


def proj_equal(a: Sequence[MultiPoly], b: Sequence[MultiPoly]) -> bool:
    """Projective equality of two triples of polynomials (all 2x2 minors vanish)."""
    return all((a[i] * b[j] - a[j] * b[i]).is_zero for i in range(3) for j in range(3) if i < j)
