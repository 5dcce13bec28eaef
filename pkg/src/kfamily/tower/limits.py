"""Orders of vanishing along fibers and the maps induced between fibers."""

from __future__ import annotations

from dataclasses import dataclass

from ..polycore import MultiPoly, RatFunc, normalize_many, poly_gcd, poly_print
from ..projmap.maps import ProjMap
from .charts import Chart

__all__ = ["LimitUndefined", "MoebiusMap", "order_of_vanishing", "pull_through",
           "map_order",
           "induced_fiber_map"]


class LimitUndefined(ArithmeticError):
    """The image of a fiber is not (generically) the requested fiber."""


def pull_through(f: ProjMap, chart: Chart) -> tuple[MultiPoly, ...]:
    """Components of f composed with the chart's forward map."""
    R = chart.ring
    subs = list(chart.forward) + [R.gen(s) for s in f.ring.variables[3:]]
    return tuple(c.compose(subs) for c in f.components)


def order_of_vanishing(h: MultiPoly, chart: Chart, f: ProjMap | None = None) -> int:
    """Order in u of h (or of h o f) pulled back to the chart."""
    R = chart.ring
    if f is not None:
        triple = pull_through(f, chart)
    else:
        triple = chart.forward
    subs = list(triple) + [R.gen(s) for s in h.ring.variables[3:]]
    pulled = h.compose(subs)
    if pulled.is_zero:
        raise LimitUndefined(f"the polynomial vanishes identically on chart {chart.name}")
    return pulled.lowest_order("u")


def map_order(f: ProjMap, chart: Chart) -> int:
    """Order of vanishing of f itself along the fiber: the least order of its components."""
    return min(c.lowest_order("u") for c in pull_through(f, chart) if not c.is_zero)


def _expansion(r: RatFunc) -> tuple[int, MultiPoly, MultiPoly]:
    """u-order of a quotient and the leading coefficients of numerator and denominator."""
    if r.num.is_zero:
        return (10 ** 9, r.num, r.den)
    on, od = r.num.lowest_order("u"), r.den.lowest_order("u")
    return on - od, r.num.coeff_in("u", on), r.den.coeff_in("u", od)


@dataclass(frozen=True)
class MoebiusMap:
    """eta -> num(eta) / den(eta) between fiber coordinates, in lowest terms."""

    source: str
    target: str
    num: MultiPoly
    den: MultiPoly

    @classmethod
    def make(cls, source, target, num, den) -> MoebiusMap:
        if den.is_zero:
            raise ZeroDivisionError("Moebius map with zero denominator")
        if num.is_zero:
            return cls(source, target, num, den.ring.one())
        g = poly_gcd(num, den)
        if not g.is_constant:
            num, den = num.exact_div(g), den.exact_div(g)
        den, num = normalize_many([den, num])
        return cls(source, target, num, den)

    @property
    def is_constant(self) -> bool:
        return self.num.degree_in("eta") <= 0 and self.den.degree_in("eta") <= 0

    def degree(self) -> int:
        return max(self.num.degree_in("eta"), self.den.degree_in("eta"), 0)

    def __call__(self, value):
        """Image of eta = value (None for infinity). Concrete parameters only."""
        R = self.num.ring
        if value is None:
            dn, dd = self.num.degree_in("eta"), self.den.degree_in("eta")
            if dd > dn:
                return R.coerce(0)
            if dn > dd:
                return None
            return self.num.coeff_in("eta", dn).constant_value() / \
                self.den.coeff_in("eta", dd).constant_value()
        point = [0] * R.nvars
        point[R.index("eta")] = value
        n, d = self.num.evaluate(point), self.den.evaluate(point)
        if d == 0:
            return None
        return n / d

    def poles(self) -> list:
        """Rational eta values sent to infinity (concrete, degree <= 1 denominator)."""
        d = self.den
        deg = d.degree_in("eta")
        if deg <= 0:
            return []
        if deg > 1:
            raise ValueError("pole search supports linear denominators only")
        c1 = d.coeff_in("eta", 1).constant_value()
        c0 = d.coeff_in("eta", 0)
        c0 = c0.constant_value() if not c0.is_zero else 0
        return [-c0 / c1]

    def same_as(self, num: MultiPoly, den: MultiPoly) -> bool:
        return (self.num * den - self.den * num).is_zero

    def __str__(self):
        if self.den == 1:
            return poly_print(self.num)
        return f"({poly_print(self.num)})/({poly_print(self.den)})"

    def to_json(self) -> dict:
        return {"source": self.source, "target": self.target,
                "num": poly_print(self.num), "den": poly_print(self.den)}


def induced_fiber_map(f: ProjMap, source: Chart, target: Chart) -> MoebiusMap:
    """The map on fiber coordinates that f induces from source onto target.

    Raises LimitUndefined when f does not send the source fiber into the
    target fiber (the transversal coordinate fails to vanish) or the limit
    of the fiber coordinate is infinite.
    """
    img = pull_through(f, source)
    u_img = target.substitute(target.inverse[0], img)
    ou, _, _ = _expansion(u_img)
    if ou <= 0:
        raise LimitUndefined(f"{source.name} is not mapped into {target.name}")
    e_img = target.substitute(target.inverse[1], img)
    oe, ln, ld = _expansion(e_img)
    R = source.ring
    if oe < 0:
        raise LimitUndefined(f"{source.name} reaches {target.name} at eta = infinity")
    if oe > 0:
        return MoebiusMap.make(source.name, target.name, R.zero(), R.one())
    return MoebiusMap.make(source.name, target.name, ln, ld)
