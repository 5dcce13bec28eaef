"""Local charts (u, eta) on blowup fibers and along plane curves.

A chart carries a forward map (u, eta) -> [X0 : X1 : X2], a triple of
polynomials in the chart ring (u, eta and the family parameters), and its
inverse: u and eta as degree-zero rational functions of the homogeneous
coordinates. The fiber (or curve) is {u = 0} with coordinate eta.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..polycore import MultiPoly, RatFunc, Ring, poly_print
from ..projmap.family import FamilyParams


@dataclass(frozen=True)
class Chart:
    name: str
    kind: str  # "fiber" or "curve"
    forward: tuple[MultiPoly, MultiPoly, MultiPoly]
    inverse: tuple[RatFunc, RatFunc]  # (u, eta) in the plane ring
    center: str = ""
    parent: str | None = None

    @property
    def ring(self) -> Ring:
        return self.forward[0].ring

    def substitute(self, r: RatFunc, triple) -> RatFunc:
        """Evaluate a plane rational function at a triple of chart polynomials."""
        sub = list(triple) + [triple[0].ring.gen(v) for v in r.num.ring.variables[3:]]
        return RatFunc(r.num.compose(sub), r.den.compose(sub))

    def round_trip(self) -> bool:
        """inverse o forward == identity, as rational functions of (u, eta)."""
        u, eta = self.ring.gen("u"), self.ring.gen("eta")
        ru = self.substitute(self.inverse[0], self.forward)
        re = self.substitute(self.inverse[1], self.forward)
        return (ru.num - u * ru.den).is_zero and (re.num - eta * re.den).is_zero

    def fiber_point(self) -> tuple[MultiPoly, ...]:
        """The forward triple at u = 0."""
        return tuple(c.subs({"u": 0}) for c in self.forward)

    def to_json(self) -> dict:
        def rf(r):
            return {"num": poly_print(r.num), "den": poly_print(r.den)}

        return {"name": self.name, "kind": self.kind, "center": self.center,
                "parent": self.parent,
                "forward": [poly_print(c) for c in self.forward],
                "inverse": {"u": rf(self.inverse[0]), "eta": rf(self.inverse[1])}}


class ChartFactory:
    """Builds the charts of one parameter family over shared rings."""

    def __init__(self, params: FamilyParams):
        self.params = params
        self.plane = params.plane_ring()
        self.ring = params.ring_with(("u", "eta"))
        self.u = self.ring.gen("u")
        self.eta = self.ring.gen("eta")
        self.x0, self.x1, self.x2 = self.plane.gens()[:3]

    def P(self, c) -> MultiPoly:
        return self.plane(c) if not isinstance(c, MultiPoly) else c

    def lift(self, p: MultiPoly, ring: Ring) -> MultiPoly:
        return p.to_ring(ring)

    def chart(self, name, kind, forward, inverse, center="", parent=None) -> Chart:
        fwd = tuple(self.ring(c) if not isinstance(c, MultiPoly) else c for c in forward)
        return Chart(name, kind, fwd, inverse, center, parent)

    # fibers over e1 -----------------------------------------------------
    def e1(self) -> Chart:
        # (t, y) = (u eta, u) near e1 = [0:1:0], eta = t/y
        u, eta = self.u, self.eta
        x0, x1, x2 = self.x0, self.x1, self.x2
        return self.chart("E1", "fiber", (u * eta, 1, u),
                          (RatFunc(x2, x1), RatFunc(x0, x2)), "e1 = [0:1:0]")

    def q(self) -> Chart:
        # centered at the direction y/t = -1 of C4 through e1: (t, y) = (u, -u + eta u^2)
        u, eta = self.u, self.eta
        x0, x1, x2 = self.x0, self.x1, self.x2
        return self.chart("Q", "fiber", (u, 1, -u + eta * u ** 2),
                          (RatFunc(x0, x1), RatFunc((x0 + x2) * x1, x0 ** 2)),
                          "q = E1 meet C4", "E1")

    def p(self, j: int) -> Chart:
        # (t, y) = (u^(j+1) eta, u^j eta); u = t/y, eta = y^(j+1)/t^j
        u, eta = self.u, self.eta
        x0, x1, x2 = self.x0, self.x1, self.x2
        center = "p1 = E1 meet C1" if j == 1 else f"p{j} = E1 meet P{j - 1}"
        return self.chart(f"P{j}", "fiber", (u ** (j + 1) * eta, 1, u ** j * eta),
                          (RatFunc(x0, x2), RatFunc(x2 ** (j + 1), x1 * x0 ** j)),
                          center, "E1" if j == 1 else f"P{j - 1}")

    def p0(self) -> Chart:
        # the j = 0 case of the P_j coordinates: a plane chart along C1
        u, eta = self.u, self.eta
        x0, x1, x2 = self.x0, self.x1, self.x2
        return self.chart("P0", "curve", (u * eta, 1, eta),
                          (RatFunc(x0, x2), RatFunc(x2, x1)), "C1 near e1")

    # blowing up points of existing charts ---------------------------------
    def recenter(self, parent: Chart, name: str, num: MultiPoly, den: MultiPoly,
                 center: str) -> Chart:
        """Blow up the fiber point eta = num/den: eta_parent = num/den + u eta.

        num and den are polynomials in the parameters only.
        """
        R = self.ring
        num_c, den_c = num.to_ring(R), den.to_ring(R)
        new_eta = num_c + den_c * self.u * self.eta  # = den * eta_parent
        fwd_parts = [c.as_univariate("eta") for c in parent.forward]
        D = max((max(parts) for parts in fwd_parts if parts), default=0)
        fwd = []
        for parts in fwd_parts:
            acc = R.zero()
            for k, coeff in parts.items():
                acc = acc + coeff * new_eta ** k * den_c ** (D - k)
            fwd.append(acc)
        pu, pe = parent.inverse
        num_p, den_p = num.to_ring(self.plane), den.to_ring(self.plane)
        eta_inv = (pe * den_p - num_p) / (pu * den_p)
        return Chart(name, "fiber", tuple(fwd), (pu, eta_inv), center, parent.name)

    def blowup_origin(self, parent: Chart, name: str, center: str, along_fiber: bool) -> Chart:
        """Blow up (u, eta) = (0, 0) of a chart.

        along_fiber=False: (u, eta_parent) = (u, u eta), new coordinate eta_parent/u.
        along_fiber=True: (u_parent, eta_parent) = (u eta, u), new coordinate u_parent/eta_parent.
        """
        u, eta = self.u, self.eta
        if along_fiber:
            fwd = tuple(c.compose([u * eta, u] + self._params()) for c in parent.forward)
            pu, pe = parent.inverse
            inv = (pe, pu / pe)
        else:
            fwd = tuple(c.compose([u, u * eta] + self._params()) for c in parent.forward)
            pu, pe = parent.inverse
            inv = (pu, pe / pu)
        return Chart(name, "fiber", fwd, inv, center, parent.name)

    def _params(self):
        return [self.ring.gen(s) for s in self.params.symbols]

    # plane points -------------------------------------------------------
    def e2(self) -> Chart:
        # [w : w zeta : 1], w = x0/x2, zeta = x1/x0
        u, eta = self.u, self.eta
        x0, x1, x2 = self.x0, self.x1, self.x2
        return self.chart("E2", "fiber", (u, u * eta, 1),
                          (RatFunc(x0, x2), RatFunc(x1, x0)), "e2 = [0:0:1]")

    def e01(self) -> Chart:
        # local coordinates (x1/x0 - 1, x2/x0) = (u eta, u) at e01 = [1:1:0]
        u, eta = self.u, self.eta
        x0, x1, x2 = self.x0, self.x1, self.x2
        return self.chart("E01", "fiber", (1, 1 + u * eta, u),
                          (RatFunc(x2, x0), RatFunc(x1 - x0, x2)), "e01 = [1:1:0]")

    # plane curves as destinations and sources ------------------------------
    def curve_charts(self) -> dict[str, Chart]:
        u, eta = self.u, self.eta
        x0, x1, x2 = self.x0, self.x1, self.x2
        R = self.ring
        n = self.params.n
        z = x0 ** 2 - x0 * x1 - x1 * x2
        out = {
            "C1": self.chart("C1", "curve", (u, 1, eta), (RatFunc(x0, x1), RatFunc(x2, x1))),
            "C2": self.chart("C2", "curve", (1, 1 + u, eta),
                             (RatFunc(x1 - x0, x0), RatFunc(x2, x0))),
            "C3": self.chart("C3", "curve", (1, eta, u), (RatFunc(x2, x0), RatFunc(x1, x0))),
            "C4": self.chart("C4", "curve", (eta * (eta + 1), eta ** 2 * (1 - u), eta + 1),
                             (RatFunc(z, x0 ** 2), RatFunc(x0, x2))),
        }
        if n >= 1:
            a = self.params.coeff_polys(R)
            f_eta = sum((c * eta ** j for j, c in enumerate(a)), R.zero())
            ap = self.params.coeff_polys(self.plane)
            fcheck = sum((c * x0 ** (n - j) * x2 ** j for j, c in enumerate(ap)), self.plane.zero())
            c2 = x0 ** n + x0 ** (n - 1) * x1 - fcheck
            c4 = x0 ** n * x2 - (x0 + x2) * c2
            out["C2'"] = self.chart("C2'", "curve", (1, f_eta - 1 + u, eta),
                                    (RatFunc(c2, x0 ** n), RatFunc(x2, x0)))
            out["C4'"] = self.chart("C4'", "curve",
                                    (1 + eta, (1 + eta) * (f_eta - 1) + eta - u, eta * (1 + eta)),
                                    (RatFunc(c4, x0 ** (n + 1)), RatFunc(x2, x0)))
        return out
