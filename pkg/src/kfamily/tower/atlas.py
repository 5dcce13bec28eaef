"""The blowup towers X (n even), Y (n odd) and Z (cubic automorphisms)."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..polycore import MultiPoly
from ..projmap.family import FamilyParams
from .charts import Chart, ChartFactory

__all__ = ["ChartAtlas", "build_tower", "TOWERS"]

TOWERS = ("X", "Y", "Z")


@dataclass
class ChartAtlas:
    family: str
    params: FamilyParams
    fibers: dict[str, Chart]
    curves: dict[str, Chart]
    centers: list[tuple[str, str]] = field(default_factory=list)

    @property
    def names(self) -> list[str]:
        return list(self.fibers)

    def __getitem__(self, name: str) -> Chart:
        if name in self.fibers:
            return self.fibers[name]
        return self.curves[name]

    def __contains__(self, name: str) -> bool:
        return name in self.fibers or name in self.curves

    def to_json(self) -> dict:
        return {"family": self.family, "params": self.params.to_json(),
                "centers": [{"fiber": f, "center": c} for f, c in self.centers],
                "fibers": [c.to_json() for c in self.fibers.values()],
                "curves": [c.to_json() for c in self.curves.values()]}


def build_tower(params: FamilyParams, family: str) -> ChartAtlas:
    """Charts for every exceptional fiber of the chosen tower.

    X needs n even and n >= 2, Y needs n odd, Z needs the cubic shape
    F = a y^3 + a y^2 + b y + 2. For n = 1 the Y tower also contains E2.
    """
    family = family.upper()
    if family not in TOWERS:
        raise ValueError(f"unknown tower {family!r}; expected one of {TOWERS}")
    n = params.n
    if family == "X" and (n % 2 or n < 2):
        raise ValueError("tower X needs an even degree n >= 2")
    if family == "Y" and n % 2 == 0:
        raise ValueError("tower Y needs an odd degree n")
    if family == "Z" and params.cubic_ab() is None:
        raise ValueError("tower Z needs F = a y^3 + a y^2 + b y + 2")

    cf = ChartFactory(params)
    a = params.coeffs
    fibers: dict[str, Chart] = {}
    fibers["E1"] = cf.e1()
    fibers["Q"] = cf.q()
    for j in range(1, n):
        fibers[f"P{j}"] = cf.p(j)
    if family in ("Y", "Z"):
        parent = fibers[f"P{n - 1}"] if n > 1 else cf.p0()
        fibers[f"P{n}"] = cf.recenter(parent, f"P{n}", params.coeff_ring.one(), a[n],
                                      f"p{n} = eta 1/a{n} on P{n - 1}")
        if n == 1:
            fibers["P1"] = replace(fibers["P1"], center="p1 = [0:1:1/a1] on C1", parent=None)
            # p1 is a plane point on C1 whose image under k is e2, and e2 is
            # blown up onto P1 again: the two points must both be blown up
            fibers["E2"] = cf.e2()
    if family == "Z":
        _extend_cubic(cf, fibers, a)
        order = ["E1", "Q"] + [f"P{j}" for j in range(1, 7)] + ["E2", "E01", "R"]
        fibers = {name: fibers[name] for name in order}
    centers = [(name, ch.center) for name, ch in fibers.items()]
    return ChartAtlas(family, params, fibers, cf.curve_charts(), centers)


def _extend_cubic(cf: ChartFactory, fibers: dict[str, Chart], a: list[MultiPoly]) -> None:
    """E2, E01 and the points P4, P5, P6, R of the automorphism tower."""
    coef_a, coef_b = a[3], a[1]
    fibers["E2"] = cf.e2()
    fibers["E01"] = cf.e01()
    one = cf.params.coeff_ring.one()
    fibers["P4"] = cf.recenter(fibers["P3"], "P4", -one, coef_a, "p4 = eta -1/a on P3")
    # the recentering recipe puts p5 at (a-b)/a^2; this is the value that
    # reproduces E2 -> P5 and the location of p6
    fibers["P5"] = cf.recenter(fibers["P4"], "P5", coef_a - coef_b, coef_a ** 2,
                               "p5 = eta (a-b)/a^2 on P4")
    fibers["P6"] = cf.recenter(fibers["P5"], "P6", 2 * coef_b - 2 - coef_a, coef_a ** 2,
                               "p6 = eta (2b-2-a)/a^2 on P5")
    fibers["R"] = cf.blowup_origin(fibers["E2"], "R", "r = E2 meet C1", along_fiber=False)
