"""Forward orbits of contracted curves through the blowup fibers.

A curve contracted by k lands on a point of some exceptional fiber; the
induced fiber maps then carry that point along. The map is algebraically
stable on the tower exactly when no such orbit lands on a point of
indeterminacy: e2, e01, or the single pole of the fiber self-map.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..polycore import fmt_scalar
from ..projmap.builders import build_k
from ..projmap.family import DEFAULT_HORIZON, FamilyParams, GenericityFlags
from .atlas import ChartAtlas, build_tower
from .limits import MoebiusMap, induced_fiber_map

__all__ = ["OrbitPoint", "Collision", "OrbitTrace", "OrbitReport",
           "exceptional_orbit_report", "genericity_report"]


@dataclass(frozen=True)
class OrbitPoint:
    step: int
    location: str
    value: object  # exact rational, or None for the point at infinity of the chart

    def to_json(self) -> dict:
        return {"step": self.step, "location": self.location,
                "value": None if self.value is None else fmt_scalar(self.value)}


@dataclass(frozen=True)
class Collision:
    step: int
    point: str  # "e01", or "<fiber>:<value>"

    def to_json(self) -> dict:
        return {"step": self.step, "point": self.point}


@dataclass(frozen=True)
class OrbitTrace:
    curves: tuple[str, ...]  # the contracted curves sharing this orbit
    points: tuple[OrbitPoint, ...]
    collision: Collision | None
    truncated: bool

    def to_json(self) -> dict:
        return {"curves": list(self.curves), "points": [p.to_json() for p in self.points],
                "collision": None if self.collision is None else self.collision.to_json(),
                "truncated": self.truncated}


@dataclass(frozen=True)
class OrbitReport:
    params: FamilyParams
    horizon: int
    family: str
    traces: tuple[OrbitTrace, ...]
    fiber_maps: dict[str, MoebiusMap] = field(default_factory=dict)

    @property
    def collisions(self) -> list[tuple[tuple[str, ...], Collision]]:
        return [(t.curves, t.collision) for t in self.traces if t.collision is not None]

    @property
    def stable(self) -> bool:
        return not self.collisions

    def trace_for(self, curve: str) -> OrbitTrace:
        for t in self.traces:
            if curve in t.curves:
                return t
        raise KeyError(curve)

    def to_json(self) -> dict:
        return {"params": self.params.to_json(), "horizon": self.horizon,
                "family": self.family, "stable": self.stable,
                "orbits": [t.to_json() for t in self.traces],
                "fiber_maps": {k: m.to_json() for k, m in self.fiber_maps.items()}}


def _pole(m: MoebiusMap):
    poles = m.poles()
    return poles[0] if poles else None


def _fmt(v) -> str:
    return "inf" if v is None else fmt_scalar(v)


def _fiber_orbit(start, start_fiber, maps, indeterminate, horizon, curves) -> OrbitTrace:
    """Iterate a cycle of fiber maps; maps[i] leaves fiber i of the cycle and
    indeterminate[i] is the bad point on that fiber (or None)."""
    points = [OrbitPoint(1, start_fiber[0], start)]
    value, pos = start, 0
    names = start_fiber
    for step in range(1, horizon + 1):
        pole = indeterminate[pos]
        if pole is not None and value is not None and value == pole:
            return OrbitTrace(curves, tuple(points),
                              Collision(step, f"{names[pos]}:{_fmt(pole)}"), False)
        if step == horizon:
            break
        value = maps[pos](value)
        pos = (pos + 1) % len(maps)
        points.append(OrbitPoint(step + 1, names[pos], value))
    return OrbitTrace(curves, tuple(points), None, True)


def _c4_orbit(atlas: ChartAtlas, k, horizon: int) -> tuple[OrbitTrace, dict]:
    """C4 lands on C3; the point then alternates between C3 and the fiber Q."""
    to_c3 = induced_fiber_map(k, atlas["C4"], atlas["C3"])
    c3_q = induced_fiber_map(k, atlas["C3"], atlas["Q"])
    q_c3 = induced_fiber_map(k, atlas["Q"], atlas["C3"])
    maps = {"C4->C3": to_c3, "C3->Q": c3_q, "Q->C3": q_c3}
    e01 = 1  # e01 = [1:1:0] has coordinate x1/x0 = 1 on C3
    value = to_c3(None)  # constant map
    points = [OrbitPoint(1, "C3", value)]
    on_c3 = True
    for step in range(1, horizon + 1):
        if on_c3 and value == e01:
            return OrbitTrace(("C4",), tuple(points), Collision(step, "e01"), False), maps
        if step == horizon:
            break
        value = (c3_q if on_c3 else q_c3)(value)
        on_c3 = not on_c3
        points.append(OrbitPoint(step + 1, "C3" if on_c3 else "Q", value))
    return OrbitTrace(("C4",), tuple(points), None, True), maps


def exceptional_orbit_report(params: FamilyParams, horizon: int = DEFAULT_HORIZON) -> OrbitReport:
    """Orbits of the contracted curves, up to ``horizon`` steps each.

    Step 1 is the image of the curve itself. For n even the curves
    C1, C2, P1, ..., P_{n-2} share one orbit on the self-mapped fiber
    P_{n-1}; for n odd they share one orbit on the two-cycle P_n, P_{n-2}.
    C4 lands on C3 and then alternates between C3 and Q.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if params.is_symbolic:
        raise ValueError("orbit reports need concrete parameters")
    n = params.n
    if n < 1:
        raise ValueError("orbit reports need n >= 1")
    family = "X" if n % 2 == 0 else "Y"
    atlas = build_tower(params, family)
    k = build_k(params)
    last_shared = n - 2 if n % 2 == 0 else n - 3
    shared = ("C1", "C2") + tuple(f"P{j}" for j in range(1, last_shared + 1))
    fiber_maps: dict[str, MoebiusMap] = {}
    traces = []
    if n % 2 == 0:
        top = f"P{n - 1}"
        land = induced_fiber_map(k, atlas["C1"], atlas[top])
        self_map = induced_fiber_map(k, atlas[top], atlas[top])
        fiber_maps.update({f"C1->{top}": land, f"{top}->{top}": self_map})
        traces.append(_fiber_orbit(land(None), (top,), [self_map], [_pole(self_map)],
                                   horizon, shared))
    elif n >= 3:
        top, low = f"P{n}", f"P{n - 2}"
        land = induced_fiber_map(k, atlas["C1"], atlas[top])
        down = induced_fiber_map(k, atlas[top], atlas[low])
        up = induced_fiber_map(k, atlas[low], atlas[top])
        fiber_maps.update({f"C1->{top}": land, f"{top}->{low}": down, f"{low}->{top}": up})
        # only the pole on P_n is a point of indeterminacy; the pole of the
        # return map on P_{n-2} is a regular point sent to the far end of P_n
        traces.append(_fiber_orbit(land(None), (top, low), [down, up], [_pole(down), None],
                                   horizon, shared))
    else:
        traces.append(_n1_orbit(params, atlas, k, horizon, fiber_maps))
    c4, maps = _c4_orbit(atlas, k, horizon)
    fiber_maps.update(maps)
    traces.append(c4)
    return OrbitReport(params, horizon, family, tuple(traces), fiber_maps)


def _n1_orbit(params, atlas, k, horizon, fiber_maps) -> OrbitTrace:
    """n = 1: C2 lands on P1, then the point alternates between P1 and E2.

    On E2 the point zeta = 0 (where E2 meets the line x1 = 0) is indeterminate.
    """
    land = induced_fiber_map(k, atlas["C2"], atlas["P1"])
    to_e2 = induced_fiber_map(k, atlas["P1"], atlas["E2"])
    to_p1 = induced_fiber_map(k, atlas["E2"], atlas["P1"])
    fiber_maps.update({"C2->P1": land, "P1->E2": to_e2, "E2->P1": to_p1})
    return _fiber_orbit(land(None), ("P1", "E2"), [to_e2, to_p1], [None, 0], horizon, ("C2",))


def genericity_report(params: FamilyParams, horizon: int = DEFAULT_HORIZON) -> GenericityFlags:
    """Algebraic degeneracy conditions, the a0 = 2/m family checked for m <= horizon."""
    return params.genericity(horizon)
