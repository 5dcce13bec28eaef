import random

import pytest
from gmpy2 import mpq
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from kfamily.checks import VerifyContext, check_e2_map, check_fibermaps
from kfamily.projmap import FamilyParams, build_k, build_k_inverse
from kfamily.tower import (
    LimitUndefined,
    MoebiusMap,
    build_tower,
    exceptional_orbit_report,
    genericity_report,
    induced_fiber_map,
    map_order,
    order_of_vanishing,
)

CUBIC = FamilyParams.cubic("a", "b")


@pytest.mark.parametrize("n,family", [(1, "Y"), (2, "X"), (3, "Y"), (4, "X"), (5, "Y")])
def test_charts_round_trip(n, family):
    atlas = build_tower(FamilyParams.symbolic(n), family)
    for name in atlas.names:
        assert atlas[name].round_trip(), name


def test_cubic_charts_round_trip():
    atlas = build_tower(CUBIC, "Z")
    assert list(atlas.fibers) == ["E1", "Q", "P1", "P2", "P3", "P4", "P5", "P6", "E2", "E01", "R"]
    for name in atlas.fibers:
        assert atlas[name].round_trip(), name


def test_tower_preconditions():
    with pytest.raises(ValueError):
        build_tower(FamilyParams.symbolic(3), "X")
    with pytest.raises(ValueError):
        build_tower(FamilyParams.symbolic(2), "Y")
    with pytest.raises(ValueError):
        build_tower(FamilyParams.symbolic(3), "Z")


# orders of vanishing -------------------------------------------------------------

def test_cubic_map_orders():
    """The H row of the pullback is minus the vanishing order of k on each fiber."""
    atlas = build_tower(CUBIC, "Z")
    k = build_k(CUBIC)
    want = {"E1": 3, "Q": 4, "P1": 4, "P2": 8, "P3": 9, "P4": 10, "P5": 10, "P6": 10,
            "E2": 3, "E01": 4, "R": 6}
    assert {f: map_order(k, atlas[f]) for f in atlas.fibers} == want


@pytest.mark.parametrize("n", [2, 4])
def test_even_map_orders(n):
    atlas = build_tower(FamilyParams.symbolic(n), "X")
    k = build_k(FamilyParams.symbolic(n))
    assert map_order(k, atlas["E1"]) == n
    assert map_order(k, atlas["Q"]) == n + 1
    for j in range(1, n):
        assert map_order(k, atlas[f"P{j}"]) == (n + 1) * j


def test_order_of_coordinate_functions():
    p = FamilyParams.of([3, -2, 5])
    atlas = build_tower(p, "X")
    x0, x1, x2 = p.plane_ring().gens()
    assert order_of_vanishing(x0, atlas["E1"]) == 1
    assert order_of_vanishing(x1, atlas["E1"]) == 0
    assert order_of_vanishing(x0, atlas["P1"]) >= 1


# fiber maps --------------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_fiber_maps_symbolic(n):
    res = check_fibermaps(VerifyContext(FamilyParams.symbolic(n), CUBIC))
    bad = [(r.name, r.detail) for r in res if not r.passed]
    assert res and not bad


def test_e2_map_symbolic():
    res = check_e2_map(VerifyContext(FamilyParams.symbolic(2), CUBIC))
    assert all(r.passed for r in res)


def test_cubic_cycles():
    """The four cycles through the extra fibers of the cubic tower."""
    atlas = build_tower(CUBIC, "Z")
    k = build_k(CUBIC)
    ki = build_k_inverse(CUBIC)
    R = atlas["E1"].ring
    a, b = (c.to_ring(R) for c in CUBIC.cubic_ab())
    eta = R.gen("eta")
    for s, t in [("C1", "P4"), ("E2", "P5"), ("C4", "E01"), ("C2", "P6"), ("P6", "R")]:
        induced_fiber_map(k, atlas[s], atlas[t])
    for s, t in [("P4", "C1"), ("P5", "E2")]:
        induced_fiber_map(k, atlas[s], atlas[t])
    m = induced_fiber_map(k, atlas["E2"], atlas["P5"])
    assert m.same_as(2 * b - a - 1 - eta, a * a)
    # the inverse sends the far fiber of each cycle back
    induced_fiber_map(ki, atlas["P5"], atlas["E2"])


def test_induced_map_rejects_wrong_target():
    p = FamilyParams.symbolic(2)
    atlas = build_tower(p, "X")
    with pytest.raises(LimitUndefined):
        induced_fiber_map(build_k(p), atlas["E1"], atlas["Q"])


def test_moebius_evaluation():
    p = FamilyParams.of([3, -2, 5])
    atlas = build_tower(p, "X")
    m = induced_fiber_map(build_k(p), atlas["P1"], atlas["P1"])
    assert m(mpq(1, 5)) == mpq(1, 10)
    assert m.poles() == [mpq(-1, 5)]
    assert m(mpq(-1, 5)) is None
    assert m(None) == mpq(1, 5)
    assert m.degree() == 1 and not m.is_constant


def test_moebius_reduces():
    p = FamilyParams.symbolic(2)
    R = build_tower(p, "X")["E1"].ring
    eta = R.gen("eta")
    m = MoebiusMap.make("A", "B", 2 * eta * (eta + 1), 4 * (eta + 1))
    assert m.same_as(eta, R.const(2)) and m.degree() == 1


# orbits -----------------------------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_c4_reaches_e01_at_odd_step(m):
    p = FamilyParams.of([mpq(2, m), 3, -1])
    rep = exceptional_orbit_report(p, 20)
    assert rep.trace_for("C4").collision.step == 2 * m - 1
    assert rep.trace_for("C4").collision.point == "e01"
    assert genericity_report(p, 20).a0_resonance == m


def test_c4_orbit_values():
    a0 = mpq(7, 3)
    rep = exceptional_orbit_report(FamilyParams.of([a0, 1, 1]), 9)
    on_c3 = [pt for pt in rep.trace_for("C4").points if pt.location == "C3"]
    assert [pt.value for pt in on_c3] == [m * a0 - 1 for m in range(1, len(on_c3) + 1)]
    assert rep.stable


def test_even_orbit_closed_form():
    p = FamilyParams.of([3, -2, 5])
    rep = exceptional_orbit_report(p, 8)
    tr = rep.trace_for("C1")
    assert [pt.value for pt in tr.points] == [mpq(1, 5 * j) for j in range(1, 9)]
    assert tr.truncated and tr.collision is None


def test_odd_orbit_two_cycle_formula():
    a = [mpq(3), mpq(1, 2), mpq(-2), mpq(7)]
    rep = exceptional_orbit_report(FamilyParams.of(a), 13)
    tr = rep.trace_for("C1")
    top = [pt for pt in tr.points if pt.location == "P3"]
    n, an, am = 3, a[3], a[2]
    # after 4m applications the orbit is back on P3 at the closed form
    for m in range(1, 4):
        pt = tr.points[4 * m]
        assert pt.location == "P3"
        assert pt.value == (2 * m * (n - 1) * an - (4 * m + 1) * am) / an ** 2
    assert top[0].value == -am / an ** 2


def test_odd_resonance_collides_immediately():
    rep = exceptional_orbit_report(FamilyParams.of([3, 5, 1, 1]), 10)
    assert rep.trace_for("C1").collision.step == 1
    assert not rep.stable


def test_n1_e2_resonance():
    rep = exceptional_orbit_report(FamilyParams.of([mpq(5, 4), 5]), 10)
    assert rep.trace_for("C2").collision.point == "E2:0"
    assert rep.trace_for("C2").collision.step == 4
    assert genericity_report(FamilyParams.of([mpq(5, 4), 5])).e2_resonance == 2


def test_orbit_report_json():
    rep = exceptional_orbit_report(FamilyParams.of([3, -2, 5]), 3)
    d = rep.to_json()
    assert d["stable"] and d["family"] == "X" and len(d["orbits"]) == 2


def test_orbit_report_needs_concrete_parameters():
    with pytest.raises(ValueError):
        exceptional_orbit_report(FamilyParams.symbolic(2), 3)


@st.composite
def orbit_params(draw):
    n = draw(st.sampled_from([2, 3, 4, 5]))
    vals = [mpq(draw(st.integers(-6, 6)), draw(st.integers(1, 4))) for _ in range(n + 1)]
    if draw(st.booleans()):
        vals[0] = mpq(2, draw(st.integers(1, 12)))
    if n % 2 and draw(st.booleans()):
        vals[n - 1] = (n - 1) * vals[n] / 2
    assume(vals[-1] != 0)
    return FamilyParams.of(vals)


@settings(max_examples=100, deadline=None)
@given(orbit_params())
def test_orbit_collisions_match_genericity_flags(p):
    """A collision within 2H - 1 steps happens exactly when the flags at horizon H fire."""
    H = 8
    flags = genericity_report(p, H)
    rep = exceptional_orbit_report(p, 2 * H - 1)
    assert rep.stable == flags.generic
    c4 = rep.trace_for("C4").collision
    assert (c4 is not None) == (flags.a0_resonance is not None)
    if c4 is not None:
        assert c4.step == 2 * flags.a0_resonance - 1


def test_random_draws_are_stable():
    rng = random.Random(11)
    for n in (2, 3, 4, 5):
        for _ in range(5):
            assert exceptional_orbit_report(FamilyParams.random(n, rng), 40).stable
