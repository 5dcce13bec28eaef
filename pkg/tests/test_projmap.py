import random

import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import draw_params, to_sympy
from kfamily.polycore import PLANE, Ring
from kfamily.projmap import (
    CurveCatalog,
    DegenerateMap,
    FamilyParams,
    Indeterminate,
    ProjMap,
    ProjPoint,
    apply,
    base_points_on_curve,
    build_iota,
    build_jf,
    build_k,
    build_k_any,
    build_k_inverse,
    check_invariant,
    compose,
    cubic_invariant,
    degree_sequence,
    image_of_curve,
    iterate,
    jacobian_factored,
)

X, Y = sp.symbols("x y")
x0, x1, x2 = PLANE.gens()


def affine_k(coeffs):
    """k = jF o iota in affine coordinates, computed by sympy from the involutions."""
    F = sum(sp.Rational(str(c)) * Y ** j for j, c in enumerate(coeffs))
    ix = 1 - X - (X - 1) / Y
    iy = -Y - 1 - Y / (X - 1)
    return F.subs(Y, iy) - ix, iy


def dehomogenize(f: ProjMap):
    s = [to_sympy(c).subs({"x0": 1, "x1": X, "x2": Y}) for c in f.components]
    return s[1] / s[0], s[2] / s[0]


@pytest.mark.parametrize("coeffs", [[2], [3, -1], [mpq(1, 2), 2, -3], [1, 0, 0, 5]])
def test_k_matches_composition_oracle(coeffs):
    p = FamilyParams.of(coeffs)
    ours = dehomogenize(build_k_any(p))
    theirs = affine_k(p.values)
    assert sp.simplify(ours[0] - theirs[0]) == 0
    assert sp.simplify(ours[1] - theirs[1]) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_degree_is_2n_plus_1(n):
    assert build_k(FamilyParams.of(range(1, n + 2))).degree == 2 * n + 1


def test_k_components_n2():
    k = build_k(FamilyParams.of([1, 1, 1]))
    w = x0 * x1 - x0 ** 2
    assert k.components[0] == w ** 2 * x2 or k.components[0] == -(w ** 2 * x2)


@pytest.mark.parametrize("n", range(0, 5))
def test_involutions(n, rng):
    p = draw_params(n, rng)
    assert compose(build_iota(p), build_iota(p)).is_identity()
    assert compose(build_jf(p), build_jf(p)).is_identity()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_inverse(n, rng):
    p = draw_params(n, rng)
    k, ki = build_k(p), build_k_inverse(p)
    assert compose(k, ki).is_identity()
    assert compose(ki, k).is_identity()
    assert k == compose(build_jf(p), build_iota(p))


def test_symbolic_parameters_compose():
    p = FamilyParams.symbolic(1)
    assert compose(build_k(p), build_k_inverse(p)).is_identity()


def test_compose_normalizes():
    f = ProjMap([x0 * x1, x1 * x1, x2 * x1])
    assert f.is_identity()
    g = ProjMap([2 * x0, 4 * x1, 6 * x2])
    assert [c for c in g.components] == [x0, 2 * x1, 3 * x2]


def test_zero_triple_rejected():
    with pytest.raises(DegenerateMap):
        ProjMap([PLANE.zero()] * 3)


def test_apply_and_indeterminacy():
    p = FamilyParams.of([3, -2, 5])
    k = build_k(p)
    assert apply(k, ProjPoint.of(1, 2, 3)).same_as(
        ProjPoint(tuple(c.evaluate([1, 2, 3]) for c in k.components)))
    with pytest.raises(Indeterminate):
        apply(k, ProjPoint.of(1, 1, 0))


@settings(max_examples=25, deadline=None)
@given(st.integers(-9, 9), st.integers(1, 9), st.integers(-9, 9))
def test_apply_composition(a, b, c):
    p = FamilyParams.of([2, 3])
    k, ki = build_k(p), build_k_inverse(p)
    pt = ProjPoint.of(b, a, c)
    try:
        img = apply(k, pt)
        back = apply(ki, img)
    except Indeterminate:
        return
    assert back.same_as(pt)


def test_point_normalization():
    assert ProjPoint.of(2, 4, 6) == ProjPoint.of(-1, -2, -3)
    with pytest.raises(ValueError):
        ProjPoint.of(0, 0, 0)


# Jacobian and exceptional curves ---------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_jacobian_exponents(n, rng):
    p = draw_params(n, rng)
    rep = jacobian_factored(build_k(p), CurveCatalog(p).forward())
    assert rep.exponents == {"C1": 3 * n - 3, "C2": 3 * n - 1, "C3": 2, "C4": 1}
    assert rep.remainder_is_constant


def test_jacobian_n2_unit_coefficients():
    p = FamilyParams.of([1, 1, 1])
    rep = jacobian_factored(build_k(p), CurveCatalog(p).forward())
    assert list(rep.exponents.values()) == [3, 5, 2, 1]


def test_catalog_parametrizations_lie_on_curves():
    cat = CurveCatalog(FamilyParams.of([mpq(2, 3), -1, 4]))
    assert all(c.check() for c in cat)


@pytest.mark.parametrize("n", [2, 3])
def test_exceptional_images(n, rng):
    p = draw_params(n, rng)
    cat = CurveCatalog(p)
    k, ki = build_k(p), build_k_inverse(p)
    e1, e2, e01 = ProjPoint.of(0, 1, 0), ProjPoint.of(0, 0, 1), ProjPoint.of(1, 1, 0)
    for name in ("C1", "C2", "C3"):
        assert image_of_curve(k, cat[name]).point == e1
    assert image_of_curve(k, cat["C4"]).point == ProjPoint.of(1, p.value(0) - 1, 0)
    assert image_of_curve(ki, cat["C1'"]).point == e1
    assert image_of_curve(ki, cat["C2'"]).point == e2
    assert image_of_curve(ki, cat["C3'"]).point == e1
    assert image_of_curve(ki, cat["C4'"]).point == e01


def test_non_exceptional_curve_has_an_image_curve():
    p = FamilyParams.of([3, -2, 5])
    cat = CurveCatalog(p)
    img = image_of_curve(build_k_inverse(p), cat["C4"])
    assert not img.is_point and img.degree >= 1


def test_base_points():
    p = FamilyParams.of([3, -2, 5])
    cat = CurveCatalog(p)
    k = build_k(p)
    assert base_points_on_curve(k, cat["C3"]).point_set() == {ProjPoint.of(1, 1, 0), ProjPoint.of(0, 1, 0)}
    assert base_points_on_curve(k, cat["C1"]).point_set() == {ProjPoint.of(0, 1, 0), ProjPoint.of(0, 0, 1)}
    ident = compose(k, build_k_inverse(p))
    assert base_points_on_curve(ident, cat["C3"]).points == []


def test_base_points_in_base_locus_flagged():
    f = ProjMap([x2 * x0, x2 * x1, x2 * x0 + x2 * x1], normalized=True)
    cat = CurveCatalog(FamilyParams.of([1, 1]))
    assert base_points_on_curve(f, cat["C3"]).in_base_locus


# invariants --------------------------------------------------------------------

@settings(max_examples=8, deadline=None)
@given(st.integers(-6, 6).filter(bool), st.integers(1, 5), st.integers(-6, 6), st.integers(1, 5))
def test_cubic_invariant(an, ad, bn, bd):
    p = FamilyParams.cubic(mpq(an, ad), mpq(bn, bd))
    k = build_k(p)
    a, b = (c.to_ring(k.ring) for c in p.cubic_ab())
    assert check_invariant(k, *cubic_invariant(k.ring, a, b))


def test_cubic_invariant_symbolic():
    p = FamilyParams.cubic("a", "b")
    k = build_k(p)
    a, b = (c.to_ring(k.ring) for c in p.cubic_ab())
    assert check_invariant(k, *cubic_invariant(k.ring, a, b))


def test_invariant_fails_for_generic_n2():
    p = FamilyParams.of([3, -2, 5])
    k = build_k(p)
    R = k.ring
    assert not check_invariant(k, *cubic_invariant(R, R.const(1), R.const(1)))


def test_trivial_invariant():
    k = build_k(FamilyParams.of([3, -2, 5]))
    assert check_invariant(k, x0 ** 2, x0 ** 2)


def test_invariant_degree_mismatch():
    k = build_k(FamilyParams.of([3, -2, 5]))
    with pytest.raises(ValueError):
        check_invariant(k, x0, x0 ** 2)


# degree sequences -----------------------------------------------------------------

def test_degree_sequence_n2():
    p = FamilyParams.random(2, random.Random(7))
    assert degree_sequence(p, 4).degrees == [5, 16, 53, 175]


def test_degree_sequence_exact_matches_prime():
    p = FamilyParams.random(3, random.Random(8))
    exact = degree_sequence(p, 2, "rational").degrees
    assert exact == degree_sequence(p, 2).degrees == [7, 27]


def sympy_map_degree(Xf, Yf):
    """Degree of [1 : X : Y] after clearing denominators and common factors."""
    Xn, Xd = sp.fraction(sp.cancel(Xf))
    Yn, Yd = sp.fraction(sp.cancel(Yf))
    den = sp.lcm(Xd, Yd)
    parts = [den, sp.cancel(Xn * den / Xd), sp.cancel(Yn * den / Yd)]
    return max(sp.Poly(q, X, Y).total_degree() for q in parts)


@pytest.mark.parametrize("coeffs,want", [([3, 2], 7), ([mpq(-1, 3), 5], 7), ([7], 6)])
def test_degree_of_square_matches_sympy(coeffs, want):
    p = FamilyParams.of(coeffs)
    Xf, Yf = affine_k(p.values)
    X2 = Xf.subs({X: Xf, Y: Yf}, simultaneous=True)
    Y2 = Yf.subs({X: Xf, Y: Yf}, simultaneous=True)
    assert iterate(build_k_any(p), 2).degree == sympy_map_degree(X2, Y2) == want


def test_degree_sequence_n1():
    p = FamilyParams.random(1, random.Random(3))
    assert degree_sequence(p, 7).degrees == [3, 7, 16, 35, 76, 164, 353]


def test_degree_sequence_budget():
    p = FamilyParams.of([3, 5, 7])
    seq = degree_sequence(p, 5, "rational", budget=1000)
    assert not seq.complete and seq.warnings


def test_degree_sequence_errors():
    p = FamilyParams.of([3, 5, 7])
    with pytest.raises(ValueError):
        degree_sequence(p, 0)
    with pytest.raises(ValueError):
        degree_sequence(p, 2, "float")
    with pytest.raises(ValueError):
        degree_sequence(FamilyParams.symbolic(2), 2)


# parameters -----------------------------------------------------------------------

def test_genericity_flags():
    assert FamilyParams.of([mpq(2, 5), 1, 1]).genericity().a0_resonance == 5
    assert FamilyParams.of([3, 5, 1, 1]).genericity().odd_resonance
    assert FamilyParams.of([mpq(5, 4), 5]).genericity().e2_resonance == 2
    assert FamilyParams.of([3, 5, 7]).genericity().generic


def test_random_draws_are_generic():
    rng = random.Random(5)
    for n in range(5):
        assert FamilyParams.random(n, rng).genericity().generic


def test_leading_coefficient_must_be_nonzero():
    with pytest.raises(ValueError):
        FamilyParams.of([1, 2, 0])


def test_cubic_family_shape():
    p = FamilyParams.cubic(3, -1)
    assert p.values == (2, -1, 3, 3)
    assert p.cubic_ab() == (p.coeffs[3], p.coeffs[1])
    with pytest.raises(ValueError):
        FamilyParams.cubic(0, 1)


def test_map_json():
    k = build_k(FamilyParams.of([1, 1]))
    d = k.to_json()
    assert set(d) == {"components", "degree", "label"} and d["degree"] == 3
    R = Ring(("x0", "x1", "x2"))
    assert ProjMap([R.gen(0), R.gen(1), R.gen(2)]).to_json()["degree"] == 1


def test_constant_f_grows_like_the_golden_mean():
    seq = degree_sequence(FamilyParams.of([7]), 6).degrees
    assert seq == [3, 6, 11, 19, 32, 53]
    assert [b - a for a, b in zip(seq, seq[1:])] == [3, 5, 8, 13, 21]
