import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from kfamily.picard import (
    DivisorClass,
    IntersectionForm,
    PicBasis,
    PicMatrix,
    ZVariantError,
    charpoly,
    check_isometry,
    derived_matrix,
    growth_class,
    nilpotency_index,
    pic_basis,
    pic_matrix,
    poly_divides,
    poly_str,
    predicted_degrees,
    pullback_H_column,
    resolve_z,
    root_magnitudes,
    spectral_radius,
    strict_form,
    z_candidates,
)
from kfamily.projmap import FamilyParams, build_k
from kfamily.tower import build_tower

X = sp.Symbol("x")


def sympy_charpoly(M: PicMatrix) -> list[int]:
    coeffs = sp.Matrix(M.rows).charpoly(X).all_coeffs()
    return [int(c) for c in reversed(coeffs)]


# linear algebra -----------------------------------------------------------------

@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_matches_sympy(rows):
    n = len(rows)
    B = PicBasis.of([f"E{i}" for i in range(1, n)])
    M = PicMatrix(B, tuple(tuple(r) for r in rows))
    assert charpoly(M) == sympy_charpoly(M)


def test_spectral_radius_quadratic():
    assert abs(spectral_radius([-1, -3, 1]) - 3.302775637732) < 1e-9


def test_spectral_radius_cubic():
    rho = spectral_radius([-1, -2, -1, 1])
    assert abs(rho - max(abs(np.roots([1, -1, -2, -1])))) < 1e-12
    assert abs(rho - 2.1478990357) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=2, max_size=6))
def test_spectral_radius_against_numpy(tail):
    p = tail + [1]
    if all(c == 0 for c in tail):
        return
    rho = spectral_radius(p)
    ref = max(abs(r) for r in np.roots(list(reversed(p))))
    assert abs(rho - ref) < 1e-6 * max(1.0, ref)


def test_poly_divides_and_str():
    assert poly_divides([-1, -3, 1], charpoly(pic_matrix(2, "X")))
    assert poly_str([-1, -3, 1]) == "x^2 - 3*x - 1"
    assert not poly_divides([1, 1], [1, 0, 1])


def test_nilpotency_index():
    B = PicBasis.of(["E1", "E2"])
    jordan = PicMatrix(B, ((1, 1, 0), (0, 1, 1), (0, 0, 1)))
    assert nilpotency_index(jordan, 1) == 3
    assert nilpotency_index(PicMatrix.identity(B), 1) == 1


def test_isometry_of_identity():
    B = PicBasis.of(["E1", "E2"])
    assert check_isometry(PicMatrix.identity(B), IntersectionForm.diagonal(B))


def test_divisor_class_arithmetic():
    B = PicBasis.of(["E1", "Q"])
    d = DivisorClass.of(B, {"H": 2, "E1": -1})
    assert (d + B.unit("Q"))["Q"] == 1
    assert (3 * d)["H"] == 6 and (d - d) == B.zero()
    assert str(d) == "2H - E1"


# encoded matrices ------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_even_restricted_charpoly(n):
    M = pic_matrix(n, "X").restrict(["H", "E1", "Q", f"P{n - 1}"])
    factor = [-1, -(n + 1), 1]
    want = sp.Poly(X * (X - 1) * (X ** 2 - (n + 1) * X - 1), X).all_coeffs()
    assert charpoly(M) == [int(c) for c in reversed(want)]
    assert poly_divides(factor, charpoly(pic_matrix(n, "X")))


def test_even_restricted_matrix_n2():
    M = pic_matrix(2, "X").restrict(["H", "E1", "Q", "P1"])
    cols = [tuple(r[j] for r in M.rows) for j in range(4)]
    assert cols == [(5, -2, -3, -3), (0, 1, 0, 0), (1, -1, -1, -1), (2, -1, -1, -1)]


@pytest.mark.parametrize("n", [1, 3, 5, 7])
def test_odd_charpoly_factor(n):
    M = pic_matrix(n, "Y")
    cp = charpoly(M)
    assert cp == sympy_charpoly(M)
    assert poly_divides([-1, -(n + 1), -n, 1], cp)


def test_odd_n3_rate():
    assert abs(spectral_radius(charpoly(pic_matrix(3, "Y"))) - 4.0489173395) < 1e-9


def test_pic_matrix_preconditions():
    with pytest.raises(ValueError):
        pic_matrix(3, "X")
    with pytest.raises(ValueError):
        pic_matrix(2, "Y")
    with pytest.raises(ValueError):
        pic_matrix(FamilyParams.of([1, 2, 3, 4]), "Z")


@pytest.mark.parametrize("n,family,want", [
    (2, "X", [5, 16, 53, 175, 578]),
    (3, "Y", [7, 27, 110, 445]),
    (1, "Y", [3, 7, 16, 35, 76, 164, 353, 759, 1631]),
])
def test_predicted_degrees(n, family, want):
    assert predicted_degrees(pic_matrix(n, family), len(want)) == want


def test_growth_classes():
    assert growth_class(pic_matrix(2, "X")).kind == "exponential"
    assert abs(growth_class(pic_matrix(2, "X")).rate - 3.302775637732) < 1e-9


# mechanical re-derivation ------------------------------------------------------------

@pytest.mark.parametrize("n,family", [(1, "Y"), (2, "X"), (3, "Y"), (4, "X")])
def test_derived_matrix_matches_encoded(n, family):
    p = FamilyParams.symbolic(n)
    got = derived_matrix(build_tower(p, family), build_k(p))
    assert got.rows == pic_matrix(n, family).rows


@pytest.mark.parametrize("n,family", [(2, "X"), (3, "Y"), (4, "X"), (5, "Y"), (6, "X")])
def test_h_column(n, family):
    p = FamilyParams.symbolic(n)
    got = pullback_H_column(build_tower(p, family), build_k(p))
    assert got == pic_matrix(n, family).column("H")


def test_cubic_h_column():
    p = FamilyParams.cubic("a", "b")
    got = pullback_H_column(build_tower(p, "Z"), build_k(p))
    B = pic_basis(3, "Z")
    assert [got[f] for f in B] == [7, -3, -4, -4, -8, -9, -10, -10, -10, -3, -4, -6]


# the automorphism family ---------------------------------------------------------------

@pytest.fixture(scope="module")
def cubic_form():
    return strict_form(build_tower(FamilyParams.cubic("a", "b"), "Z"))


def test_strict_form_signature(cubic_form):
    assert cubic_form.signature() == (1, 11)


def test_z_variant_resolution(cubic_form):
    res = resolve_z(cubic_form)
    assert res.variant == "a"
    assert not res.report["b"]["isometry"]
    M = res.matrix
    assert check_isometry(M, cubic_form)
    assert nilpotency_index(M, 1) == 3
    assert all(abs(m - 1) < 1e-9 for m in root_magnitudes(charpoly(M)))
    assert growth_class(M).kind == "quadratic"


def test_z_diagonal_form_is_not_preserved():
    B = pic_basis(3, "Z")
    with pytest.raises(ZVariantError):
        resolve_z(IntersectionForm.diagonal(B))


def test_z_predicted_degrees():
    M = pic_matrix(FamilyParams.cubic(1, 1), "Z")
    assert predicted_degrees(M, 11) == [7, 17, 39, 65, 103, 145, 199, 257, 327, 401, 487]


def test_z_candidates_share_h_column():
    a, b = z_candidates().values()
    assert a.column("H") == b.column("H")


def test_cubic_derived_matrix():
    """Full re-derivation at one concrete member; symbolic a, b is far slower."""
    p = FamilyParams.cubic(3, -2)
    atlas = build_tower(p, "Z")
    got = derived_matrix(atlas, build_k(p))
    assert got.rows == resolve_z(strict_form(atlas)).matrix.rows
