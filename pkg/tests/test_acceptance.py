"""End-to-end acceptance criteria, one test per criterion.

Each test prints a PASS/FAIL line and the terminal summary repeats them all.
"""

import random
import time

from gmpy2 import mpq

from conftest import Criterion
from kfamily.checks import (
    VerifyContext,
    check_builders,
    check_e2_map,
    check_exceptional,
    check_fibermaps,
    check_inverse,
    check_involutions,
    check_jacobian,
    named_factor,
    x_restricted,
)
from kfamily.cli import quadratic_fit
from kfamily.picard import (
    charpoly,
    check_isometry,
    nilpotency_index,
    pic_matrix,
    poly_divides,
    poly_str,
    predicted_degrees,
    pullback_H_column,
    resolve_z,
    root_magnitudes,
    spectral_radius,
    strict_form,
)
from kfamily.projmap import FamilyParams, build_k, check_invariant, cubic_invariant, degree_sequence
from kfamily.tower import build_tower, exceptional_orbit_report

SEED = 20240611
CUBIC = FamilyParams.cubic("a", "b")


def _ctx(p):
    return VerifyContext(p, CUBIC)


def _run_draws(crit, rng, ns, draws, *checks):
    for n in ns:
        for i in range(draws):
            p = FamilyParams.random(n, rng)
            for chk in checks:
                for r in chk(_ctx(p)):
                    crit.check(r.passed, f"n={n} draw {i} {r.name} {p.to_json()}")


def test_criterion_01_involutions():
    crit = Criterion(1, "both involutions square to the identity, n = 0..4, 20 draws each, < 10 s")
    t0 = time.perf_counter()
    _run_draws(crit, random.Random(SEED), range(5), 20, check_involutions)
    elapsed = time.perf_counter() - t0
    crit.check(elapsed < 10, f"took {elapsed:.1f} s")
    crit.finish()


def test_criterion_02_builders_and_inverse():
    crit = Criterion(2, "closed-form k equals the composition and k o k^-1 = id, n = 1..3, "
                        "10 draws each, < 60 s")
    t0 = time.perf_counter()
    _run_draws(crit, random.Random(SEED + 2), (1, 2, 3), 10, check_builders, check_inverse)
    elapsed = time.perf_counter() - t0
    crit.check(elapsed < 60, f"took {elapsed:.1f} s")
    crit.finish()


def test_criterion_03_jacobian():
    crit = Criterion(3, "Jacobian exponents (3n-3, 3n-1, 2, 1) on C1..C4, n = 1..4")
    _run_draws(crit, random.Random(SEED + 3), (1, 2, 3, 4), 1, check_jacobian)
    crit.finish()


def test_criterion_04_exceptional_images():
    crit = Criterion(4, "images of the exceptional curves of k and k^-1, n = 2, 3, 10 draws each")
    _run_draws(crit, random.Random(SEED + 4), (2, 3), 10, check_exceptional)
    crit.finish()


def test_criterion_05_fiber_maps():
    crit = Criterion(5, "induced fiber maps as identities in symbolic parameters, n = 2, 3, "
                        "plus the E2 map of the cubic family")
    for n in (2, 3):
        res = check_fibermaps(_ctx(FamilyParams.symbolic(n)))
        crit.check(len(res) >= 6, f"n={n}: only {len(res)} fiber checks ran")
        for r in res:
            crit.check(r.passed, f"n={n} {r.name}")
    for r in check_e2_map(_ctx(FamilyParams.symbolic(2))):
        crit.check(r.passed, r.name)
    crit.finish()


def test_criterion_06_even_growth():
    crit = Criterion(6, "restricted X charpoly = x (x-1)(x^2-(n+1)x-1), n = 2, 4, 6; "
                        "radius 3.302775637732")
    for n in (2, 4, 6):
        M = x_restricted(n)
        crit.check(len(M.rows) == 4, f"n={n}: restricted matrix has {len(M.rows)} rows")
        full = [0] * 5
        for i, c in enumerate([0, -1, 1]):  # x (x - 1)
            for j, d in enumerate(named_factor(n)):
                full[i + j] += c * d
        got = charpoly(M)
        crit.check(got == full, f"n={n}: charpoly {poly_str(got)}")
    rho = spectral_radius([-1, -3, 1])
    crit.check(abs(rho - 3.302775637732) <= 1e-9, f"radius {rho!r}")
    crit.finish()


def test_criterion_07_odd_growth():
    crit = Criterion(7, "Y charpoly divisible by x^3 - n x^2 - (n+1) x - 1, n = 1, 3, 5")
    for n in (1, 3, 5):
        factor = [-1, -(n + 1), -n, 1]
        cp = charpoly(pic_matrix(n, "Y"))
        crit.check(poly_divides(factor, cp), f"n={n}: {poly_str(factor)} does not divide {poly_str(cp)}")
    crit.check(poly_str(named_factor(1)) == "x^3 - x^2 - 2*x - 1", "n = 1 factor")
    rate = spectral_radius([-1, -2, -1, 1])
    crit.check(abs(spectral_radius(charpoly(pic_matrix(1, "Y"))) - rate) < 1e-9,
               "n = 1 matrix radius equals the factor's root")
    seq = degree_sequence(FamilyParams.of([mpq(3, 2), mpq(-5, 7)]), 9, "prime", seed=1).degrees
    crit.check(abs(seq[-1] / seq[-2] - rate) < 2e-3, f"n = 1 degree ratio {seq[-1] / seq[-2]}")
    crit.finish()


def test_criterion_08_algebraic_stability():
    crit = Criterion(8, "degree sequence equals the Picard prediction, n = 2 to m = 4 and "
                        "n = 3 to m = 3, exact check at m <= 2, < 5 min")
    t0 = time.perf_counter()
    rng = random.Random(SEED + 8)
    for n, m_max, want in ((2, 4, [5, 16, 53, 175]), (3, 3, [7, 27, 110])):
        p = FamilyParams.random(n, rng)
        family = "X" if n % 2 == 0 else "Y"
        pred = predicted_degrees(pic_matrix(n, family), m_max)
        crit.check(pred == want, f"n={n}: prediction {pred}")
        got = degree_sequence(p, m_max, "prime", seed=SEED).degrees
        crit.check(got == pred, f"n={n}: prime-field degrees {got}")
        exact = degree_sequence(p, 2, "rational").degrees
        crit.check(exact == pred[:2], f"n={n}: exact degrees {exact}")
    elapsed = time.perf_counter() - t0
    crit.check(elapsed < 300, f"took {elapsed:.1f} s")
    crit.finish()


def test_criterion_09_degeneracy():
    crit = Criterion(9, "a0 = 2 drops below prediction by m = 5; a0 = 2/m collides with e01 "
                        "at step 2m - 1")
    p = FamilyParams.of([2, mpq(3, 7), mpq(-5, 2)])
    got = degree_sequence(p, 5, "prime", seed=SEED).degrees
    pred = predicted_degrees(pic_matrix(2, "X"), 5)
    crit.check(any(g < q for g, q in zip(got, pred)), f"degrees {got} vs {pred}")
    for m in (1, 2, 3):
        rep = exceptional_orbit_report(FamilyParams.of([mpq(2, m), mpq(3, 7), mpq(-5, 2)]), 12)
        hit = rep.trace_for("C4").collision
        crit.check(hit is not None and hit.point == "e01" and hit.step == 2 * m - 1,
                   f"a0 = 2/{m}: collision {hit}")
    crit.finish()


def test_criterion_10_cubic_family():
    """The second-difference clause is checked as stated even though the
    observed differences alternate 12, 4 rather than settling."""
    crit = Criterion(10, "Z-matrix isometry, unit-circle spectrum, nilpotency 3, settled "
                         "second differences for a = b = 1, invariant on 10 draws")
    J = strict_form(build_tower(CUBIC, "Z"))
    M = resolve_z(J).matrix
    crit.check(check_isometry(M, J), "M^T J M != J")
    mags = root_magnitudes(charpoly(M))
    crit.check(all(abs(m - 1) <= 1e-9 for m in mags), f"root magnitudes {mags}")
    crit.check(nilpotency_index(M, 1) == 3, f"nilpotency index {nilpotency_index(M, 1)}")
    degs = degree_sequence(FamilyParams.cubic(1, 1), 10, "prime", seed=SEED).degrees
    pred = predicted_degrees(pic_matrix(FamilyParams.cubic(1, 1), "Z"), 10)
    crit.check(degs == pred, f"degrees {degs} differ from the Z prediction {pred}")
    fit = quadratic_fit(degs)
    crit.check(fit["eventually_constant"],
               f"second differences {fit['second_differences']} are not eventually constant")
    rng = random.Random(SEED + 10)
    for _ in range(10):
        c = FamilyParams.random_cubic(rng)
        k = build_k(c)
        a, b = (x.to_ring(k.ring) for x in c.cubic_ab())
        phi1, phi2 = cubic_invariant(k.ring, a, b)
        crit.check(check_invariant(k, phi1, phi2), f"invariant fails for {c.to_json()}")
    crit.finish()


def test_criterion_11_h_columns():
    crit = Criterion(11, "H column from vanishing orders equals the encoded one, X n = 2, 4, "
                         "Y n = 3, Z")
    for n, family in ((2, "X"), (4, "X"), (3, "Y")):
        p = FamilyParams.symbolic(n)
        got = pullback_H_column(build_tower(p, family), build_k(p))
        crit.check(got == pic_matrix(n, family).column("H"), f"{family} n={n}: {got}")
    atlas = build_tower(CUBIC, "Z")
    got = pullback_H_column(atlas, build_k(CUBIC))
    crit.check(got == resolve_z(strict_form(atlas)).matrix.column("H"), f"Z: {got}")
    crit.finish()
