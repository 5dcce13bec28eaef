"""Jacobians, exceptional curves, base points and invariants of plane maps."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

from gmpy2 import mpq

from ..polycore import MultiPoly, gcd_many, normalize_many, poly_print, trial_divide
from .builders import Curve
from .maps import PROJ, DegenerateMap, ProjMap
from .points import ProjPoint

ROOT_HEIGHT = 10 ** 4


def jacobian(f: ProjMap) -> MultiPoly:
    """Determinant of the matrix of partials of the components in x0, x1, x2."""
    m = [[c.diff(v) for v in PROJ] for c in f.components]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


@dataclass
class JacobianReport:
    exponents: dict[str, int]
    remainder: MultiPoly

    @property
    def remainder_is_constant(self) -> bool:
        return self.remainder.is_constant

    def exceptional(self) -> list[str]:
        return [name for name, e in self.exponents.items() if e > 0]

    def to_json(self) -> dict:
        return {"exponents": dict(self.exponents), "remainder": poly_print(self.remainder)}


def jacobian_factored(f: ProjMap, curves: Sequence[Curve]) -> JacobianReport:
    """Exponent of each curve in the Jacobian determinant plus the cofactor.

    Curves sharing a defining polynomial (C1 and C1', say) report the same
    exponent; the polynomial is divided out once.
    """
    jac = jacobian(f)
    if jac.is_zero:
        raise DegenerateMap("Jacobian vanishes identically: the map is not dominant")
    distinct: list[MultiPoly] = []
    for c in curves:
        if c.poly not in distinct:
            distinct.append(c.poly)
    td = trial_divide(jac, distinct)
    by_poly = dict(zip(distinct, td.exponents))
    return JacobianReport({c.name: by_poly[c.poly] for c in curves}, td.remainder)


def _pull_curve(f: ProjMap, curve: Curve) -> list[MultiPoly]:
    S = curve.param[0].ring
    sub = list(curve.param) + [S.gen(v) for v in f.ring.variables[3:]]
    return [c.compose(sub) for c in f.components]


@dataclass
class CurveImage:
    """Either the point a curve is blown down to, or the degree of its image."""

    curve: str
    is_point: bool
    coords: tuple[MultiPoly, MultiPoly, MultiPoly]  # image triple after removing the gcd
    degree: int  # degree of the image triple in the curve parameters

    @property
    def point(self) -> ProjPoint:
        if not self.is_point:
            raise ValueError(f"{self.curve} is not blown down")
        return ProjPoint(tuple(c.constant_value() for c in self.coords))

    def to_json(self) -> dict:
        return {"curve": self.curve, "is_point": self.is_point,
                "image": [poly_print(c) for c in self.coords], "degree": self.degree}


def image_of_curve(f: ProjMap, curve: Curve) -> CurveImage:
    pulled = _pull_curve(f, curve)
    if all(p.is_zero for p in pulled):
        raise DegenerateMap(f"{curve.name} lies in the base locus of {f.label or 'the map'}")
    g = gcd_many(pulled)
    if not g.is_constant:
        pulled = [p.exact_div(g) for p in pulled]
    pulled = normalize_many(pulled)
    # the image is a point iff the triple is proportional to its derivatives
    rank_one = all((pulled[i] * pulled[j].diff(v) - pulled[j] * pulled[i].diff(v)).is_zero
                   for v in (0, 1) for i in range(3) for j in range(i + 1, 3))
    deg = max(p.degree_in_vars((0, 1)) for p in pulled if not p.is_zero)
    return CurveImage(curve.name, rank_one, tuple(pulled), deg)


@dataclass
class BasePoints:
    curve: str
    points: list[tuple[ProjPoint, int]] = field(default_factory=list)
    residual: MultiPoly | None = None  # factor of the gcd without rational roots
    in_base_locus: bool = False

    def point_set(self) -> set[ProjPoint]:
        return {p for p, _ in self.points}

    def to_json(self) -> dict:
        return {"curve": self.curve, "in_base_locus": self.in_base_locus,
                "points": [{"point": p.to_json(), "multiplicity": m} for p, m in self.points],
                "residual": poly_print(self.residual) if self.residual is not None else None}


def _divisors_upto(n: int, bound: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, min(n, bound) + 1) if n % d == 0]


def rational_roots(coeffs: list, bound: int = ROOT_HEIGHT) -> list[mpq]:
    """Rational roots p/q with |p|, q <= bound of an integer polynomial (low to high)."""
    coeffs = list(coeffs)
    roots = []
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        if 0 not in roots:
            roots.append(mpq(0))
    if len(coeffs) < 2:
        return roots
    nums = _divisors_upto(int(coeffs[0]), bound)
    dens = _divisors_upto(int(coeffs[-1]), bound)
    for q in dens:
        for p in nums:
            if math.gcd(p, q) != 1:
                continue
            for r in (mpq(p, q), mpq(-p, q)):
                acc = mpq(0)
                for c in reversed(coeffs):
                    acc = acc * r + c
                if acc == 0:
                    roots.append(r)
    return roots


def base_points_on_curve(f: ProjMap, curve: Curve, bound: int = ROOT_HEIGHT) -> BasePoints:
    """Points of the curve where all components of f vanish, with multiplicities."""
    if f.ring.nvars != 3:
        raise ValueError("base points need concrete parameters")
    pulled = _pull_curve(f, curve)
    report = BasePoints(curve.name)
    if all(p.is_zero for p in pulled):
        report.in_base_locus = True
        return report
    g = gcd_many(pulled)
    S = g.ring
    s, t = S.gen("s"), S.gen("t")

    def at(sv, tv):
        vals = [c.evaluate([sv, tv]) for c in curve.param]
        return ProjPoint(tuple(vals))

    rest = g
    # the parameter value [1:0]
    e = 0
    while not rest.is_constant and rest.try_divide(t) is not None:
        rest = rest.exact_div(t)
        e += 1
    if e:
        report.points.append((at(1, 0), e))
    if not rest.is_constant:
        uni = rest.as_univariate("s")
        # coefficients of s^i are multiples of powers of t; set t = 1
        coeffs = [uni[i].evaluate([0, 1]) if i in uni else 0 for i in range(max(uni) + 1)]
        den = 1
        for c in coeffs:
            den = math.lcm(den, int(mpq(c).denominator))
        ints = [int(mpq(c) * den) for c in coeffs]
        for r in rational_roots(ints, bound):
            lin = (s * r.denominator - t * r.numerator) if r != 0 else s
            m = 0
            while not rest.is_constant and rest.try_divide(lin) is not None:
                rest = rest.exact_div(lin)
                m += 1
            if m:
                report.points.append((at(r, 1), m))
    if not rest.is_constant:
        report.residual = rest
    return report


def check_invariant(f: ProjMap, phi1: MultiPoly, phi2: MultiPoly) -> bool:
    """Whether phi1/phi2 is invariant: (phi1 o f) phi2 == (phi2 o f) phi1 exactly."""
    if phi1.ring != f.ring or phi2.ring != f.ring:
        raise ValueError("invariant and map must share a ring")
    d1 = phi1.degree_in_vars(PROJ)
    d2 = phi2.degree_in_vars(PROJ)
    if d1 != d2 or not phi1.is_homogeneous_in(PROJ) or not phi2.is_homogeneous_in(PROJ):
        raise ValueError("phi1 and phi2 must be forms of equal degree")
    return (f.pull(phi1) * phi2 - f.pull(phi2) * phi1).is_zero


def cubic_invariant(ring, a: MultiPoly, b: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Numerator and denominator of the invariant of the automorphism family.

    The x0^2 x1^2 coefficient is -2 for every (a, b); this is what the exact
    identity check demands.
    """
    x0, x1, x2 = ring.gens()[:3]
    phi1 = x0 ** 2 * x2 ** 2
    phi2 = (-2 * x0 ** 4 + 4 * x0 ** 3 * x1 - 2 * x0 ** 2 * x1 ** 2
            + 2 * a * x1 * x2 ** 2 * (x0 + x2) - 2 * b * (x0 ** 3 * x2 - x0 ** 2 * x1 * x2))
    return phi1, phi2
