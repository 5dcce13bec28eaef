"""Normalization, trial division and multivariate gcd.

The gcd has two routes. Callers that know which factors can occur (the
exceptional curves of a map) hand them to :func:`gcd_many` as candidates;
those are divided out first and the remainder is certified coprime by a
restriction to a random line over a large prime field. Only when the
certificate fails does the general recursive gcd run: primitive pseudo
remainder sequences in a main variable, recursing on contents, with a
random-evaluation degree bound that short-circuits the coprime case.
"""

from __future__ import annotations

import math
import random
from collections.abc import Sequence

from gmpy2 import mpq

from . import upoly
from .poly import MixedRingError, MultiPoly
from .scalars import random_prime

__all__ = [
    "normalize", "poly_gcd", "gcd_many", "trial_divide", "TrialDivision",
    "certify_coprime", "content_in", "lowest_order",
]

_rng = random.Random(0x5EED)


def _certificate_prime() -> int:
    return random_prime(_rng, 62)


def normalize(p: MultiPoly) -> MultiPoly:
    """Primitive integer representative with positive leading grlex coefficient
    over QQ; monic over F_p. The zero polynomial is returned unchanged."""
    if p.is_zero:
        return p
    R = p.ring
    if R.modulus is not None:
        return p.scale(R.inv(p.leading_coeff()))
    den = 1
    for c in p.terms.values():
        den = math.lcm(den, int(c.denominator))
    num = 0
    for c in p.terms.values():
        num = math.gcd(num, int(c.numerator * (den // c.denominator)))
    factor = mpq(den, num)
    if p.leading_coeff() < 0:
        factor = -factor
    if factor == 1:
        return p
    return p.scale(factor)


def normalize_many(polys: Sequence[MultiPoly]) -> list[MultiPoly]:
    """Jointly scale a tuple so it is primitive integral with the first nonzero
    leading coefficient positive (monic over F_p)."""
    nonzero = [q for q in polys if not q.is_zero]
    if not nonzero:
        return list(polys)
    R = nonzero[0].ring
    if R.modulus is not None:
        s = R.inv(nonzero[0].leading_coeff())
        return [q.scale(s) for q in polys]
    den = 1
    for q in nonzero:
        for c in q.terms.values():
            den = math.lcm(den, int(c.denominator))
    num = 0
    for q in nonzero:
        for c in q.terms.values():
            num = math.gcd(num, int(c.numerator * (den // c.denominator)))
    factor = mpq(den, num)
    if nonzero[0].leading_coeff() < 0:
        factor = -factor
    if factor == 1:
        return list(polys)
    return [q.scale(factor) for q in polys]


def lowest_order(p: MultiPoly, var) -> int:
    return p.lowest_order(var)


# ---------------------------------------------------------------------------
# trial division


class TrialDivision:
    """Result of dividing out candidate factors: p = remainder * prod(c_i^e_i)."""

    __slots__ = ("exponents", "remainder", "zero_input")

    def __init__(self, exponents, remainder, zero_input=False):
        self.exponents = tuple(exponents)
        self.remainder = remainder
        self.zero_input = zero_input

    def __iter__(self):
        return iter((self.exponents, self.remainder))

    def __repr__(self):
        return f"TrialDivision(exponents={self.exponents}, remainder={self.remainder})"


def trial_divide(p: MultiPoly, candidates: Sequence[MultiPoly]) -> TrialDivision:
    """Divide out each candidate as often as possible, in order."""
    for c in candidates:
        if c.ring != p.ring:
            raise MixedRingError("candidate lives in another ring")
        if c.is_constant:
            raise ValueError("trial division candidates must be nonconstant")
    if p.is_zero:
        return TrialDivision([0] * len(candidates), p, zero_input=True)
    exps = []
    rem = p
    for c in candidates:
        e = 0
        while rem.degree() >= c.degree():
            q = rem.try_divide(c)
            if q is None:
                break
            rem = q
            e += 1
        exps.append(e)
    return TrialDivision(exps, rem)


# ---------------------------------------------------------------------------
# coprimality certificate


def certify_coprime(polys: Sequence[MultiPoly], tries: int = 2) -> bool:
    """True only if the polynomials provably share no nonconstant factor.

    Restrict to a random affine line over a random 62-bit prime. A common
    factor G reduces to a common factor mod p of the same total degree; on
    the line it shows up either as a common root or, at infinity, as a
    simultaneous degree drop of every restriction. So a constant univariate
    gcd together with one restriction keeping full degree is a proof.
    False means "not certified", never "not coprime".
    """
    polys = [q for q in polys if not q.is_zero]
    if not polys:
        return False
    if any(q.is_constant for q in polys):
        return True
    R = polys[0].ring
    for _ in range(tries):
        p = R.modulus if R.modulus is not None else _certificate_prime()
        if R.modulus is None:
            try:
                reduced = [normalize(q).reduce_mod(p) for q in polys]
            except ZeroDivisionError:
                continue
            if any(r.degree() != q.degree() for r, q in zip(reduced, polys)):
                # leading form collapsed mod p: pick another prime
                continue
        else:
            reduced = polys
        base = [_rng.randrange(p) for _ in range(R.nvars)]
        direction = [_rng.randrange(1, p) for _ in range(R.nvars)]
        restricted = [upoly.restrict(q, base, direction, p) for q in reduced]
        if not any(upoly.degree(r) == q.degree() for r, q in zip(restricted, reduced)):
            continue
        g = restricted[0]
        for r in restricted[1:]:
            g = upoly.gcd(g, r, p)
            if len(g) == 1:
                break
        if len(g) == 1:
            return True
    return False


# ---------------------------------------------------------------------------
# general gcd


def content_in(p: MultiPoly, var) -> MultiPoly:
    """gcd of the coefficients of p viewed as a polynomial in ``var``."""
    coeffs = sorted(p.as_univariate(var).values(), key=len)
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant:
            break
        g = _gcd(g, c)
    return normalize(g) if not g.is_constant else g.ring.one()


def _monomial_content(p: MultiPoly) -> list[int]:
    R = p.ring
    mins = None
    for k in p.terms:
        e = R.unpack(k)
        mins = list(e) if mins is None else [min(a, b) for a, b in zip(mins, e)]
    return mins or [0] * R.nvars


def _degree_bound(a: MultiPoly, b: MultiPoly, i: int) -> int | None:
    """Upper bound on deg_var(gcd(a, b)) from one random evaluation, or None."""
    R = a.ring
    for _ in range(3):
        p = R.modulus if R.modulus is not None else _certificate_prime()
        try:
            ar = a if R.modulus is not None else a.reduce_mod(p)
            br = b if R.modulus is not None else b.reduce_mod(p)
        except ZeroDivisionError:
            continue
        if ar.degree_in(i) != a.degree_in(i) or br.degree_in(i) != b.degree_in(i):
            continue
        point = [_rng.randrange(p) for _ in range(R.nvars)]
        subs = [[c] for c in point]
        subs[i] = [0, 1]
        ua = upoly.compose_into(ar, subs, p)
        ub = upoly.compose_into(br, subs, p)
        if upoly.degree(ua) != a.degree_in(i) or upoly.degree(ub) != b.degree_in(i):
            continue
        return upoly.degree(upoly.gcd(ua, ub, p))
    return None


def _prem(a: MultiPoly, b: MultiPoly, i: int) -> MultiPoly:
    """Lazy pseudo-remainder of a by b in variable i (up to factors of lc(b))."""
    R = a.ring
    db = b.degree_in(i)
    lb = b.coeff_in(i, db)
    r = a
    while not r.is_zero:
        dr = r.degree_in(i)
        if dr < db:
            break
        lr = r.coeff_in(i, dr)
        shift = R.var_key(i, dr - db) if dr > db else 0
        r = lb * r - (lr * b).mul_term(shift, 1)
    return r


def _primitive_part(p: MultiPoly, i: int) -> MultiPoly:
    c = content_in(p, i)
    if not c.is_constant:
        p = p.exact_div(c)
    return normalize(p)


def _gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    R = a.ring
    if a.is_zero:
        return normalize(b)
    if b.is_zero:
        return normalize(a)
    if a.is_constant or b.is_constant:
        return R.one()
    ma, mb = _monomial_content(a), _monomial_content(b)
    mono = [min(x, y) for x, y in zip(ma, mb)]
    if any(ma):
        a = a.exact_div(R.monomial(ma))
    if any(mb):
        b = b.exact_div(R.monomial(mb))
    mono_poly = R.monomial(mono)
    if a.is_constant or b.is_constant:
        return mono_poly
    ua, ub = a.variables_used(), b.variables_used()
    only = ua ^ ub
    if only:
        # a variable present in only one operand cannot occur in the gcd
        i = min(only)
        if i in ua:
            a = content_in(a, i)
        else:
            b = content_in(b, i)
        return normalize(_gcd(a, b) * mono_poly)
    if certify_coprime([a, b], tries=1):
        return mono_poly
    # main variable: smallest joint degree keeps the PRS short
    common = sorted(ua & ub, key=lambda j: max(a.degree_in(j), b.degree_in(j)))
    i = common[0]
    ca, cb = content_in(a, i), content_in(b, i)
    c = _gcd(ca, cb) if not (ca.is_constant or cb.is_constant) else R.one()
    bound = _degree_bound(a, b, i)
    if bound == 0:
        return normalize(c * mono_poly)
    pa = a if ca.is_constant else a.exact_div(ca)
    pb = b if cb.is_constant else b.exact_div(cb)
    if pa.degree_in(i) < pb.degree_in(i):
        pa, pb = pb, pa
    pa, pb = normalize(pa), normalize(pb)
    while True:
        r = _prem(pa, pb, i)
        if r.is_zero:
            g = pb
            break
        if r.degree_in(i) == 0:
            g = R.one()
            break
        pa, pb = pb, _primitive_part(r, i)
    return normalize(c * g * mono_poly)


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Normalized greatest common divisor; gcd(p, 0) = normalize(p)."""
    if p.ring != q.ring:
        raise MixedRingError(f"{p.ring!r} vs {q.ring!r}")
    return normalize(_gcd(p, q))


def gcd_many(polys: Sequence[MultiPoly], candidates: Sequence[MultiPoly] = ()) -> MultiPoly:
    """gcd of several polynomials, dividing known candidate factors out first."""
    polys = list(polys)
    if not polys:
        raise ValueError("gcd of an empty family")
    R = polys[0].ring
    for q in polys:
        if q.ring != R:
            raise MixedRingError("mixed rings in gcd_many")
    nonzero = [q for q in polys if not q.is_zero]
    if not nonzero:
        return R.zero()
    g = R.one()
    if candidates:
        work = list(nonzero)
        for c in candidates:
            if c.ring != R or c.is_constant:
                continue
            e = min(trial_divide(q, [c]).exponents[0] for q in work)
            if e:
                ce = c ** e
                work = [q.exact_div(ce) for q in work]
                g = g * ce
        nonzero = work
    if certify_coprime(nonzero):
        return normalize(g)
    h = nonzero[0]
    for q in sorted(nonzero[1:], key=len):
        if h.is_constant:
            break
        h = _gcd(h, q)
    return normalize(g * h)
