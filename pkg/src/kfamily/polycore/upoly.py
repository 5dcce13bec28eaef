"""Dense univariate polynomials as coefficient lists, lowest degree first.

Used for restrictions of plane polynomials to lines (degree sequences,
coprimality certificates) and for one-variable root work. Functions taking
``p`` work in F_p; ``p=None`` means exact rationals.
"""

from __future__ import annotations

from collections.abc import Sequence

from .poly import MultiPoly
from .scalars import reduce_mod

__all__ = [
    "trim", "degree", "add", "sub", "scale", "mul", "divmod_", "gcd", "monic",
    "evaluate", "restrict", "compose_into", "exact_div",
]

_KRONECKER_MIN = 48


def trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: Sequence) -> int:
    return len(a) - 1


def _norm(a, p):
    if p is None:
        return trim(list(a))
    return trim([c % p for c in a])


def add(a, b, p=None):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _norm(out, p)


def sub(a, b, p=None):
    return add(a, [-c for c in b], p)


def scale(a, c, p=None):
    return _norm([x * c for x in a], p)


def _mul_school(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _mul_kronecker(a, b, p):
    bits = 2 * p.bit_length() + min(len(a), len(b)).bit_length() + 1
    nbytes = (bits + 7) // 8
    pa = int.from_bytes(b"".join(c.to_bytes(nbytes, "little") for c in a), "little")
    pb = int.from_bytes(b"".join(c.to_bytes(nbytes, "little") for c in b), "little")
    n = len(a) + len(b) - 1
    buf = (pa * pb).to_bytes(n * nbytes, "little")
    fb = int.from_bytes
    return [fb(buf[i:i + nbytes], "little") % p for i in range(0, n * nbytes, nbytes)]


def mul(a, b, p=None):
    if not a or not b:
        return []
    if p is not None and min(len(a), len(b)) >= _KRONECKER_MIN:
        return trim(_mul_kronecker(a, b, p))
    return _norm(_mul_school(a, b), p)


def _inv(c, p):
    if p is None:
        return 1 / c
    return pow(c, -1, p)


def divmod_(a, b, p=None):
    """Quotient and remainder; b must be nonzero."""
    b = _norm(b, p)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = _norm(a, p)
    db = len(b) - 1
    if len(a) <= db:
        return [], a
    inv = _inv(b[-1], p)
    q = [0] * (len(a) - db)
    rem = list(a)
    head = b[:db]
    for i in range(len(a) - 1, db - 1, -1):
        c = rem[i]
        if p is not None:
            c = c * inv % p
        else:
            c = c * inv
        if c == 0:
            continue
        off = i - db
        q[off] = c
        seg = rem[off:i]
        if p is not None:
            rem[off:i] = [(x - c * y) % p for x, y in zip(seg, head)]
        else:
            rem[off:i] = [x - c * y for x, y in zip(seg, head)]
    return trim(q), _norm(rem[:db], p)


def monic(a, p=None):
    a = _norm(a, p)
    if not a:
        return a
    return scale(a, _inv(a[-1], p), p)


def gcd(a, b, p=None):
    """Monic gcd (the empty list when both inputs are zero)."""
    a, b = _norm(a, p), _norm(b, p)
    while b:
        a, b = b, divmod_(a, b, p)[1]
    return monic(a, p)


def exact_div(a, b, p=None):
    q, r = divmod_(a, b, p)
    if r:
        raise ArithmeticError("univariate division is not exact")
    return q


def evaluate(a, x, p=None):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
        if p is not None:
            acc %= p
    return acc


def compose_into(poly: MultiPoly, subs: Sequence[list], p: int | None) -> list:
    """Substitute univariate polynomials for the variables of ``poly``."""
    R = poly.ring
    if len(subs) != R.nvars:
        raise ValueError("one substitution per variable required")
    pows = [[[1], list(s)] for s in subs]

    def power(i, e):
        lst = pows[i]
        while len(lst) <= e:
            lst.append(mul(lst[-1], subs[i], p))
        return lst[e]

    prefix = {(): [1]}

    def prefix_prod(exps):
        got = prefix.get(exps)
        if got is None:
            got = mul(prefix_prod(exps[:-1]), power(len(exps) - 1, exps[-1]), p)
            prefix[exps] = got
        return got

    acc: list = []
    for k, c in poly.terms.items():
        exps = R.unpack(k)
        term = mul(prefix_prod(exps[:-1]), power(R.nvars - 1, exps[-1]), p)
        if p is not None and R.modulus != p:
            c = reduce_mod(c, p)
        if len(acc) < len(term):
            acc.extend([0] * (len(term) - len(acc)))
        for i, t in enumerate(term):
            acc[i] += c * t
    return _norm(acc, p)


def restrict(poly: MultiPoly, base: Sequence, direction: Sequence, p: int | None) -> list:
    """``poly(base + s*direction)`` as a polynomial in s."""
    subs = [_norm([b, d], p) for b, d in zip(base, direction)]
    return compose_into(poly, subs, p)
