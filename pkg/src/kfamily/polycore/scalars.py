"""Coefficient domains: exact rationals (gmpy2.mpq) and prime fields F_p."""

from __future__ import annotations

import random
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

__all__ = ["to_rational", "reduce_mod", "random_prime", "is_zero_divisor_free", "fmt_scalar"]


def to_rational(x) -> mpq:
    """Coerce ints, Fractions, mpq and strings like ``"-3/4"`` to an mpq."""
    if isinstance(x, str):
        x = x.strip()
        if not x:
            raise ValueError("empty rational literal")
        return mpq(x)
    if isinstance(x, float):
        raise TypeError("floating point values are not exact scalars")
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def reduce_mod(x, p: int) -> int:
    """Image of a rational scalar in F_p.

    Raises ZeroDivisionError when p divides the denominator.
    """
    if isinstance(x, int) or type(x).__name__ == "mpz":
        return int(x) % p
    q = to_rational(x)
    num, den = int(q.numerator), int(q.denominator)
    if den % p == 0:
        raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
    return num * pow(den, -1, p) % p


def is_zero_divisor_free(values, p: int) -> bool:
    """True when no rational in ``values`` has a denominator divisible by p."""
    return all(int(to_rational(v).denominator) % p for v in values)


def random_prime(rng: random.Random | None = None, bits: int = 62) -> int:
    """A random prime in [2^(bits-1), 2^bits)."""
    rng = rng or random.Random()
    lo = 1 << (bits - 1)
    while True:
        p = int(gmpy2.next_prime(lo + rng.randrange(lo)))
        if p < (1 << bits):
            return p


def fmt_scalar(c) -> str:
    q = to_rational(c)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
