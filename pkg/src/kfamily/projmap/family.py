"""Coefficients of the polynomial F and the polynomial rings built on them.

Coefficients are stored as polynomials over a (possibly empty) list of
parameter symbols, so the same code handles concrete rational parameters
and parameters carried symbolically as extra ring variables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from gmpy2 import mpq

from ..polycore import MultiPoly, Ring, to_rational

PLANE_VARS = ("x0", "x1", "x2")
RESERVED = set(PLANE_VARS) | {"u", "eta", "s", "t", "w"}
DEFAULT_HORIZON = 64


@dataclass(frozen=True)
class GenericityFlags:
    leading_zero: bool
    a0_resonance: int | None  # the m with a0 = 2/m, if any within the horizon
    odd_resonance: bool  # n odd and 2 a_{n-1} = (n-1) a_n
    horizon: int
    # n = 1 only: a0 = (3m - 1)/(2m), the P1 <-> E2 orbit reaching E2 meet {x1 = 0}
    e2_resonance: int | None = None

    @property
    def generic(self) -> bool:
        return not (self.leading_zero or self.a0_resonance is not None or self.odd_resonance
                    or self.e2_resonance is not None)

    def to_json(self) -> dict:
        return {
            "leading_zero": self.leading_zero,
            "a0_resonance": self.a0_resonance,
            "odd_resonance": self.odd_resonance,
            "e2_resonance": self.e2_resonance,
            "horizon": self.horizon,
            "generic": self.generic,
        }


@dataclass(frozen=True)
class FamilyParams:
    """F(z) = sum a_j z^j with a_j in the coefficient ring ``Ring(symbols)``.

    Affine points (t, y) near the indeterminacy point e1 are written [t:1:y];
    the involutions themselves act on affine (x, y) = [1:x:y].
    """

    coeffs: tuple[MultiPoly, ...]
    symbols: tuple[str, ...] = ()
    coeff_ring: Ring = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        R = Ring(self.symbols)
        bad = RESERVED.intersection(self.symbols)
        if bad:
            raise ValueError(f"parameter names clash with coordinates: {sorted(bad)}")
        object.__setattr__(self, "coeff_ring", R)
        cs = tuple(R(c) if not isinstance(c, MultiPoly) else c for c in self.coeffs)
        for c in cs:
            if c.ring != R:
                raise ValueError("coefficients must live in the parameter ring")
        if not cs:
            raise ValueError("F needs at least one coefficient")
        if len(cs) > 1 and cs[-1].is_zero:
            raise ValueError("leading coefficient a_n must be nonzero")
        object.__setattr__(self, "coeffs", cs)

    # constructors -------------------------------------------------------
    @classmethod
    def of(cls, values) -> FamilyParams:
        """Concrete rational coefficients a_0, ..., a_n."""
        R = Ring(())
        return cls(tuple(R.const(to_rational(v)) for v in values))

    @classmethod
    def symbolic(cls, n: int, prefix: str = "a") -> FamilyParams:
        names = tuple(f"{prefix}{j}" for j in range(n + 1))
        R = Ring(names)
        return cls(R.gens(), names)

    @classmethod
    def cubic(cls, a, b) -> FamilyParams:
        """F = a y^3 + a y^2 + b y + 2. String names make a, b symbolic."""
        names = tuple(v for v in (a, b) if isinstance(v, str))
        R = Ring(names)
        av = R.gen(a) if isinstance(a, str) else R.const(a)
        bv = R.gen(b) if isinstance(b, str) else R.const(b)
        if av.is_zero:
            raise ValueError("the cubic family needs a != 0")
        return cls((R.const(2), bv, av, av), names)

    @classmethod
    def random(cls, n: int, rng: random.Random, horizon: int = DEFAULT_HORIZON,
               max_tries: int = 1000) -> FamilyParams:
        """Small-height random rationals, resampled until the flags say generic."""
        pool = [v for v in range(-10, 11) if v]
        for _ in range(max_tries):
            p = cls.of([mpq(rng.choice(pool), rng.choice(pool)) for _ in range(n + 1)])
            if p.genericity(horizon).generic:
                return p
        raise RuntimeError("could not sample generic parameters")

    @classmethod
    def random_cubic(cls, rng: random.Random) -> FamilyParams:
        pool = [v for v in range(-10, 11) if v]
        return cls.cubic(mpq(rng.choice(pool), rng.choice(pool)),
                         mpq(rng.choice(pool + [0]), rng.choice(pool)))

    # queries ------------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_symbolic(self) -> bool:
        return bool(self.symbols)

    def value(self, j: int) -> mpq:
        c = self.coeffs[j]
        if not c.is_constant:
            raise ValueError(f"a_{j} is symbolic")
        return c.constant_value()

    @property
    def values(self) -> tuple[mpq, ...]:
        return tuple(self.value(j) for j in range(self.n + 1))

    def cubic_ab(self):
        """(a, b) when F has the automorphism-family shape, else None."""
        if self.n != 3:
            return None
        a0, b, a2, a3 = self.coeffs
        if a0 != 2 or a2 != a3:
            return None
        return a3, b

    def plane_ring(self, modulus: int | None = None) -> Ring:
        return Ring(PLANE_VARS + self.symbols, modulus)

    def ring_with(self, names, modulus: int | None = None) -> Ring:
        return Ring(tuple(names) + self.symbols, modulus)

    def coeff_polys(self, ring: Ring) -> list[MultiPoly]:
        return [c.to_ring(ring) for c in self.coeffs]

    def param_gens(self, ring: Ring) -> list[MultiPoly]:
        return [ring.gen(s) for s in self.symbols]

    def genericity(self, horizon: int = DEFAULT_HORIZON) -> GenericityFlags:
        if self.is_symbolic:
            raise ValueError("genericity flags need concrete parameters")
        a = self.values
        n = self.n
        lead = n >= 1 and a[-1] == 0
        res = None
        if a[0] > 0:
            for m in range(1, horizon + 1):
                if a[0] * m == 2:
                    res = m
                    break
        odd = n % 2 == 1 and 2 * a[n - 1] == (n - 1) * a[n]
        e2 = None
        if n == 1:
            for m in range(1, horizon + 1):
                if 2 * m * a[0] == 3 * m - 1:
                    e2 = m
                    break
        return GenericityFlags(lead, res, odd, horizon, e2)

    def to_json(self) -> dict:
        from ..polycore import poly_print

        return {"n": self.n, "coeffs": [poly_print(c) for c in self.coeffs],
                "symbols": list(self.symbols)}

    def __str__(self):
        from ..polycore import poly_print

        return "(" + ", ".join(poly_print(c) for c in self.coeffs) + ")"
