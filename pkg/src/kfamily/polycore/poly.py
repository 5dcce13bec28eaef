"""Sparse multivariate polynomials with exact coefficients.

Monomials are packed into a single Python int: the total degree sits in the
top field, followed by the exponent of each variable in declaration order.
Integer order on packed keys is therefore graded lex with x0 > x1 > x2 > ...,
and multiplying monomials is integer addition.
"""

from __future__ import annotations

import heapq
from collections.abc import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .scalars import reduce_mod, to_rational

__all__ = ["Ring", "MultiPoly", "MixedRingError"]

_W = 32  # bits per exponent field; the top bit is a borrow guard


class MixedRingError(ValueError):
    """Operands live in different rings (variables or coefficient mode differ)."""


class Ring:
    """Ordered variable list plus coefficient mode (rational or F_p)."""

    def __init__(self, variables: Iterable[str], modulus: int | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        for v in variables:
            if not v.isidentifier():
                raise ValueError(f"bad variable name {v!r}")
        if modulus is not None and modulus < 2:
            raise ValueError("modulus must be a prime >= 2")
        self.variables = variables
        self.modulus = modulus
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}
        self._shifts = tuple(_W * (self.nvars - 1 - i) for i in range(self.nvars))
        self._deg_shift = _W * self.nvars
        self._guard = sum(1 << (s + _W - 1) for s in self._shifts)
        self._mask = (1 << _W) - 1

    # identity -----------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, Ring) and self.variables == other.variables
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.variables, self.modulus))

    def __repr__(self):
        mode = "QQ" if self.modulus is None else f"GF({self.modulus})"
        return f"Ring({', '.join(self.variables)}; {mode})"

    @property
    def is_prime_field(self) -> bool:
        return self.modulus is not None

    def index(self, var: str | int) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.nvars:
                raise IndexError(var)
            return var
        try:
            return self._index[var]
        except KeyError:
            raise KeyError(f"unknown variable {var!r} in {self!r}") from None

    def with_modulus(self, modulus: int | None) -> Ring:
        return Ring(self.variables, modulus)

    def extend(self, extra: Iterable[str]) -> Ring:
        return Ring(self.variables + tuple(extra), self.modulus)

    # scalars ------------------------------------------------------------
    def coerce(self, c):
        if self.modulus is None:
            return to_rational(c)
        return reduce_mod(c, self.modulus)

    def inv(self, c):
        if self.modulus is None:
            if c == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / to_rational(c)
        return pow(int(c), -1, self.modulus)

    # packed monomials ---------------------------------------------------
    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"exponent vector {tuple(exps)} has wrong length for {self!r}")
        key = 0
        deg = 0
        for e, s in zip(exps, self._shifts):
            if e < 0:
                raise ValueError("negative exponent")
            key |= e << s
            deg += e
        return key | (deg << self._deg_shift)

    def unpack(self, key: int) -> tuple[int, ...]:
        m = self._mask
        return tuple((key >> s) & m for s in self._shifts)

    def key_exp(self, key: int, i: int) -> int:
        return (key >> self._shifts[i]) & self._mask

    def key_degree(self, key: int) -> int:
        return key >> self._deg_shift

    def var_key(self, i: int, e: int = 1) -> int:
        return (e << self._shifts[i]) | (e << self._deg_shift)

    def key_divides(self, a: int, b: int) -> bool:
        """Whether monomial a divides monomial b."""
        g = self._guard
        return ((b + g - a) & g) == g

    # constructors -------------------------------------------------------
    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    def one(self) -> MultiPoly:
        return self.const(1)

    def const(self, c) -> MultiPoly:
        c = self.coerce(c)
        return MultiPoly(self, {0: c} if c != 0 else {})

    def gen(self, var: str | int) -> MultiPoly:
        return MultiPoly(self, {self.var_key(self.index(var)): self.coerce(1)})

    def gens(self) -> tuple[MultiPoly, ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps: Sequence[int], coeff=1) -> MultiPoly:
        c = self.coerce(coeff)
        return MultiPoly(self, {self.pack(exps): c} if c != 0 else {})

    def from_dict(self, terms: Mapping[Sequence[int], object]) -> MultiPoly:
        out: dict[int, object] = {}
        for exps, c in terms.items():
            k = self.pack(tuple(exps))
            v = out.get(k, 0) + self.coerce(c)
            if self.modulus is not None:
                v %= self.modulus
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return MultiPoly(self, out)

    def parse(self, text: str) -> MultiPoly:
        from .parse import poly_parse

        return poly_parse(text, self)

    def __call__(self, x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            if x.ring != self:
                raise MixedRingError(f"{x.ring!r} vs {self!r}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)


class MultiPoly:
    """Immutable sparse polynomial: packed monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict[int, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic queries ------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        if not self.is_constant:
            raise ValueError("not a constant polynomial")
        return self.terms.get(0, self.ring.coerce(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return self.ring.key_degree(max(self.terms))

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return self.ring.key_degree(min(self.terms))

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        kd = self.ring.key_degree
        it = iter(self.terms)
        d = kd(next(it))
        return all(kd(k) == d for k in it)

    def degree_in_vars(self, indices: Sequence[int]) -> int:
        """Largest total degree in the given variables; -1 for zero."""
        if not self.terms:
            return -1
        if len(indices) == self.ring.nvars:
            return self.degree()
        ke = self.ring.key_exp
        return max(sum(ke(k, i) for i in indices) for k in self.terms)

    def is_homogeneous_in(self, indices: Sequence[int]) -> bool:
        if len(indices) == self.ring.nvars:
            return self.is_homogeneous()
        ke = self.ring.key_exp
        degs = {sum(ke(k, i) for i in indices) for k in self.terms}
        return len(degs) <= 1

    @property
    def leading_key(self) -> int:
        return max(self.terms)

    def leading_coeff(self):
        if not self.terms:
            return self.ring.coerce(0)
        return self.terms[max(self.terms)]

    def items(self):
        """(exponent tuple, coefficient) pairs in canonical order: ascending grlex."""
        unpack = self.ring.unpack
        for k in sorted(self.terms):
            yield unpack(k), self.terms[k]

    def to_dict(self) -> dict[tuple[int, ...], object]:
        return dict(self.items())

    def variables_used(self) -> set[int]:
        used = set()
        for k in self.terms:
            for i, e in enumerate(self.ring.unpack(k)):
                if e:
                    used.add(i)
        return used

    def degree_in(self, var) -> int:
        i = self.ring.index(var)
        if not self.terms:
            return -1
        ke = self.ring.key_exp
        return max(ke(k, i) for k in self.terms)

    def lowest_order(self, var) -> int:
        """Smallest exponent of ``var`` over all terms."""
        if not self.terms:
            raise ValueError("lowest order of the zero polynomial is undefined")
        i = self.ring.index(var)
        ke = self.ring.key_exp
        return min(ke(k, i) for k in self.terms)

    def coeff_in(self, var, e: int) -> MultiPoly:
        """Coefficient of var^e, as a polynomial free of var."""
        i = self.ring.index(var)
        ke = self.ring.key_exp
        vk = self.ring.var_key(i, e)
        return MultiPoly(self.ring, {k - vk: c for k, c in self.terms.items() if ke(k, i) == e})

    def as_univariate(self, var) -> dict[int, MultiPoly]:
        """Split into {exponent of var: coefficient polynomial free of var}."""
        R = self.ring
        i = R.index(var)
        ke = R.key_exp
        buckets: dict[int, dict[int, object]] = {}
        for k, c in self.terms.items():
            e = ke(k, i)
            buckets.setdefault(e, {})[k - R.var_key(i, e) if e else k] = c
        return {e: MultiPoly(R, t) for e, t in buckets.items()}

    # arithmetic ---------------------------------------------------------
    def _check(self, other: MultiPoly):
        if self.ring != other.ring:
            raise MixedRingError(f"{self.ring!r} vs {other.ring!r}")

    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._lift(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        p = self.ring.modulus
        for k, c in b.items():
            v = out.get(k)
            if v is None:
                out[k] = c
                continue
            v = v + c
            if p is not None:
                v %= p
            if v == 0:
                del out[k]
            else:
                out[k] = v
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.modulus
        if p is None:
            return MultiPoly(self.ring, {k: -c for k, c in self.terms.items()})
        return MultiPoly(self.ring, {k: (-c) % p for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def scale(self, c) -> MultiPoly:
        c = self.ring.coerce(c)
        if c == 0:
            return self.ring.zero()
        p = self.ring.modulus
        if p is None:
            return MultiPoly(self.ring, {k: v * c for k, v in self.terms.items()})
        return MultiPoly(self.ring, {k: v * c % p for k, v in self.terms.items()})

    def mul_term(self, key: int, c) -> MultiPoly:
        """Multiply by the single term c * monomial(key)."""
        p = self.ring.modulus
        if c == 0:
            return self.ring.zero()
        if p is None:
            return MultiPoly(self.ring, {k + key: v * c for k, v in self.terms.items()})
        return MultiPoly(self.ring, {k + key: v * c % p for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero()
        if len(a) > len(b):
            a, b = b, a
        if len(a) == 1:
            (k, c), = a.items()
            return other.mul_term(k, c) if a is self.terms else self.mul_term(k, c)
        out: dict[int, object] = {}
        get = out.get
        bi = list(b.items())
        for k1, c1 in a.items():
            for k2, c2 in bi:
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
        p = self.ring.modulus
        if p is None:
            return MultiPoly(self.ring, {k: v for k, v in out.items() if v != 0})
        res = {}
        for k, v in out.items():
            v %= p
            if v:
                res[k] = v
        return MultiPoly(self.ring, res)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative int")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, mpq)) or type(other).__name__ in ("Fraction", "mpz"):
            try:
                return self == self.ring.const(other)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # division -----------------------------------------------------------
    def try_divide(self, d: MultiPoly) -> MultiPoly | None:
        """Exact quotient self / d, or None when d does not divide self."""
        self._check(d)
        if d.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return self.ring.zero()
        R = self.ring
        p = R.modulus
        lk = max(d.terms)
        inv_lc = R.inv(d.terms[lk])
        if len(d.terms) == 1:
            if not all(R.key_divides(lk, k) for k in self.terms):
                return None
            if p is None:
                return MultiPoly(R, {k - lk: c * inv_lc for k, c in self.terms.items()})
            return MultiPoly(R, {k - lk: c * inv_lc % p for k, c in self.terms.items()})
        if self.degree() < d.degree():
            return None
        rest = [(k, c) for k, c in d.terms.items() if k != lk]
        rem = dict(self.terms)
        heap = [-k for k in rem]
        heapq.heapify(heap)
        quo: dict[int, object] = {}
        divides = R.key_divides
        while heap:
            k = -heapq.heappop(heap)
            c = rem.pop(k, None)
            if c is None:
                continue
            if not divides(lk, k):
                return None
            qk = k - lk
            qc = c * inv_lc
            if p is not None:
                qc %= p
            quo[qk] = qc
            for dk, dc in rest:
                nk = qk + dk
                old = rem.get(nk)
                v = (old if old is not None else 0) - qc * dc
                if p is not None:
                    v %= p
                if v == 0:
                    if old is not None:
                        del rem[nk]
                else:
                    rem[nk] = v
                    if old is None:
                        heapq.heappush(heap, -nk)
        return MultiPoly(R, quo)

    def exact_div(self, d: MultiPoly) -> MultiPoly:
        q = self.try_divide(d)
        if q is None:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other: MultiPoly) -> bool:
        return other.try_divide(self) is not None

    # substitution -------------------------------------------------------
    def evaluate(self, point: Sequence) -> object:
        """Exact value at a point (scalars coerced into this ring's domain)."""
        R = self.ring
        if len(point) != R.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {R.nvars} variables")
        vals = [R.coerce(v) for v in point]
        p = R.modulus
        pows: list[dict[int, object]] = [dict() for _ in vals]
        total = 0
        for k, c in self.terms.items():
            term = c
            for i, e in enumerate(R.unpack(k)):
                if e:
                    cache = pows[i]
                    v = cache.get(e)
                    if v is None:
                        v = pow(vals[i], e, p) if p is not None else vals[i] ** e
                        cache[e] = v
                    term = term * v
            total = total + term
            if p is not None:
                total %= p
        return R.coerce(total)

    def __call__(self, *args):
        if len(args) == 1 and isinstance(args[0], (list, tuple)):
            args = tuple(args[0])
        if args and all(isinstance(a, MultiPoly) for a in args):
            return self.compose(args)
        return self.evaluate(args)

    def compose(self, gens: Sequence[MultiPoly]) -> MultiPoly:
        """Substitute gens[i] for variable i; the result lives in the gens' ring."""
        R = self.ring
        if len(gens) != R.nvars:
            raise ValueError(f"need {R.nvars} substitutions, got {len(gens)}")
        target = gens[0].ring
        for g in gens:
            if g.ring != target:
                raise MixedRingError("substituted polynomials must share a ring")
        if not self.terms:
            return target.zero()
        pows = [[target.one(), g] for g in gens]

        def power(i, e):
            lst = pows[i]
            while len(lst) <= e:
                lst.append(lst[-1] * gens[i])
            return lst[e]

        prefix: dict[tuple[int, ...], MultiPoly] = {(): target.one()}

        def prefix_prod(exps):
            got = prefix.get(exps)
            if got is None:
                got = prefix_prod(exps[:-1]) * power(len(exps) - 1, exps[-1])
                prefix[exps] = got
            return got

        acc: dict[int, object] = {}
        get = acc.get
        p = target.modulus
        for k, c in self.terms.items():
            exps = R.unpack(k)
            c = target.coerce(c) if R.modulus != p else c
            prod = prefix_prod(exps[:-1]) * power(R.nvars - 1, exps[-1]) if R.nvars else target.one()
            for kk, cc in prod.terms.items():
                acc[kk] = get(kk, 0) + c * cc
        if p is None:
            return MultiPoly(target, {k: v for k, v in acc.items() if v != 0})
        out = {}
        for k, v in acc.items():
            v %= p
            if v:
                out[k] = v
        return MultiPoly(target, out)

    def subs(self, mapping: Mapping[str | int, object]) -> MultiPoly:
        """Substitute polynomials or scalars for some variables (same ring)."""
        R = self.ring
        gens = list(R.gens())
        for var, val in mapping.items():
            gens[R.index(var)] = R(val) if not isinstance(val, MultiPoly) else val
        return self.compose(gens)

    def diff(self, var) -> MultiPoly:
        R = self.ring
        i = R.index(var)
        p = R.modulus
        vk = R.var_key(i)
        out = {}
        for k, c in self.terms.items():
            e = R.key_exp(k, i)
            if e:
                v = c * e
                if p is not None:
                    v %= p
                if v:
                    out[k - vk] = v
        return MultiPoly(R, out)

    def to_ring(self, target: Ring, var_map: Mapping[str, str] | None = None) -> MultiPoly:
        """Re-embed into another ring: rename/extend variables, reduce mod p."""
        src = self.ring
        var_map = var_map or {}
        idx = [target.index(var_map.get(v, v)) for v in src.variables]
        out: dict[int, object] = {}
        pm = target.modulus
        for k, c in self.terms.items():
            exps = [0] * target.nvars
            for i, e in zip(idx, src.unpack(k)):
                exps[i] += e
            nk = target.pack(exps)
            v = out.get(nk, 0) + target.coerce(c)
            if pm is not None:
                v %= pm
            if v == 0:
                out.pop(nk, None)
            else:
                out[nk] = v
        return MultiPoly(target, out)

    def reduce_mod(self, p: int) -> MultiPoly:
        return self.to_ring(self.ring.with_modulus(p))

    def homogenize(self, var, degree: int | None = None) -> MultiPoly:
        """Homogenize with respect to ``var`` (which must be absent from self)."""
        R = self.ring
        i = R.index(var)
        d = self.degree() if degree is None else degree
        out = {}
        for k, c in self.terms.items():
            if R.key_exp(k, i):
                raise ValueError(f"{var} already occurs")
            out[k + R.var_key(i, d - R.key_degree(k))] = c
        return MultiPoly(R, out)

    # printing -----------------------------------------------------------
    def __str__(self):
        from .parse import poly_print

        return poly_print(self)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, {self.ring!r})"
