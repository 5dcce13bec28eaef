"""Divisor classes on a blowup of the plane and integer matrices acting on them."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

__all__ = ["PicBasis", "DivisorClass", "PicMatrix", "IntersectionForm"]


@dataclass(frozen=True)
class PicBasis:
    """Ordered labels: the hyperplane class H followed by exceptional fibers."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if not self.labels or self.labels[0] != "H":
            raise ValueError("a Picard basis starts with H")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be unique")

    @classmethod
    def of(cls, fibers: Sequence[str]) -> PicBasis:
        return cls(("H",) + tuple(fibers))

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def unit(self, label: str) -> DivisorClass:
        v = [0] * len(self)
        v[self.index(label)] = 1
        return DivisorClass(self, tuple(v))

    def zero(self) -> DivisorClass:
        return DivisorClass(self, (0,) * len(self))


@dataclass(frozen=True)
class DivisorClass:
    basis: PicBasis
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(self.basis):
            raise ValueError("coefficient vector does not match the basis")

    @classmethod
    def of(cls, basis: PicBasis, terms: dict[str, int]) -> DivisorClass:
        v = [0] * len(basis)
        for label, c in terms.items():
            v[basis.index(label)] += c
        return cls(basis, tuple(v))

    def __getitem__(self, label: str) -> int:
        return self.coeffs[self.basis.index(label)]

    def _same(self, other: DivisorClass):
        if other.basis != self.basis:
            raise ValueError("divisor classes over different bases")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._same(other)
        return DivisorClass(self.basis, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._same(other)
        return DivisorClass(self.basis, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, c: int) -> DivisorClass:
        return DivisorClass(self.basis, tuple(c * a for a in self.coeffs))

    def __str__(self):
        parts = []
        for label, c in zip(self.basis.labels, self.coeffs):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {mag}{label}")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_json(self) -> dict:
        return dict(zip(self.basis.labels, self.coeffs))


@dataclass(frozen=True)
class PicMatrix:
    """Column j is the pullback of basis element j."""

    basis: PicBasis
    rows: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self):
        n = len(self.basis)
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValueError("matrix size does not match the basis")
        for r in self.rows:
            for v in r:
                if not isinstance(v, int):
                    raise TypeError("Picard matrices have integer entries")

    @classmethod
    def from_columns(cls, basis: PicBasis, columns: dict[str, DivisorClass],
                     label: str = "") -> PicMatrix:
        n = len(basis)
        cols = [columns[b].coeffs for b in basis.labels]
        rows = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
        return cls(basis, rows, label)

    @classmethod
    def identity(cls, basis: PicBasis) -> PicMatrix:
        n = len(basis)
        return cls(basis, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.basis)

    def column(self, label: str) -> DivisorClass:
        j = self.basis.index(label)
        return DivisorClass(self.basis, tuple(r[j] for r in self.rows))

    def apply(self, d: DivisorClass) -> DivisorClass:
        return DivisorClass(self.basis, tuple(sum(a * b for a, b in zip(r, d.coeffs))
                                              for r in self.rows))

    def __matmul__(self, other: PicMatrix) -> PicMatrix:
        n = self.size
        cols = list(zip(*other.rows))
        rows = tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        return PicMatrix(self.basis, rows, self.label)

    def restrict(self, labels: Sequence[str]) -> PicMatrix:
        """The square block on a subset of the basis (H must be kept)."""
        idx = [self.basis.index(x) for x in labels]
        sub = PicBasis(tuple(labels))
        return PicMatrix(sub, tuple(tuple(self.rows[i][j] for j in idx) for i in idx), self.label)

    def to_json(self) -> dict:
        return {"basis": list(self.basis.labels), "rows": [list(r) for r in self.rows]}


@dataclass(frozen=True)
class IntersectionForm:
    """Symmetric integer Gram matrix of the intersection pairing in a basis."""

    basis: PicBasis
    gram: tuple[tuple[int, ...], ...]

    @classmethod
    def diagonal(cls, basis: PicBasis) -> IntersectionForm:
        """H.H = 1, every exceptional class squares to -1, mixed products 0."""
        n = len(basis)
        return cls(basis, tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n))
                                for i in range(n)))

    @classmethod
    def from_total_multiplicities(cls, basis: PicBasis,
                                  mult: dict[tuple[str, str], int]) -> IntersectionForm:
        """Form in a basis of strict transforms of the fibers.

        ``mult[(F, G)]`` is the multiplicity of the strict fiber G in the total
        transform of F (G created after F). Total transforms are orthogonal
        with square -1, so strict classes are S = A^{-1} T with A unitriangular.
        """
        labels = basis.labels[1:]
        m = len(labels)
        # strict_F = T_F - sum_G mult(F, G) strict_G, solved from the last fiber back
        strict: dict[str, list[int]] = {}
        order = _creation_order(labels, mult)
        for f in reversed(order):
            v = [0] * m
            v[labels.index(f)] = 1
            for g in labels:
                c = mult.get((f, g), 0)
                if c:
                    for i, x in enumerate(strict[g]):
                        v[i] -= c * x
            strict[f] = v
        gram = [[0] * (m + 1) for _ in range(m + 1)]
        gram[0][0] = 1
        for i, f in enumerate(labels):
            for j, g in enumerate(labels):
                gram[i + 1][j + 1] = -sum(a * b for a, b in zip(strict[f], strict[g]))
        return cls(basis, tuple(tuple(r) for r in gram))

    def pair(self, a: DivisorClass, b: DivisorClass) -> int:
        return sum(a.coeffs[i] * self.gram[i][j] * b.coeffs[j]
                   for i in range(len(self.basis)) for j in range(len(self.basis)))

    def signature(self) -> tuple[int, int]:
        """(positive, negative) inertia counts, by exact symmetric elimination."""
        from fractions import Fraction

        g = [[Fraction(x) for x in r] for r in self.gram]
        n = len(g)
        pos = neg = 0
        for k in range(n):
            piv = next((i for i in range(k, n) if g[i][i] != 0), None)
            if piv is None:
                # pair with an off-diagonal entry to create a nonzero pivot
                pair = next(((i, j) for i in range(k, n) for j in range(k, n)
                             if i != j and g[i][j] != 0), None)
                if pair is None:
                    break
                i, j = pair
                for c in range(n):
                    g[i][c] += g[j][c]
                for r in range(n):
                    g[r][i] += g[r][j]
                piv = i
            g[k], g[piv] = g[piv], g[k]
            for r in g:
                r[k], r[piv] = r[piv], r[k]
            d = g[k][k]
            pos += d > 0
            neg += d < 0
            for i in range(k + 1, n):
                f = g[i][k] / d
                if f:
                    for c in range(k, n):
                        g[i][c] -= f * g[k][c]
            for i in range(k + 1, n):
                g[k][i] = 0
                g[i][k] = 0
        return pos, neg

    def to_json(self) -> dict:
        return {"basis": list(self.basis.labels), "gram": [list(r) for r in self.gram]}


def _creation_order(labels, mult) -> list[str]:
    """Topological order: F before every G lying over it."""
    after = {f: {g for (a, g), c in mult.items() if a == f and c} for f in labels}
    order, seen = [], set()

    def visit(f):
        if f in seen:
            return
        seen.add(f)
        for g in labels:
            if f in after[g]:
                visit(g)
        order.append(f)

    for f in labels:
        visit(f)
    return order
