"""Points of the projective plane with exact coordinates."""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from ..polycore import fmt_scalar, to_rational


class Indeterminate(ArithmeticError):
    """All components of a map vanish at the point (a base point)."""


@dataclass(frozen=True)
class ProjPoint:
    """Canonical representative: the first nonzero coordinate is 1.

    Equality of canonical representatives is projective equality.
    """

    coords: tuple[mpq, mpq, mpq]

    def __post_init__(self):
        c = tuple(to_rational(v) for v in self.coords)
        if len(c) != 3:
            raise ValueError("a plane point has three coordinates")
        lead = next((v for v in c if v != 0), None)
        if lead is None:
            raise ValueError("[0:0:0] is not a point")
        object.__setattr__(self, "coords", tuple(v / lead for v in c))

    @classmethod
    def of(cls, x0, x1, x2) -> ProjPoint:
        return cls((x0, x1, x2))

    @classmethod
    def affine(cls, x, y) -> ProjPoint:
        """The point [1:x:y]."""
        return cls((1, x, y))

    def affine_coords(self) -> tuple[mpq, mpq]:
        x0, x1, x2 = self.coords
        if x0 == 0:
            raise ValueError("point at infinity has no affine coordinates")
        return x1, x2

    def same_as(self, other: ProjPoint) -> bool:
        a, b = self.coords, other.coords
        return all(a[i] * b[j] == a[j] * b[i] for i in range(3) for j in range(i + 1, 3))

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        return "[" + " : ".join(fmt_scalar(v) for v in self.coords) + "]"

    def to_json(self) -> list[str]:
        return [fmt_scalar(v) for v in self.coords]


E1 = ProjPoint.of(0, 1, 0)
E2 = ProjPoint.of(0, 0, 1)
E01 = ProjPoint.of(1, 1, 0)
