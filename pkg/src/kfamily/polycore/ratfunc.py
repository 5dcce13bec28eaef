"""Unreduced quotients of polynomials, for writing affine formulas literally."""

from __future__ import annotations

from dataclasses import dataclass

from .poly import MultiPoly


@dataclass(frozen=True)
class RatFunc:
    num: MultiPoly
    den: MultiPoly

    def __post_init__(self):
        if self.den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")

    @classmethod
    def of(cls, p: MultiPoly) -> RatFunc:
        return cls(p, p.ring.one())

    def _lift(self, other) -> RatFunc:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc.of(other)
        return RatFunc.of(self.num.ring.const(other))

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.num.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return RatFunc(self.den ** -e, self.num ** -e)
        return RatFunc(self.num ** e, self.den ** e)
