"""Exact arithmetic in Q(sqrt(d)) with sign determination."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


@dataclass(frozen=True)
class QuadSurd:
    """``a + b*sqrt(d)`` with rational ``a, b`` and a positive integer ``d``."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d <= 0:
            raise ValueError("radicand must be positive")

    @classmethod
    def sqrt_of(cls, q) -> QuadSurd:
        """``sqrt(q)`` for a nonnegative rational ``q``, as ``b*sqrt(d)``."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        # sqrt(u/v) = sqrt(u*v) / v
        m = q.numerator * q.denominator
        r = isqrt(m)
        if r * r == m:
            return cls(Fraction(r, q.denominator), 0, 1)
        return cls(0, Fraction(1, q.denominator), m)

    def _lift(self, other):
        if isinstance(other, QuadSurd):
            if other.d != self.d and other.b and self.b:
                raise ValueError("mixed radicands")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadSurd(other, 0, self.d)
        return NotImplemented

    def _d(self, other):
        return self.d if self.b else other.d

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadSurd(self.a + o.a, self.b + o.b, self._d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d = self._d(o)
        return QuadSurd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d = self._d(o)
        norm = o.a * o.a - o.b * o.b * d
        if norm == 0:
            raise ZeroDivisionError("division by zero surd")
        conj = QuadSurd(o.a / norm, -o.b / norm, d)
        return self * conj

    def __rtruediv__(self, other):
        return QuadSurd(other, 0, self.d) / self

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa if sa else sb
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() == 0

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * self.d**0.5
