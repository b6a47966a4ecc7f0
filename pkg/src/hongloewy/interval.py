"""Outward-rounded arbitrary-precision intervals (backed by mpmath.iv)."""

from __future__ import annotations

import operator
import threading
from fractions import Fraction

import mpmath
from mpmath import libmp

DEFAULT_PRECISION = 512
MAX_PRECISION = 8192

_contexts: dict = {}
_ctx_lock = threading.Lock()


def _context(bits: int):
    ctx = _contexts.get(bits)
    if ctx is None:
        with _ctx_lock:
            ctx = _contexts.get(bits)
            if ctx is None:
                ctx = type(mpmath.iv)()
                ctx.prec = bits
                _contexts[bits] = ctx
    return ctx


def _raw_to_fraction(raw) -> Fraction:
    p, q = libmp.to_rational(raw)
    return Fraction(int(p), int(q))


class FloatInterval:
    """Closed interval ``[lo, hi]`` with binary floating endpoints.

    Every operation rounds the lower endpoint down and the upper endpoint up
    at ``precision_bits``, so the result encloses the exact value of the
    expression whenever the operands enclose theirs.  Mixed operations with
    ``int`` and ``Fraction`` treat those as exact points.
    """

    __slots__ = ("_iv", "precision_bits")

    def __init__(self, value=0, precision_bits: int = DEFAULT_PRECISION):
        ctx = _context(precision_bits)
        self.precision_bits = precision_bits
        if isinstance(value, FloatInterval):
            a, b = value._iv._mpi_
            self._iv = _from_raw(ctx, a, b)
        elif isinstance(value, tuple):
            lo, hi = value
            self._iv = _hull(ctx, _point(ctx, lo), _point(ctx, hi))
        else:
            self._iv = _point(ctx, value)

    @classmethod
    def _wrap(cls, iv, bits: int) -> FloatInterval:
        out = cls.__new__(cls)
        out._iv = iv
        out.precision_bits = bits
        return out

    # -- endpoints --------------------------------------------------------

    @property
    def lo(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self._iv._mpi_[0])

    @property
    def hi(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self._iv._mpi_[1])

    def fractions(self) -> tuple[Fraction, Fraction]:
        """Endpoints as exact rationals."""
        a, b = self._iv._mpi_
        return _raw_to_fraction(a), _raw_to_fraction(b)

    def width(self) -> Fraction:
        lo, hi = self.fractions()
        return hi - lo

    def midpoint(self) -> Fraction:
        lo, hi = self.fractions()
        return (lo + hi) / 2

    # -- arithmetic -------------------------------------------------------

    def _binary(self, other, op, reverse=False):
        if isinstance(other, FloatInterval):
            bits = max(self.precision_bits, other.precision_bits)
        elif isinstance(other, (int, Fraction)):
            bits = self.precision_bits
        else:
            return NotImplemented
        ctx = _context(bits)
        a = self._iv if bits == self.precision_bits else _from_raw(ctx, *self._iv._mpi_)
        if isinstance(other, FloatInterval):
            b = _from_raw(ctx, *other._iv._mpi_)
        else:
            b = _point(ctx, other)
        res = op(b, a) if reverse else op(a, b)
        return FloatInterval._wrap(res, bits)

    def __add__(self, other):
        return self._binary(other, operator.add)

    def __radd__(self, other):
        return self._binary(other, operator.add, reverse=True)

    def __sub__(self, other):
        return self._binary(other, operator.sub)

    def __rsub__(self, other):
        return self._binary(other, operator.sub, reverse=True)

    def __mul__(self, other):
        return self._binary(other, operator.mul)

    def __rmul__(self, other):
        return self._binary(other, operator.mul, reverse=True)

    def __truediv__(self, other):
        return self._binary(other, operator.truediv)

    def __rtruediv__(self, other):
        return self._binary(other, operator.truediv, reverse=True)

    def __neg__(self):
        return FloatInterval._wrap(-self._iv, self.precision_bits)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        ctx = _context(self.precision_bits)
        if k < 0:
            return 1 / (self ** (-k))
        result = _point(ctx, 1)
        base = self._iv
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return FloatInterval._wrap(result, self.precision_bits)

    def sqrt(self) -> FloatInterval:
        lo, _ = self.fractions()
        if lo < 0:
            raise ValueError("square root of an interval with a negative part")
        ctx = _context(self.precision_bits)
        return FloatInterval._wrap(ctx.sqrt(self._iv), self.precision_bits)

    def with_precision(self, bits: int) -> FloatInterval:
        return FloatInterval(self, bits)

    # -- predicates -------------------------------------------------------

    def contains(self, x) -> bool:
        lo, hi = self.fractions()
        if isinstance(x, FloatInterval):
            xlo, xhi = x.fractions()
            return lo <= xlo and xhi <= hi
        x = Fraction(x)
        return lo <= x <= hi

    def overlaps(self, other) -> bool:
        lo, hi = self.fractions()
        olo, ohi = _as_bounds(other)
        return lo <= ohi and olo <= hi

    def certainly_lt(self, other) -> bool:
        return self.fractions()[1] < _as_bounds(other)[0]

    def certainly_le(self, other) -> bool:
        return self.fractions()[1] <= _as_bounds(other)[0]

    def is_positive(self) -> bool:
        return self.fractions()[0] > 0

    def __repr__(self):
        lo, hi = self._iv._mpi_
        digits = max(10, int(self.precision_bits * 0.30103) // 8)
        return (
            f"FloatInterval([{libmp.to_str(lo, digits)}, {libmp.to_str(hi, digits)}], "
            f"bits={self.precision_bits})"
        )

    def __float__(self):
        return float(self.midpoint())


def _point(ctx, x):
    if isinstance(x, FloatInterval):
        return _from_raw(ctx, *x._iv._mpi_)
    if isinstance(x, int):
        return ctx.mpf(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return ctx.mpf(x.numerator)
        return ctx.mpf(x.numerator) / ctx.mpf(x.denominator)
    if isinstance(x, mpmath.mpf):
        return ctx.mpf(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an interval")


def _from_raw(ctx, a, b):
    lo = libmp.normalize(*a, ctx.prec, libmp.round_floor) if a[1] else a
    hi = libmp.normalize(*b, ctx.prec, libmp.round_ceiling) if b[1] else b
    return ctx.make_mpf((lo, hi))


def _hull(ctx, a, b):
    a0, a1 = a._mpi_
    b0, b1 = b._mpi_
    lo = a0 if libmp.mpf_le(a0, b0) else b0
    hi = a1 if libmp.mpf_ge(a1, b1) else b1
    return ctx.make_mpf((lo, hi))


def _as_bounds(x) -> tuple[Fraction, Fraction]:
    if isinstance(x, FloatInterval):
        return x.fractions()
    if isinstance(x, tuple):
        return Fraction(x[0]), Fraction(x[1])
    x = Fraction(x)
    return x, x


def certified_compare(make_a, make_b, bits: int = DEFAULT_PRECISION, max_bits: int = MAX_PRECISION):
    """Order two quantities given as ``bits -> FloatInterval`` factories.

    Returns -1 or +1 once the enclosures separate, doubling the precision on
    overlap.  Returns 0 if they still overlap at ``max_bits``; the caller
    decides what an undecided comparison means.
    """
    while True:
        a, b = make_a(bits), make_b(bits)
        if a.certainly_lt(b):
            return -1
        if b.certainly_lt(a):
            return 1
        if bits >= max_bits:
            return 0
        bits = min(2 * bits, max_bits)
