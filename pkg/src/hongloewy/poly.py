"""Dense univariate polynomials with exact integer coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class IntPolynomial:
    """Polynomial ``sum(coeffs[i] * x**i)`` over the integers.

    Coefficients are stored in ascending degree order with trailing zeros
    stripped, so the zero polynomial has ``coeffs == ()`` and degree -1.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    def __reduce__(self):
        return (IntPolynomial, (self.coeffs,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> IntPolynomial:
        return cls([0] * degree + [c])

    @classmethod
    def linear(cls, a: int, b: int) -> IntPolynomial:
        """``a*x + b``."""
        return cls([b, a])

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def content(self) -> int:
        return gcd(*self.coeffs)

    def primitive(self) -> IntPolynomial:
        """Divide out the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return IntPolynomial([a // c for a in self.coeffs])

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xk = "x" if k == 1 else f"x^{k}"
                body = xk if mag == 1 else f"{mag}*{xk}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- ring operations --------------------------------------------------

    def __neg__(self):
        return IntPolynomial([-a for a in self.coeffs])

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([a * other for a in self.coeffs])
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> IntPolynomial:
        return IntPolynomial([i * a for i, a in enumerate(self.coeffs)][1:])

    def reversed(self) -> IntPolynomial:
        """``x**deg * p(1/x)``; its nonzero roots are reciprocals of ours."""
        return IntPolynomial(self.coeffs[::-1])

    def scale_argument(self, t: Fraction) -> IntPolynomial:
        """Integer polynomial whose roots are ``t`` times the roots of ``self``.

        Computes ``v**d * u**d * p(x/t)`` for ``t = u/v`` with the common
        factor stripped, i.e. coefficient ``a_i * u**(d-i) * v**i``.
        """
        t = Fraction(t)
        if t == 0:
            raise ValueError("scale factor must be nonzero")
        u, v = t.numerator, t.denominator
        d = self.degree
        return IntPolynomial(
            [a * u ** (d - i) * v**i for i, a in enumerate(self.coeffs)]
        ).primitive()

    # -- evaluation -------------------------------------------------------

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any exact ring element."""
        if isinstance(x, Fraction):
            num, den = x.numerator, x.denominator
            return Fraction(self.homogeneous(num, den), den ** max(self.degree, 0))
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def homogeneous(self, num: int, den: int) -> int:
        """``den**deg * p(num/den)`` computed in integers."""
        if not self.coeffs:
            return 0
        it = reversed(self.coeffs)
        acc = next(it)
        dpow = 1
        for a in it:
            dpow *= den
            acc = acc * num + a * dpow
        return acc

    def sign_at(self, x) -> int:
        """Exact sign of ``p(x)`` for int, Fraction or a surd with ``sign()``."""
        if isinstance(x, int):
            v = self(x)
        elif isinstance(x, Fraction):
            v = self.homogeneous(x.numerator, x.denominator)
        else:
            return self(x).sign()
        return (v > 0) - (v < 0)

    # -- division ---------------------------------------------------------

    def pseudo_divmod(self, other: IntPolynomial):
        """Return ``(q, r)`` with ``lc(other)**(d+1) * self = q*other + r``.

        ``d = deg(self) - deg(other)``; for ``d < 0`` returns ``(0, self)``.
        """
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        d = self.degree - other.degree
        if d < 0:
            return IntPolynomial([]), self
        lc = other.leading
        r = list(self.coeffs)
        q = [0] * (d + 1)
        dg = other.degree
        for k in range(d, -1, -1):
            c = r[dg + k]
            r = [a * lc for a in r]
            q = [a * lc for a in q]
            if c:
                q[k] += c
                for i, b in enumerate(other.coeffs):
                    r[i + k] -= c * b
            # the top coefficient is now zero by construction
        return IntPolynomial(q), IntPolynomial(r)

    def pseudo_remainder(self, other: IntPolynomial) -> IntPolynomial:
        """Remainder part of ``pseudo_divmod`` without forming the quotient."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        d = self.degree - other.degree
        if d < 0:
            return self
        lc = other.leading
        dg = other.degree
        g = other.coeffs
        r = list(self.coeffs)
        for k in range(d, -1, -1):
            c = r[dg + k]
            if lc != 1:
                r = [a * lc for a in r]
            if c:
                for i, b in enumerate(g):
                    r[i + k] -= c * b
        return IntPolynomial(r)

    def exact_div(self, other: IntPolynomial) -> IntPolynomial:
        """Quotient when ``other`` divides ``self`` over the rationals.

        The quotient must have integer coefficients; raises ``ValueError``
        otherwise.
        """
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dg = other.degree
        lc = other.leading
        d = self.degree - dg
        if d < 0:
            if self.is_zero():
                return self
            raise ValueError("divisor has larger degree")
        q = [0] * (d + 1)
        for k in range(d, -1, -1):
            c, rem = divmod(r[dg + k], lc)
            if rem:
                raise ValueError("inexact polynomial division")
            q[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    r[i + k] -= c * b
        if any(r):
            raise ValueError("inexact polynomial division")
        return IntPolynomial(q)

    def gcd(self, other: IntPolynomial) -> IntPolynomial:
        """Primitive gcd with positive leading coefficient (primitive PRS)."""
        a, b = self.primitive(), other.primitive()
        if a.degree < b.degree:
            a, b = b, a
        while not b.is_zero():
            a, b = b, a.pseudo_remainder(b).primitive()
        return a.primitive()

    def squarefree_part(self) -> IntPolynomial:
        if self.degree <= 0:
            return self.primitive()
        g = self.gcd(self.derivative())
        if g.degree == 0:
            return self.primitive()
        return self.primitive().exact_div(g).primitive()

    def is_squarefree(self) -> bool:
        return self.degree <= 0 or self.gcd(self.derivative()).degree == 0


def _coerce(other):
    if isinstance(other, IntPolynomial):
        return other
    if isinstance(other, int):
        return IntPolynomial([other])
    return NotImplemented
