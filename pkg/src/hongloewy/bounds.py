"""Closed-form bounds on c_n, evaluated in outward-rounded interval
arithmetic.

All functions take ``precision_bits`` (default 512, roughly 154 decimal
digits) and return a FloatInterval that encloses the exact value, except
the elementary rational bounds and the integer trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import DomainError
from .interval import DEFAULT_PRECISION, FloatInterval
from .matrix_core import fibonacci
from .surd import QuadSurd

VARIANTS = ("as-stated", "strict")


def _sign(n: int) -> int:
    return 1 if n % 2 == 0 else -1


def sqrt5(bits: int = DEFAULT_PRECISION) -> FloatInterval:
    return FloatInterval(5, bits).sqrt()


def golden_power(k: int, precision_bits: int = DEFAULT_PRECISION) -> FloatInterval:
    """Enclosure of ``phi**k`` for any integer ``k``."""
    if k == 0:
        return FloatInterval(1, precision_bits)
    phi = (1 + sqrt5(precision_bits)) / 2
    if k < 0:
        # phi^-1 = phi - 1, which avoids a division
        return (phi - 1) ** (-k)
    return phi**k


def _phi_powers(n: int, bits: int):
    up2 = golden_power(2 * n, bits)
    dn2 = golden_power(-2 * n, bits)
    return up2, dn2, up2 * up2, dn2 * dn2


def frobenius_radicand(n: int, precision_bits: int = DEFAULT_PRECISION) -> FloatInterval:
    """The closed form of ``||Z_n||_F^2`` in powers of the golden ratio."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    bits = precision_bits
    s = _sign(n)
    up2, dn2, up4, dn4 = _phi_powers(n, bits)
    c = 2 / (5 * sqrt5(bits))
    return (
        dn4 / 25
        + Fraction(3 + s, 25) * dn2
        - c * n * dn2
        + Fraction(13 * s - 33, 50)
        + n
        + Fraction(3 + s, 25) * up2
        + c * n * up2
        + up4 / 25
    )


def frobenius_closed_form(n: int, precision_bits: int = DEFAULT_PRECISION) -> FloatInterval:
    return frobenius_radicand(n, precision_bits).sqrt()


def lower_bound_frobenius(n: int, precision_bits: int = DEFAULT_PRECISION) -> FloatInterval:
    """``1/||Z_n||_F``, the norm-inequality lower bound on c_n."""
    return 1 / frobenius_closed_form(n, precision_bits)


def loewy_bounds(n: int) -> tuple[Fraction, Fraction]:
    """Elementary rational bounds ``(lower, upper)`` on c_n."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    f2 = fibonacci(n) ** 2
    s = _sign(n)
    return Fraction(2, 2 * f2 + 2 * n - 1 + s), Fraction(2, 2 * f2 + 1 + s)


def upper_bound_thm31(
    n: int, precision_bits: int = DEFAULT_PRECISION, variant: str = "as-stated"
) -> FloatInterval:
    """Upper bound on c_n from ``lambda_2 < 4/5``.

    ``"as-stated"`` evaluates ``1/sqrt(||Z_n||_F^2 - (n-1))``, the form
    whose values the reference table reproduces; ``"strict"`` evaluates
    ``1/sqrt(||Z_n||_F^2 - 16/25 (n-1))``, which is what summing the
    squared eigenvalues with ``lambda_k < 4/5`` for k >= 2 gives.
    """
    if n < 2:
        raise DomainError("the upper bound needs n >= 2")
    if variant == "as-stated":
        shift = Fraction(n - 1)
    elif variant == "strict":
        shift = Fraction(16, 25) * (n - 1)
    else:
        raise DomainError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    radicand = frobenius_radicand(n, precision_bits) - shift
    if not radicand.is_positive():
        raise DomainError("radicand enclosure is not strictly positive")
    return 1 / radicand.sqrt()


def _normalize_leading(a_n, a_n1, a_n2):
    if a_n == 0:
        raise DomainError("leading coefficient must be nonzero")
    if isinstance(a_n, FloatInterval):
        return a_n, a_n1, a_n2
    if a_n < 0:
        return -a_n, -a_n1, -a_n2
    return a_n, a_n1, a_n2


def samuelson_discriminant(a_n, a_n1, a_n2, n: int):
    """``a_{n-1}^2 - 2n/(n-1) a_n a_{n-2}``, exact for exact inputs."""
    if n < 2:
        raise DomainError("Samuelson's bracket needs n >= 2")
    return a_n1 * a_n1 - Fraction(2 * n, n - 1) * a_n * a_n2


def samuelson_endpoints(a_n, a_n1, a_n2, n: int, precision_bits: int = DEFAULT_PRECISION):
    """Enclosures of the two endpoints of Samuelson's root bracket.

    Coefficients may be exact (int/Fraction) or FloatIntervals.
    """
    a_n, a_n1, a_n2 = _normalize_leading(a_n, a_n1, a_n2)
    bits = precision_bits
    disc = samuelson_discriminant(a_n, a_n1, a_n2, n)
    if isinstance(disc, FloatInterval):
        lo, hi = disc.fractions()
        if hi < 0:
            raise DomainError("negative discriminant: polynomial is not real-rooted")
        if lo < 0:
            # straddles zero only through rounding; the true value is >= 0
            disc = FloatInterval((Fraction(0), hi), disc.precision_bits)
        root = disc.sqrt()
    else:
        if disc < 0:
            raise DomainError("negative discriminant: polynomial is not real-rooted")
        root = FloatInterval(Fraction(disc), bits).sqrt()
    centre = -FloatInterval(a_n1, bits) / (n * FloatInterval(a_n, bits))
    half = (n - 1) * root / (n * FloatInterval(a_n, bits))
    return centre - half, centre + half


def samuelson_interval(a_n, a_n1, a_n2, n: int, precision_bits: int = DEFAULT_PRECISION) -> FloatInterval:
    """Interval containing every real root of a real-rooted polynomial of
    degree ``n`` with the given three leading coefficients."""
    lower, upper = samuelson_endpoints(a_n, a_n1, a_n2, n, precision_bits)
    return FloatInterval((lower.fractions()[0], upper.fractions()[1]), precision_bits)


def samuelson_upper_surd(a_n: int, a_n1: int, a_n2: int, n: int) -> QuadSurd:
    """Exact upper Samuelson endpoint as an element of Q(sqrt(d))."""
    a_n, a_n1, a_n2 = _normalize_leading(a_n, a_n1, a_n2)
    disc = Fraction(samuelson_discriminant(a_n, a_n1, a_n2, n))
    if disc < 0:
        raise DomainError("negative discriminant: polynomial is not real-rooted")
    root = QuadSurd.sqrt_of(disc)
    return Fraction(-a_n1, n * a_n) + root * Fraction(n - 1, n * a_n)


def samuelson_upper_rational(a_n: int, a_n1: int, a_n2: int, n: int, bits: int = 64) -> Fraction:
    """Dyadic rational not below the upper Samuelson endpoint."""
    a_n, a_n1, a_n2 = _normalize_leading(a_n, a_n1, a_n2)
    disc = Fraction(samuelson_discriminant(a_n, a_n1, a_n2, n))
    if disc < 0:
        raise DomainError("negative discriminant: polynomial is not real-rooted")
    scale = 1 << (2 * bits)
    num = disc.numerator * scale
    r = isqrt(-(-num // disc.denominator))
    if r * r * disc.denominator < num:
        r += 1
    root_hi = Fraction(r, 1 << bits)
    value = Fraction(-a_n1, n * a_n) + root_hi * Fraction(n - 1, n * a_n)
    # round up to a dyadic with the same number of fractional bits
    den = 1 << bits
    return Fraction(-((-value.numerator * den) // value.denominator), den)


def trace_closed_form(n: int) -> int:
    """``tr(Z_n) = n + F_n^2 - (1 - (-1)^n)/2``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return n + fibonacci(n) ** 2 - (1 - _sign(n)) // 2


def trace_phi_form(n: int, precision_bits: int = DEFAULT_PRECISION) -> FloatInterval:
    """``n - 1/2 + phi^(2n)/5 + phi^(-2n)/5 + (-1)^n/10``."""
    up2 = golden_power(2 * n, precision_bits)
    dn2 = golden_power(-2 * n, precision_bits)
    return n - Fraction(1, 2) + up2 / 5 + dn2 / 5 + Fraction(_sign(n), 10)


def lower_bound_thm41(
    n: int, precision_bits: int = DEFAULT_PRECISION, route: str = "direct"
) -> FloatInterval:
    """Samuelson-type lower bound on c_n.

    ``route="direct"`` evaluates the explicit golden-ratio formula;
    ``route="samuelson"`` feeds the closed-form trace and Frobenius norm
    through ``samuelson_endpoints``.  The two must overlap.
    """
    if n < 2:
        raise DomainError("the lower bound needs n >= 2")
    bits = precision_bits
    if route == "samuelson":
        tr = trace_phi_form(n, bits)
        fro2 = frobenius_radicand(n, bits)
        _, upper = samuelson_endpoints(
            FloatInterval(1, bits), -tr, (tr * tr - fro2) / 2, n, bits
        )
        return 1 / upper
    if route != "direct":
        raise DomainError(f"unknown route {route!r}")
    s = _sign(n)
    up2, dn2, up4, dn4 = _phi_powers(n, bits)
    plus2 = up2 + dn2
    radicand = (
        Fraction(4 * s, n - 1)
        + 2 * sqrt5(bits) * (n * n) * (up2 - dn2) / (n - 1)
        + Fraction(3 * s + 17, 2)
        + (s - 7 - Fraction(2, n - 1)) * plus2
        + up4
        + dn4
    )
    denom = 1 + Fraction(s - 5, 10 * n) + plus2 / (5 * n) + Fraction(n - 1, 5 * n) * radicand.sqrt()
    return 1 / denom


@dataclass(frozen=True)
class BoundsRow:
    n: int
    loewy_lo: Fraction
    loewy_hi: Fraction
    frob_lower: FloatInterval
    thm31_upper: FloatInterval
    thm41_lower: FloatInterval
    thm31_strict: FloatInterval


def bounds_row(n: int, precision_bits: int = DEFAULT_PRECISION, variant: str = "as-stated") -> BoundsRow:
    lo, hi = loewy_bounds(n)
    return BoundsRow(
        n,
        lo,
        hi,
        lower_bound_frobenius(n, precision_bits),
        upper_bound_thm31(n, precision_bits, variant),
        lower_bound_thm41(n, precision_bits),
        upper_bound_thm31(n, precision_bits, "strict"),
    )
