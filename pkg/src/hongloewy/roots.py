"""Certified real-root isolation and refinement.

Roots are enclosed in half-open rational intervals ``(lo, hi]`` whose
root count is certified by Sturm sequences; refinement is plain bisection
with exact sign evaluation.  On top of that sit the eigenvalue statements
about ``Z_n``: the enclosure of ``c_n = 1/lambda_1``, the second eigenvalue
and its gap to 4/5, and Cauchy interlacing between ``p_{n-1}`` and ``p_n``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, NamedTuple

from .charpoly import charpoly_recurrence, leading_coeffs
from .errors import CertificationError, DomainError
from .interval import DEFAULT_PRECISION, FloatInterval
from .poly import IntPolynomial

FOUR_FIFTHS = Fraction(4, 5)
INF = float("inf")


# -- Sturm machinery ---------------------------------------------------------


def _remainder_sequence(p: IntPolynomial) -> list[IntPolynomial]:
    seq = [p.primitive(), p.derivative().primitive()]
    while seq[-1].degree > 0:
        f, g = seq[-2], seq[-1]
        r = f.pseudo_remainder(g)
        if r.is_zero():
            break
        # lc(g)^(d+1) f = q g + r and the next term is -rem(f, g)
        d = f.degree - g.degree
        nxt = r if (g.leading < 0 and d % 2 == 0) else -r
        c = nxt.content()
        seq.append(IntPolynomial([a // c for a in nxt.coeffs]))
    return [s for s in seq if not s.is_zero()]


@lru_cache(maxsize=512)
def _sturm_data(p: IntPolynomial) -> tuple[IntPolynomial, tuple[IntPolynomial, ...]]:
    if p.is_zero():
        raise DomainError("Sturm sequence of the zero polynomial")
    if p.degree <= 0:
        return p.primitive(), (p.primitive(),)
    seq = _remainder_sequence(p)
    g = seq[-1]
    if g.degree <= 0:
        return seq[0], tuple(seq)
    # last term is gcd(p, p'), up to a constant
    q = seq[0].exact_div(g.primitive()).primitive()
    return q, tuple(_remainder_sequence(q))


def squarefree(p: IntPolynomial) -> IntPolynomial:
    """Squarefree part of ``p``, primitive with positive leading term."""
    return _sturm_data(p)[0]


def is_squarefree(p: IntPolynomial) -> bool:
    return squarefree(p).degree == p.degree


def sturm_sequence(p: IntPolynomial) -> tuple[IntPolynomial, ...]:
    """Sturm sequence of the squarefree part of ``p``.

    Each remainder is scaled by a positive factor to primitive form, which
    leaves the sign pattern unchanged.
    """
    return _sturm_data(p)[1]


def _sign_at_infinity(p: IntPolynomial, positive: bool) -> int:
    s = 1 if p.leading > 0 else -1
    if not positive and p.degree % 2 == 1:
        s = -s
    return s


def sign_variations(seq, x) -> int:
    """Sign changes of the sequence at ``x`` (zeros skipped)."""
    last = 0
    changes = 0
    for q in seq:
        if x == INF or x == -INF:
            s = _sign_at_infinity(q, x == INF)
        else:
            s = q.sign_at(x)
        if s == 0:
            continue
        if last and s != last:
            changes += 1
        last = s
    return changes


def count_roots(p: IntPolynomial, lo=-INF, hi=INF) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``.

    Endpoints may be ints, Fractions, QuadSurds or infinities.
    """
    seq = sturm_sequence(p)
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def cauchy_bound(p: IntPolynomial) -> int:
    """A power of two strictly larger than every |root| of ``p``."""
    lc = abs(p.leading)
    m = max((abs(a) for a in p.coeffs[:-1]), default=0)
    bound = 1 + -(-m // lc)
    b = 1
    while b <= bound:
        b <<= 1
    return b


# -- enclosures --------------------------------------------------------------


@dataclass(frozen=True)
class RootEnclosure:
    """``(lo, hi]`` containing exactly one distinct real root of ``poly``.

    ``lo`` is never a root.  ``sign_certificate`` holds the Sturm sign
    variations at ``lo`` and ``hi``; their difference is 1.
    """

    lo: Fraction
    hi: Fraction
    poly: IntPolynomial
    multiplicity: int = 1
    sign_certificate: tuple[int, int] = (1, 0)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo < x <= self.hi

    def to_interval(self, bits: int = DEFAULT_PRECISION) -> FloatInterval:
        return FloatInterval((self.lo, self.hi), bits)

    def refined(self, done: Callable[[Fraction, Fraction], bool]) -> RootEnclosure:
        return refine(self, done)

    def refined_to_relative(self, digits: int) -> RootEnclosure:
        scale = 10**digits
        return refine(self, lambda lo, hi: (hi - lo) * scale <= min(abs(lo), abs(hi)))

    def refined_to_width(self, width) -> RootEnclosure:
        width = Fraction(width)
        return refine(self, lambda lo, hi: hi - lo <= width)

    def __float__(self):
        return float((self.lo + self.hi) / 2)


def make_enclosure(p: IntPolynomial, lo, hi, multiplicity: int = 1) -> RootEnclosure:
    """Certify that ``(lo, hi]`` isolates one distinct root of ``p``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise CertificationError("empty enclosure")
    q = squarefree(p)
    if q.sign_at(lo) == 0:
        raise CertificationError("lower endpoint is a root")
    seq = sturm_sequence(q)
    vlo, vhi = sign_variations(seq, lo), sign_variations(seq, hi)
    if vlo - vhi != 1:
        raise CertificationError(f"(lo, hi] holds {vlo - vhi} roots, expected 1")
    return RootEnclosure(lo, hi, p, multiplicity, (vlo, vhi))


def refine(enc: RootEnclosure, done: Callable[[Fraction, Fraction], bool]) -> RootEnclosure:
    """Bisect until ``done(lo, hi)``; an exactly hit root collapses the
    interval onto ``hi``."""
    q = squarefree(enc.poly)
    lo, hi = enc.lo, enc.hi
    s_lo = q.sign_at(lo)
    while not done(lo, hi):
        mid = (lo + hi) / 2
        s = q.sign_at(mid)
        if s == 0:
            hi = mid
            w = hi - lo
            while not done(hi - w, hi):
                w /= 2
            lo = hi - w
            break
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    if (lo, hi) == (enc.lo, enc.hi):
        return enc
    seq = sturm_sequence(q)
    cert = (sign_variations(seq, lo), sign_variations(seq, hi))
    return RootEnclosure(lo, hi, enc.poly, enc.multiplicity, cert)


def _split_point(q: IntPolynomial, a: Fraction, b: Fraction) -> Fraction:
    for num, den in ((1, 2), (1, 3), (2, 3), (1, 5), (4, 5), (3, 7), (4, 7)):
        m = a + (b - a) * num / den
        if q.sign_at(m) != 0:
            return m
    k = 11
    while True:
        m = a + (b - a) / k
        if q.sign_at(m) != 0:
            return m
        k += 2


def _multiplicity(p: IntPolynomial, lo: Fraction, hi: Fraction) -> int:
    if is_squarefree(p):
        return 1
    mult = 0
    g = p
    while g.degree > 0 and count_roots(g, lo, hi) > 0:
        mult += 1
        g = g.gcd(g.derivative())
    return mult


def isolate_roots(p: IntPolynomial, lo=None, hi=None) -> list[RootEnclosure]:
    """Enclosures of every distinct real root of ``p`` in ``(lo, hi]``
    (default: all real roots), ascending and pairwise disjoint."""
    if p.is_zero():
        raise DomainError("cannot isolate the roots of the zero polynomial")
    q = squarefree(p)
    if q.degree <= 0:
        return []
    seq = sturm_sequence(q)
    B = cauchy_bound(q)
    a = Fraction(-B) if lo is None else Fraction(lo)
    b = Fraction(B) if hi is None else Fraction(hi)
    if q.sign_at(a) == 0:
        # shift the open end left past the root without admitting another
        raise DomainError("lower isolation endpoint must not be a root")
    out = []
    stack = [(a, b, sign_variations(seq, a), sign_variations(seq, b))]
    while stack:
        x, y, vx, vy = stack.pop()
        k = vx - vy
        if k == 0:
            continue
        if k == 1:
            out.append(RootEnclosure(x, y, p, 1, (vx, vy)))
            continue
        m = _split_point(q, x, y)
        vm = sign_variations(seq, m)
        stack.append((m, y, vm, vy))
        stack.append((x, m, vx, vm))
    out.sort(key=lambda e: e.lo)
    if not is_squarefree(p):
        out = [
            RootEnclosure(e.lo, e.hi, p, _multiplicity(p, e.lo, e.hi), e.sign_certificate)
            for e in out
        ]
    return out


def compare_roots(e1: RootEnclosure, e2: RootEnclosure, gcd_after: int = 48) -> int:
    """Exact order of the two enclosed roots: -1, 0 or 1.

    Refines until the intervals separate; after ``gcd_after`` rounds of
    overlap a common factor of the two polynomials decides equality.
    """
    rounds = 0
    checked_gcd = False
    while True:
        if e1.hi <= e2.lo:
            return -1
        if e2.hi <= e1.lo:
            return 1
        if e1.hi == e2.hi and e1.poly == e2.poly:
            return 0
        if rounds >= gcd_after and not checked_gcd:
            checked_gcd = True
            g = e1.poly.gcd(e2.poly)
            if g.degree > 0:
                lo, hi = max(e1.lo, e2.lo), min(e1.hi, e2.hi)
                if lo < hi and count_roots(g, lo, hi) > 0:
                    return 0
                if lo == hi and g.sign_at(hi) == 0:
                    return 0
        if e1.width >= e2.width:
            w = e1.width / 2
            e1 = refine(e1, lambda lo, hi: hi - lo <= w)
        else:
            w = e2.width / 2
            e2 = refine(e2, lambda lo, hi: hi - lo <= w)
        rounds += 1


# -- eigenvalues of Z_n ------------------------------------------------------


@dataclass(frozen=True)
class CnResult:
    """Certified enclosure ``cn_lo <= c_n <= cn_hi`` with ``c_n = 1/lambda_1``."""

    n: int
    lambda1: RootEnclosure
    cn_lo: Fraction
    cn_hi: Fraction
    requested_digits: int

    def to_interval(self, bits: int = DEFAULT_PRECISION) -> FloatInterval:
        return FloatInterval((self.cn_lo, self.cn_hi), bits)

    def __float__(self):
        return float((self.cn_lo + self.cn_hi) / 2)


_lambda1_memo: dict[int, RootEnclosure] = {}
_memo_lock = threading.Lock()


def _dyadic_sqrt_bounds(q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    from math import isqrt

    scale = 1 << (2 * bits)
    lo_int = isqrt(q.numerator * scale // q.denominator)
    return Fraction(lo_int, 1 << bits), Fraction(lo_int + 1, 1 << bits)


def lambda1_bracket(n: int) -> RootEnclosure:
    """Initial certified enclosure of the largest eigenvalue of ``Z_n``.

    Upper end: rational upper bound on the Samuelson endpoint.  Lower end:
    ``sqrt(||Z_n||_F^2 - 16/25 (n-1))``, valid once ``lambda_2 < 4/5``; the
    bracket is certified by Sturm counts either way, with a fallback to
    plain isolation.
    """
    from .bounds import samuelson_upper_rational

    p = charpoly_recurrence(n)
    if n >= 2:
        a_n, a_n1, a_n2 = leading_coeffs(n)
        hi = samuelson_upper_rational(a_n, a_n1, a_n2, n, bits=64 + 2 * n)
        fro2 = a_n1 * a_n1 - 2 * a_n2
        lo, _ = _dyadic_sqrt_bounds(Fraction(fro2) - Fraction(16, 25) * (n - 1), 64 + 2 * n)
        if lo < hi and p.sign_at(lo) < 0 < p.sign_at(hi) and count_roots(p, hi) == 0:
            try:
                return make_enclosure(p, lo, hi)
            except CertificationError:
                pass
    return isolate_roots(p)[-1]


def lambda1_enclosure(n: int, digits: int) -> RootEnclosure:
    """Largest root of ``p_n`` to relative width ``10**-digits`` (memoized)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    enc = _lambda1_memo.get(n)
    if enc is None:
        enc = lambda1_bracket(n)
    scale = 10**digits
    if (enc.hi - enc.lo) * scale > enc.lo:
        enc = enc.refined_to_relative(digits)
    with _memo_lock:
        cur = _lambda1_memo.get(n)
        if cur is None or enc.width < cur.width:
            _lambda1_memo[n] = enc
    return enc


def seed_lambda1(n: int, enc: RootEnclosure) -> None:
    """Install an externally verified enclosure (e.g. from a result cache)."""
    with _memo_lock:
        cur = _lambda1_memo.get(n)
        if cur is None or enc.width < cur.width:
            _lambda1_memo[n] = enc


def compute_cn(n: int, digits: int = 30) -> CnResult:
    """Certified ``c_n`` of relative width at most ``10**-digits``."""
    # 1/x maps (lo, hi] onto [1/hi, 1/lo); relative width is preserved
    enc = lambda1_enclosure(n, digits)
    if enc.lo <= 0:
        raise CertificationError("largest eigenvalue enclosure is not positive")
    return CnResult(n, enc, 1 / enc.hi, 1 / enc.lo, digits)


class EigenvalueCertificate(NamedTuple):
    n: int
    p_at_one: Fraction
    p_at_four_fifths: Fraction
    roots_above_one: int
    roots_above_four_fifths: int
    squarefree: bool

    @property
    def lambda1_gt_one(self) -> bool:
        return self.roots_above_one >= 1

    @property
    def lambda2_lt_four_fifths(self) -> bool:
        # one simple root above 4/5, and 4/5 itself is not a root
        return self.roots_above_four_fifths == 1 and self.squarefree and self.p_at_four_fifths != 0


def certify_eigenvalue_bounds(n: int) -> EigenvalueCertificate:
    """Sturm-certify ``lambda_1 > 1`` and ``lambda_2 < 4/5`` for ``Z_n``."""
    if n < 2:
        raise DomainError("the eigenvalue bounds concern n >= 2")
    p = charpoly_recurrence(n)
    return EigenvalueCertificate(
        n,
        p(Fraction(1)),
        p(FOUR_FIFTHS),
        count_roots(p, 1),
        count_roots(p, FOUR_FIFTHS),
        is_squarefree(p),
    )


def roots_descending(p: IntPolynomial) -> list[RootEnclosure]:
    """All real roots repeated by multiplicity, largest first."""
    out = []
    for e in reversed(isolate_roots(p)):
        out.extend([e] * e.multiplicity)
    return out


def interlaces(small: IntPolynomial, big: IntPolynomial) -> bool:
    """``lambda_{k+1}(big) <= lambda_k(small) <= lambda_k(big)`` for all k,
    eigenvalues in descending order."""
    mu = roots_descending(small)
    lam = roots_descending(big)
    if len(lam) != len(mu) + 1 or len(lam) != big.degree:
        return False
    for k, m in enumerate(mu):
        if compare_roots(lam[k + 1], m) > 0 or compare_roots(m, lam[k]) > 0:
            return False
    return True


def lambda2_enclosure(n: int) -> RootEnclosure:
    """Second-largest root of ``p_n``, isolated inside ``(0, 4/5]``."""
    if n < 2:
        raise DomainError("lambda_2 needs n >= 2")
    below = isolate_roots(charpoly_recurrence(n), 0, FOUR_FIFTHS)
    if not below:
        raise CertificationError(f"no root of p_{n} in (0, 4/5]")
    return below[-1]


class SecondEigenvalueReport(NamedTuple):
    lambda2: RootEnclosure
    gap: FloatInterval
    interlaced: bool


def second_eigenvalue_report(n: int, digits: int = 30, bits: int = DEFAULT_PRECISION) -> SecondEigenvalueReport:
    """``lambda_2`` of ``Z_n``, its gap to 4/5, and interlacing with ``Z_{n-1}``."""
    if n < 2:
        raise DomainError("second_eigenvalue_report needs n >= 2")
    cert = certify_eigenvalue_bounds(n)
    if not cert.lambda2_lt_four_fifths:
        raise CertificationError(f"could not certify lambda_2 < 4/5 for n={n}")
    enc = lambda2_enclosure(n).refined_to_relative(digits)
    gap = FloatInterval((FOUR_FIFTHS - enc.hi, FOUR_FIFTHS - enc.lo), bits)
    interlaced = interlaces(charpoly_recurrence(n - 1), charpoly_recurrence(n))
    return SecondEigenvalueReport(enc, gap, interlaced)
