"""Meet matrices on the divisor lattice and the eigenvalue bound
``lambda_min(A) >= c_n * min_x J(x)``.

The lattice is the positive integers ordered by divisibility, with meet
``gcd`` and least element 1.  ``f`` is any callback returning exact
rationals; for ``f(x) = x`` the function J is Euler's totient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Callable, NamedTuple

from .charpoly import charpoly_oracle, charpoly_recurrence
from .errors import CertificationError, DomainError
from .interval import DEFAULT_PRECISION, FloatInterval
from .matrix_core import SymmetricIntMatrix
from .roots import cauchy_bound, compare_roots, compute_cn, isolate_roots, make_enclosure


def divisors(x: int) -> list[int]:
    if x < 1:
        raise DomainError(f"expected a positive integer, got {x}")
    small, large = [], []
    d = 1
    while d * d <= x:
        if x % d == 0:
            small.append(d)
            if d * d != x:
                large.append(x // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=1 << 16)
def mobius_divisor(x: int, y: int) -> int:
    """Poset Moebius function of the divisor lattice, by its recursive
    definition: 1 on the diagonal, minus the sum over the open interval
    below ``y`` otherwise, 0 when ``x`` does not divide ``y``."""
    if x < 1 or y < 1:
        raise DomainError("Moebius function arguments must be positive")
    if y % x:
        return 0
    if x == y:
        return 1
    return -sum(mobius_divisor(x, z) for z in divisors(y) if z % x == 0 and z != y)


def j_function(x: int, f: Callable[[int], Fraction]) -> Fraction:
    """``J(x) = sum over z | x of f(z) * mu(z, x)``."""
    return sum((Fraction(f(z)) * mobius_divisor(z, x) for z in divisors(x)), Fraction(0))


def identity(x: int) -> Fraction:
    return Fraction(x)


@dataclass(frozen=True)
class DivisorClosedSet:
    """Sorted set of positive integers containing every divisor of each
    of its elements."""

    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if not els:
            raise DomainError("the set must be nonempty")
        if any(not isinstance(e, int) or e < 1 for e in els):
            raise DomainError("elements must be positive integers")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise DomainError("elements must be strictly increasing")
        have = set(els)
        for e in els:
            missing = [d for d in divisors(e) if d not in have]
            if missing:
                raise DomainError(f"{e} has divisors {missing} outside the set")

    @classmethod
    def first(cls, n: int) -> DivisorClosedSet:
        """``{1, ..., n}``."""
        return cls(tuple(range(1, n + 1)))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class MeetMatrix:
    """``A[i][j] = f(gcd(x_i, x_j))`` with exact rational entries."""

    n: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def build(cls, S: DivisorClosedSet, f: Callable[[int], Fraction]) -> MeetMatrix:
        xs = S.elements
        rows = tuple(tuple(Fraction(f(gcd(a, b))) for b in xs) for a in xs)
        return cls(len(xs), rows)

    def cleared(self) -> tuple[SymmetricIntMatrix, int]:
        """``(L*A, L)`` with ``L`` the lcm of all entry denominators."""
        L = 1
        for row in self.entries:
            for a in row:
                L = lcm(L, a.denominator)
        lower = [[int(self.entries[i][j] * L) for j in range(i + 1)] for i in range(self.n)]
        return SymmetricIntMatrix(self.n, lower), L


class MeetBound(NamedTuple):
    bound: FloatInterval
    lambda_min: FloatInterval
    holds: bool


def meet_matrix_lower_bound(
    S: DivisorClosedSet,
    f: Callable[[int], Fraction] = identity,
    digits: int = 30,
    precision_bits: int = DEFAULT_PRECISION,
) -> MeetBound:
    """Check ``lambda_min(A) >= c_n * min J`` for the meet matrix of ``S``.

    Both sides are roots of integer polynomials, so ``holds`` is decided
    exactly (equality included) rather than by interval overlap.
    """
    n = len(S)
    J = [j_function(x, f) for x in S]
    bad = [x for x, j in zip(S, J) if j <= 0]
    if bad:
        raise DomainError(f"J is not positive at {bad}; the bound does not apply")
    m = min(J)

    M, L = MeetMatrix.build(S, f).cleared()
    p = charpoly_oracle(M)
    roots = isolate_roots(p, 0, cauchy_bound(p))
    if not roots:
        raise CertificationError("meet matrix has no positive eigenvalue")
    # smallest root of p is L * lambda_min(A)
    lam = roots[0].refined_to_relative(digits)

    # L * m * c_n is the smallest root of reversed(p_n) scaled by L*m
    cn = compute_cn(n, digits)
    t = L * m
    q = charpoly_recurrence(n).reversed().scale_argument(t)
    try:
        bnd = make_enclosure(q, t * cn.cn_lo, t * cn.cn_hi)
    except CertificationError:
        bnd = isolate_roots(q, 0, cauchy_bound(q))[0]
    holds = compare_roots(lam, bnd) >= 0

    lam_iv = FloatInterval((lam.lo / L, lam.hi / L), precision_bits)
    bound_iv = FloatInterval((cn.cn_lo * m, cn.cn_hi * m), precision_bits)
    return MeetBound(bound_iv, lam_iv, holds)
