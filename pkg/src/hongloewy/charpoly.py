"""Characteristic polynomials ``p_n(x) = det(x*I - Z_n)``.

Two independent routes are provided: the four-term recurrence obtained by
elimination on ``x*I - Z_n`` and the division-free Berkowitz algorithm for
an arbitrary integer matrix.  Evaluation helpers cover the closed form in
terms of conjugate power sums and the special point ``x = 4/5``.
"""

from __future__ import annotations

import sys
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .matrix_core import SymmetricIntMatrix, build_Z
from .poly import IntPolynomial

# p_1 .. p_4, ascending coefficients
BASE_CASES = {
    1: IntPolynomial([-1, 1]),
    2: IntPolynomial([1, -3, 1]),
    3: IntPolynomial([-1, 5, -6, 1]),
    4: IntPolynomial([1, -8, 18, -13, 1]),
}

_THREE_X_MINUS_TWO = IntPolynomial([-2, 3])
_ONE_MINUS_X_SQ = IntPolynomial([1, -1]) ** 2
_ONE_MINUS_X_4 = IntPolynomial([1, -1]) ** 4

DEFAULT_CACHE_BUDGET = 64 * 1024 * 1024


class _RecurrenceCache:
    def __init__(self, budget_bytes: int = DEFAULT_CACHE_BUDGET):
        self.budget_bytes = budget_bytes
        self._polys: dict[int, IntPolynomial] = dict(BASE_CASES)
        self._sizes: dict[int, int] = {k: _poly_bytes(p) for k, p in BASE_CASES.items()}
        self._lock = threading.Lock()

    def get(self, n: int) -> IntPolynomial:
        p = self._polys.get(n)
        if p is not None:
            return p
        with self._lock:
            return self._compute(n)

    def _compute(self, n: int) -> IntPolynomial:
        polys = self._polys
        if n in polys:
            return polys[n]
        # highest m <= n from which the recurrence can restart
        start = max(
            (m for m in polys if m <= n and all(m - d in polys for d in range(4))),
            default=4,
        )
        window = {start - d: polys[start - d] for d in range(4)}
        for m in range(start + 1, n + 1):
            pm = _THREE_X_MINUS_TWO * (window[m - 1] - _ONE_MINUS_X_SQ * window[m - 3]) + (
                _ONE_MINUS_X_4 * window[m - 4]
            )
            window[m] = pm
            del window[m - 4]
            self._store(m, pm)
        return window[n] if n in window else polys[n]

    def _store(self, m: int, p: IntPolynomial) -> None:
        self._polys[m] = p
        self._sizes[m] = _poly_bytes(p)
        total = sum(self._sizes.values())
        if total <= self.budget_bytes:
            return
        newest = max(self._polys)
        for k in sorted(self._polys):
            if total <= self.budget_bytes:
                break
            if k <= 4 or k > newest - 4:
                continue
            total -= self._sizes.pop(k)
            del self._polys[k]

    def clear(self) -> None:
        with self._lock:
            self._polys = dict(BASE_CASES)
            self._sizes = {k: _poly_bytes(p) for k, p in BASE_CASES.items()}


def _poly_bytes(p: IntPolynomial) -> int:
    return sum(sys.getsizeof(c) for c in p.coeffs)


_CACHE = _RecurrenceCache()


def set_cache_budget(nbytes: int) -> None:
    """Cap the memory held by memoized ``p_n`` (older entries are evicted)."""
    _CACHE.budget_bytes = nbytes


def clear_cache() -> None:
    _CACHE.clear()


def charpoly_recurrence(n: int) -> IntPolynomial:
    """``p_n`` via ``p_n = (3x-2)(p_{n-1} - (1-x)^2 p_{n-3}) + (1-x)^4 p_{n-4}``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return _CACHE.get(n)


def charpoly_oracle(M) -> IntPolynomial:
    """``det(x*I - M)`` by Berkowitz's division-free algorithm.

    ``M`` is a SymmetricIntMatrix or a square list of integer rows (not
    necessarily symmetric).
    """
    rows = M.rows() if isinstance(M, SymmetricIntMatrix) else [list(r) for r in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if n == 0:
        return IntPolynomial([1])
    # coefficients highest degree first
    vec = [1, -rows[n - 1][n - 1]]
    for i in range(n - 2, -1, -1):
        size = n - i
        a = rows[i][i]
        r_row = rows[i][i + 1 :]
        col = [rows[j][i] for j in range(i + 1, n)]
        sub = [row[i + 1 :] for row in rows[i + 1 :]]
        # first column of the Toeplitz factor
        t = [1, -a]
        v = col
        for _ in range(size - 1):
            t.append(-sum(x * y for x, y in zip(r_row, v)))
            v = [sum(x * y for x, y in zip(srow, v)) for srow in sub]
        vec = [
            sum(t[j - k] * vec[k] for k in range(min(j, size - 1) + 1))
            for j in range(size + 1)
        ]
    return IntPolynomial(vec[::-1])


@dataclass
class PowerSumSequence:
    """``s_k = A**k + B**k`` for the conjugate pair with ``A + B = 6x - 4``
    and ``A*B = 4(1-x)^2``, generated without square roots."""

    lam: Fraction
    terms: list = field(default_factory=list)

    def __post_init__(self):
        self.lam = Fraction(self.lam)
        if not self.terms:
            self.terms = [Fraction(2), 6 * self.lam - 4]

    def __getitem__(self, k: int) -> Fraction:
        trace = 6 * self.lam - 4
        norm = 4 * (1 - self.lam) ** 2
        terms = self.terms
        while len(terms) <= k:
            terms.append(trace * terms[-1] - norm * terms[-2])
        return terms[k]


def eval_closed_form(n: int, lam) -> Fraction:
    """Exact ``p_n(lam)`` from the closed form.

    The closed form has removable singularities at 1 and 4/5, which are
    rejected; use ``pn_at_four_fifths`` or coefficient evaluation there.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    lam = Fraction(lam)
    if lam in (Fraction(4, 5), Fraction(1)):
        raise DomainError(
            "closed form is singular at x = 4/5 and x = 1; "
            "use pn_at_four_fifths() or evaluate charpoly_recurrence(n)"
        )
    s = PowerSumSequence(lam)
    return (
        Fraction(1, 2) * (lam - 1) ** (n - 1)
        + (lam - 1) ** n
        - lam * (1 - lam) ** n / (8 - 18 * lam + 10 * lam**2)
        + s[n] / (2**n * (4 - 5 * lam))
    )


def pn_at_four_fifths(n: int) -> Fraction:
    """``p_n(4/5) = -(3(-1)^n + 10n^2 - 5) / (2 * 5^n)``; always negative."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    sign = 1 if n % 2 == 0 else -1
    return Fraction(-(3 * sign + 10 * n * n - 5), 2 * 5**n)


def leading_coeffs(n: int) -> tuple[int, int, int]:
    """``(a_n, a_{n-1}, a_{n-2})`` of ``p_n`` from the trace and Frobenius
    norm of ``Z_n`` (Newton's identities)."""
    if n < 2:
        raise DomainError("leading_coeffs needs n >= 2")
    Z = build_Z(n)
    tr = Z.trace()
    fro2 = Z.frobenius_sq()
    half, odd = divmod(tr * tr - fro2, 2)
    assert odd == 0, "tr^2 - ||Z||_F^2 must be even"
    return 1, -tr, half
