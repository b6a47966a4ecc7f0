"""Fibonacci numbers, the matrices Z_n, and the family K_n of unit
lower-triangular (0,1)-matrices."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import DomainError


class FibCache:
    """Growable table of Fibonacci numbers, ``values[k] = F_k`` for k >= 1."""

    def __init__(self):
        self.values = [0, 1, 1]
        self._lock = threading.Lock()

    def get(self, k: int) -> int:
        if k < 1:
            raise DomainError(f"Fibonacci index must be >= 1, got {k}")
        values = self.values
        if k < len(values):
            return values[k]
        with self._lock:
            values = self.values
            while len(values) <= k:
                values.append(values[-1] + values[-2])
            return values[k]


_FIB = FibCache()


def fibonacci(k: int) -> int:
    """``F_k`` with ``F_1 = F_2 = 1``."""
    return _FIB.get(k)


@lru_cache(maxsize=None)
def strict_lower_positions(n: int) -> tuple[tuple[int, int], ...]:
    """Bit index -> (row, col) for the strict lower triangle, row-major."""
    return tuple((i, j) for i in range(1, n) for j in range(i))


@dataclass(frozen=True)
class TriangularBinaryMatrix:
    """An element of K_n.

    Bit ``t`` of ``bits`` is entry ``strict_lower_positions(n)[t]``; the
    diagonal is all ones.
    """

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("dimension must be positive")
        if not 0 <= self.bits < 1 << (self.n * (self.n - 1) // 2):
            raise DomainError("bitmask out of range for this dimension")

    @classmethod
    def from_rows(cls, rows) -> TriangularBinaryMatrix:
        n = len(rows)
        bits = 0
        for i in range(n):
            if len(rows[i]) != n or rows[i][i] != 1:
                raise DomainError("expected a square matrix with unit diagonal")
            for j in range(i + 1, n):
                if rows[i][j] != 0:
                    raise DomainError("matrix is not lower triangular")
        for t, (i, j) in enumerate(strict_lower_positions(n)):
            if rows[i][j] not in (0, 1):
                raise DomainError("entries must be 0 or 1")
            if rows[i][j]:
                bits |= 1 << t
        return cls(n, bits)

    def entry(self, i: int, j: int) -> int:
        if i == j:
            return 1
        if j > i:
            return 0
        t = i * (i - 1) // 2 + j
        return (self.bits >> t) & 1

    def rows(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]


class SymmetricIntMatrix:
    """Symmetric integer matrix stored by its lower triangle."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries):
        self.n = n
        self.entries = tuple(tuple(row) for row in entries)
        if len(self.entries) != n or any(
            len(row) != i + 1 for i, row in enumerate(self.entries)
        ):
            raise ValueError("entries must be the lower triangle, row by row")

    @classmethod
    def from_rows(cls, rows) -> SymmetricIntMatrix:
        n = len(rows)
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix is not symmetric")
        return cls(n, [[int(rows[i][j]) for j in range(i + 1)] for i in range(n)])

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i][j] if j <= i else self.entries[j][i]

    def rows(self) -> list[list[int]]:
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.n))

    def frobenius_sq(self) -> int:
        total = 0
        for i, row in enumerate(self.entries):
            for j, a in enumerate(row):
                total += a * a if i == j else 2 * a * a
        return total

    def __eq__(self, other):
        if not isinstance(other, SymmetricIntMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, self.entries))

    def __repr__(self):
        return f"SymmetricIntMatrix({self.rows()!r})"


def build_Z(n: int) -> SymmetricIntMatrix:
    """The Fibonacci-structured matrix Z_n, entry by entry.

    With 1-based ``i <= j``::

        Z[i,i] = 1 + sum_{k=i+1}^{n} F_{k-i}^2
        Z[i,j] = (-1)^(j-i) * (F_{j-i} + sum_{k=j+1}^{n} F_{k-i} F_{k-j})
    """
    if n < 1:
        raise DomainError(f"matrix size must be >= 1, got {n}")
    F = fibonacci
    lower = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, i + 1):
            if i == j:
                row.append(1 + sum(F(k - i) ** 2 for k in range(i + 1, n + 1)))
            else:
                # here j < i; the formula is symmetric in (i, j)
                s = F(i - j) + sum(F(k - i) * F(k - j) for k in range(i + 1, n + 1))
                row.append(s if (i - j) % 2 == 0 else -s)
        lower.append(row)
    return SymmetricIntMatrix(n, lower)


def enumerate_Kn(n: int, lo: int = 0, hi: int | None = None) -> Iterator[TriangularBinaryMatrix]:
    """Yield the elements of K_n with bitmask in ``[lo, hi)``, ascending."""
    if n < 1:
        raise DomainError("dimension must be positive")
    total = 1 << (n * (n - 1) // 2)
    hi = total if hi is None else min(hi, total)
    for bits in range(max(lo, 0), hi):
        yield TriangularBinaryMatrix(n, bits)


def kn_size(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def gram(X: TriangularBinaryMatrix) -> SymmetricIntMatrix:
    """``X @ X.T`` in exact integers."""
    rows = X.rows()
    n = X.n
    lower = [
        [sum(rows[i][k] * rows[j][k] for k in range(j + 1)) for j in range(i + 1)]
        for i in range(n)
    ]
    return SymmetricIntMatrix(n, lower)
