"""Brute-force c_n straight from the definition.

Every X in K_n is scanned.  A batched float eigensolver gives a cheap
estimate of lambda_min(X X^T); anything within ``SLACK`` of the smallest
estimate is confirmed exactly (Berkowitz charpoly, Sturm isolation) and the
exact minimum is taken, ties going to the smallest bitmask.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .charpoly import charpoly_oracle
from .errors import DomainError
from .interval import DEFAULT_PRECISION, FloatInterval
from .matrix_core import TriangularBinaryMatrix, gram, kn_size, strict_lower_positions
from .roots import RootEnclosure, cauchy_bound, compare_roots, isolate_roots

log = logging.getLogger(__name__)

SLACK = 1e-6
DEFAULT_CAP = 6
LARGE_CAP = 7
CHUNK = 1 << 15


@dataclass(frozen=True)
class OracleResult:
    n: int
    cn_enclosure: FloatInterval
    argmin: TriangularBinaryMatrix
    matrices_scanned: int
    exact_confirmations: int
    min_root: RootEnclosure | None = None

    def fractions(self) -> tuple[Fraction, Fraction]:
        return self.cn_enclosure.fractions()


def min_eigenvalue_gram(X: TriangularBinaryMatrix, digits: int = 30) -> RootEnclosure:
    """Certified smallest eigenvalue of ``X X^T`` to relative width
    ``10**-digits``."""
    p = charpoly_oracle(gram(X))
    # Gram of a unimodular matrix: every root is positive and p(0) = +-1
    roots = isolate_roots(p, 0, cauchy_bound(p))
    if not roots or roots[0].lo < 0:
        raise DomainError("Gram matrix is not positive definite")
    return roots[0].refined_to_relative(digits)


def _float_min_eigs(n: int, lo: int, hi: int) -> np.ndarray:
    """Float lambda_min of X X^T for bitmasks in ``[lo, hi)``."""
    pos = strict_lower_positions(n)
    out = np.empty(hi - lo)
    eye = np.eye(n)
    for start in range(lo, hi, CHUNK):
        stop = min(start + CHUNK, hi)
        masks = np.arange(start, stop, dtype=np.int64)
        X = np.broadcast_to(eye, (stop - start, n, n)).copy()
        for t, (i, j) in enumerate(pos):
            X[:, i, j] = (masks >> t) & 1
        G = X @ X.transpose(0, 2, 1)
        out[start - lo : stop - lo] = np.linalg.eigvalsh(G)[:, 0]
    return out


def _scan_shard(args) -> tuple[float, list[tuple[int, float]]]:
    n, lo, hi = args
    if hi <= lo:
        return float("inf"), []
    est = _float_min_eigs(n, lo, hi)
    best = float(est.min())
    keep = np.nonzero(est <= best + SLACK)[0]
    return best, [(lo + int(k), float(est[k])) for k in keep]


def _shard_bounds(total: int, shards: int) -> list[tuple[int, int]]:
    shards = max(1, min(shards, total))
    step, extra = divmod(total, shards)
    out = []
    a = 0
    for s in range(shards):
        b = a + step + (1 if s < extra else 0)
        out.append((a, b))
        a = b
    return out


def check_cap(n: int, allow_large: bool = False) -> None:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    cap = LARGE_CAP if allow_large else DEFAULT_CAP
    if n > cap:
        if n <= LARGE_CAP:
            raise DomainError(
                f"brute force for n={n} scans {kn_size(n):,} matrices; pass --allow-large"
            )
        raise DomainError(f"brute force is refused for n={n} (limit {LARGE_CAP})")


def brute_force_cn(
    n: int,
    digits: int = 30,
    shards: int = 1,
    workers: int = 1,
    allow_large: bool = False,
    precision_bits: int = DEFAULT_PRECISION,
) -> OracleResult:
    """Exact minimum of lambda_min(X X^T) over K_n.

    The result does not depend on ``shards`` or ``workers``: each shard
    keeps every estimate within SLACK of its own minimum, which is a
    superset of what survives the global cut applied afterwards.
    """
    check_cap(n, allow_large)
    total = kn_size(n)
    jobs = [(n, a, b) for a, b in _shard_bounds(total, shards)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_shard, jobs))
    else:
        parts = [_scan_shard(j) for j in jobs]

    best_est = min(b for b, _ in parts)
    survivors = sorted(m for _, cand in parts for m, e in cand if e <= best_est + SLACK)
    log.debug("n=%d: %d of %d matrices need exact confirmation", n, len(survivors), total)

    best_mask = None
    best_enc = None
    for mask in survivors:
        enc = min_eigenvalue_gram(TriangularBinaryMatrix(n, mask), 10)
        # ascending masks: only a strictly smaller root replaces the incumbent
        if best_enc is None or compare_roots(enc, best_enc) < 0:
            best_mask, best_enc = mask, enc
    best_enc = best_enc.refined_to_relative(digits)
    return OracleResult(
        n,
        FloatInterval((best_enc.lo, best_enc.hi), precision_bits),
        TriangularBinaryMatrix(n, best_mask),
        total,
        len(survivors),
        best_enc,
    )
