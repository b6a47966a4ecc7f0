from fractions import Fraction

import pytest

from hongloewy.charpoly import charpoly_oracle
from hongloewy.errors import DomainError
from hongloewy.matrix_core import TriangularBinaryMatrix, enumerate_Kn, gram
from hongloewy.oracle import brute_force_cn, min_eigenvalue_gram
from hongloewy.roots import compare_roots, compute_cn, isolate_roots
from hongloewy.surd import QuadSurd


def test_min_eig_identity():
    e = min_eigenvalue_gram(TriangularBinaryMatrix(3, 0))
    assert e.contains(1)


def test_min_eig_two_by_two():
    e = min_eigenvalue_gram(TriangularBinaryMatrix.from_rows([[1, 0], [1, 1]]))
    exact = (3 - QuadSurd(0, 1, 5)) / 2
    assert e.lo < exact and exact <= e.hi


def test_min_eig_all_ones_is_not_minimizer():
    X = TriangularBinaryMatrix.from_rows([[1, 0, 0], [1, 1, 0], [1, 1, 1]])
    assert str(charpoly_oracle(gram(X))) == "x^3 - 6*x^2 + 5*x - 1"
    e = min_eigenvalue_gram(X, 10)
    # smallest root of the cubic, from numpy.roots as an independent check
    assert abs(float(e) - 0.3079785284) < 1e-9
    assert e.lo > compute_cn(3, 20).cn_hi


def test_small_cases():
    r1 = brute_force_cn(1)
    assert r1.cn_enclosure.contains(1) and r1.argmin.rows() == [[1]]
    r2 = brute_force_cn(2)
    assert r2.argmin.rows() == [[1, 0], [1, 1]]
    assert f"{float(r2.cn_enclosure):.10f}" == "0.3819660113"
    r3 = brute_force_cn(3)
    assert f"{float(r3.cn_enclosure):.10f}" == "0.1980622642"
    assert r3.matrices_scanned == 8


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_matches_characteristic_root(n):
    r = brute_force_cn(n, 30)
    c = compute_cn(n, 30)
    assert r.cn_enclosure.overlaps((c.cn_lo, c.cn_hi))
    assert r.cn_enclosure.width() <= Fraction(1, 10**30)


def test_shard_independence():
    results = [brute_force_cn(5, 10, shards=s) for s in (1, 4, 16)]
    assert len({r.argmin for r in results}) == 1
    assert len({r.exact_confirmations for r in results}) == 1
    assert all(r.cn_enclosure.overlaps(results[0].cn_enclosure) for r in results)


def test_workers_give_same_answer():
    a = brute_force_cn(4, 10, shards=4, workers=2)
    b = brute_force_cn(4, 10)
    assert a.argmin == b.argmin


def test_prefilter_audit_n4():
    # exact minimum over every matrix, no float prefilter
    best = None
    best_bits = None
    for X in enumerate_Kn(4):
        p = charpoly_oracle(gram(X))
        e = isolate_roots(p, 0, 64)[0]
        if best is None or compare_roots(e, best) < 0:
            best, best_bits = e, X.bits
    r = brute_force_cn(4)
    assert r.argmin.bits == best_bits
    assert compare_roots(r.min_root, best) == 0


def test_caps():
    with pytest.raises(DomainError, match="allow-large"):
        brute_force_cn(7)
    with pytest.raises(DomainError):
        brute_force_cn(8, allow_large=True)
    with pytest.raises(DomainError):
        brute_force_cn(0)
