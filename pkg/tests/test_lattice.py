from fractions import Fraction
from math import gcd

import pytest
import sympy

from hongloewy.errors import DomainError
from hongloewy.lattice import (
    DivisorClosedSet,
    MeetMatrix,
    divisors,
    identity,
    j_function,
    meet_matrix_lower_bound,
    mobius_divisor,
)
from hongloewy.roots import compute_cn
from hongloewy.surd import QuadSurd


def test_mobius_examples():
    assert mobius_divisor(1, 1) == 1
    assert mobius_divisor(2, 4) == -1
    assert mobius_divisor(1, 6) == 1
    assert mobius_divisor(2, 3) == 0
    assert mobius_divisor(3, 6) == -1
    assert mobius_divisor(3, 12) == 0


def test_mobius_matches_number_theory():
    for y in range(1, 2001):
        for x in divisors(y):
            assert mobius_divisor(x, y) == sympy.mobius(y // x)


def test_j_examples():
    assert j_function(1, lambda z: Fraction(7, 3)) == Fraction(7, 3)
    assert j_function(6, identity) == 2
    assert j_function(4, lambda z: 1) == 0


def test_j_identity_is_totient():
    for x in range(1, 301):
        assert j_function(x, identity) == sum(1 for k in range(1, x + 1) if gcd(k, x) == 1)


def test_divisor_closed_validation():
    DivisorClosedSet((1, 2, 3, 6))
    with pytest.raises(DomainError):
        DivisorClosedSet((1, 6))
    with pytest.raises(DomainError):
        DivisorClosedSet((2, 1))
    with pytest.raises(DomainError):
        DivisorClosedSet(())


def test_meet_matrix_entries():
    m = MeetMatrix.build(DivisorClosedSet((1, 2, 4)), lambda z: Fraction(z, 2))
    assert m.entries[1][2] == 1
    M, L = m.cleared()
    assert L == 2 and M.rows() == [[1, 1, 1], [1, 2, 2], [1, 2, 4]]


def test_single_element():
    r = meet_matrix_lower_bound(DivisorClosedSet((1,)))
    assert r.bound.contains(1) and r.lambda_min.contains(1) and r.holds


def test_two_elements_equality():
    r = meet_matrix_lower_bound(DivisorClosedSet.first(2))
    exact = (3 - QuadSurd(0, 1, 5)) / 2
    lo, hi = r.lambda_min.fractions()
    assert lo <= exact <= hi
    assert r.bound.overlaps(r.lambda_min)
    assert r.holds


def test_six_elements():
    r = meet_matrix_lower_bound(DivisorClosedSet.first(6))
    assert abs(float(r.bound) - 0.01483) < 1e-5
    c6 = compute_cn(6, 20)
    assert r.bound.overlaps((c6.cn_lo, c6.cn_hi))
    assert r.bound.certainly_le(r.lambda_min) and r.holds


def test_rational_f():
    S = DivisorClosedSet((1, 2, 4))
    r = meet_matrix_lower_bound(S, lambda z: Fraction(z, 3))
    assert r.holds
    assert r.bound.overlaps(compute_cn(3, 20).to_interval() / 3)


def test_nonpositive_j_rejected():
    with pytest.raises(DomainError):
        meet_matrix_lower_bound(DivisorClosedSet.first(4), lambda z: 1)
