from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hongloewy.interval import FloatInterval, certified_compare

fracs = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)
bits = st.sampled_from([53, 64, 128, 512])


@given(fracs, fracs, bits)
def test_ops_enclose_exact_result(a, b, p):
    A, B = FloatInterval(a, p), FloatInterval(b, p)
    assert (A + B).contains(a + b)
    assert (A - B).contains(a - b)
    assert (A * B).contains(a * b)
    if b != 0:
        assert (A / B).contains(a / b)
    assert (-A).contains(-a)
    assert (A**3).contains(a**3)


@given(st.fractions(min_value=0, max_value=10**6, max_denominator=1000), bits)
def test_sqrt_encloses(q, p):
    r = FloatInterval(q, p).sqrt()
    lo, hi = r.fractions()
    assert lo * lo <= q <= hi * hi


def test_endpoints_are_rounded_outward():
    third = FloatInterval(Fraction(1, 3), 64)
    lo, hi = third.fractions()
    assert lo < Fraction(1, 3) < hi
    assert third.precision_bits == 64


def test_mixed_precision_uses_max():
    a = FloatInterval(1, 64) / 3
    b = FloatInterval(1, 256) / 7
    assert (a + b).precision_bits == 256


def test_sqrt_negative_raises():
    with pytest.raises(ValueError):
        FloatInterval(-1).sqrt()


def test_predicates():
    a = FloatInterval((Fraction(1), Fraction(2)))
    assert a.contains(Fraction(3, 2))
    assert a.overlaps((Fraction(2), Fraction(3)))
    assert a.certainly_lt(Fraction(5, 2))
    assert not a.certainly_lt(2)
    assert a.certainly_le(2)
    assert a.is_positive()


def test_negative_power_and_midpoint():
    a = FloatInterval(2, 128) ** -3
    assert a.contains(Fraction(1, 8))
    assert FloatInterval((Fraction(1), Fraction(3))).midpoint() == 2


def test_certified_compare():
    sqrt2 = lambda b: FloatInterval(2, b).sqrt()
    near = lambda b: FloatInterval(Fraction(14142135623730951, 10**16), b)
    assert certified_compare(sqrt2, near, 64) == -1
    assert certified_compare(near, sqrt2, 64) == 1
    assert certified_compare(sqrt2, sqrt2, 64, 128) == 0


def test_high_precision_against_mpmath():
    with mpmath.workdps(200):
        ref = mpmath.sqrt(5)
        r = FloatInterval(5, 600).sqrt()
        assert r.lo <= ref <= r.hi
