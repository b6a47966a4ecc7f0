from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hongloewy.bounds import (
    bounds_row,
    frobenius_closed_form,
    frobenius_radicand,
    golden_power,
    loewy_bounds,
    lower_bound_frobenius,
    lower_bound_thm41,
    samuelson_endpoints,
    samuelson_interval,
    samuelson_upper_rational,
    samuelson_upper_surd,
    trace_closed_form,
    trace_phi_form,
    upper_bound_thm31,
)
from hongloewy.errors import DomainError
from hongloewy.matrix_core import build_Z, fibonacci
from hongloewy.poly import IntPolynomial
from hongloewy.roots import compute_cn, isolate_roots
from hongloewy.surd import QuadSurd


def lucas(k):
    return fibonacci(k - 1) + fibonacci(k + 1) if k > 1 else 1


@pytest.mark.parametrize("k", [1, 2, 5, 10, 40, -3, -20])
def test_golden_power_against_binet(k):
    # phi^k = (L_k + F_k sqrt5)/2 for k >= 1; phi^-k = (-1)^k phi^k conjugate
    m = abs(k)
    s = QuadSurd(Fraction(lucas(m), 2), Fraction(fibonacci(m), 2), 5)
    if k < 0:
        s = (-1) ** m * QuadSurd(s.a, -s.b, 5)
    lo, hi = golden_power(k, 256).fractions()
    assert lo <= s and s <= hi


def test_frobenius_radicand_exact_values():
    for n, v in [(1, 1), (2, 7), (3, 26), (10, 9182535)]:
        assert frobenius_radicand(n).contains(v)
    lo, hi = frobenius_closed_form(2).fractions()
    assert lo * lo <= 7 <= hi * hi


@pytest.mark.parametrize("n", [1, 2, 3, 8, 17, 40])
def test_frobenius_against_matrix(n):
    assert frobenius_radicand(n, 256).contains(build_Z(n).frobenius_sq())


def test_trace_forms():
    for n in range(1, 40):
        t = build_Z(n).trace()
        assert trace_closed_form(n) == t
        assert trace_phi_form(n).contains(t)


def test_loewy_examples():
    assert loewy_bounds(2) == (Fraction(1, 3), Fraction(1, 2))
    lo, hi = loewy_bounds(7)
    c = compute_cn(7, 20)
    assert lo <= c.cn_lo and c.cn_hi <= hi


TABLE = {
    2: ("0.3819660113", "0.3779644730", "0.4082482905"),
    5: ("0.0370629486", "0.0370370370", "0.0371390676"),
    8: ("0.0022453429", "0.0022453322", "0.0022453719"),
}


@pytest.mark.parametrize("n", sorted(TABLE))
def test_bounds_match_table(n):
    t41, frob, t31 = TABLE[n]
    assert f"{float(lower_bound_thm41(n)):.10f}" == t41
    assert f"{float(lower_bound_frobenius(n)):.10f}" == frob
    assert f"{float(upper_bound_thm31(n)):.10f}" == t31


def test_thm41_routes_agree():
    for n in (2, 3, 9, 30, 80):
        assert lower_bound_thm41(n, 512).overlaps(lower_bound_thm41(n, 512, route="samuelson"))


def test_thm41_equals_c2():
    exact = (3 - QuadSurd(0, 1, 5)) / 2
    lo, hi = lower_bound_thm41(2, 512).fractions()
    assert lo <= exact <= hi


def test_variants():
    for n in (2, 10, 50):
        strict = upper_bound_thm31(n, variant="strict")
        as_stated = upper_bound_thm31(n)
        assert strict.certainly_le(as_stated)
    with pytest.raises(DomainError):
        upper_bound_thm31(5, variant="loose")
    with pytest.raises(DomainError):
        upper_bound_thm31(1)


real_rooted = st.lists(st.integers(-20, 20), min_size=2, max_size=7)


@settings(max_examples=50, deadline=None)
@given(real_rooted, st.sampled_from([1, 2, -3]))
def test_samuelson_contains_all_roots(roots, lead):
    p = IntPolynomial([lead])
    for r in roots:
        p = p * IntPolynomial([-r, 1])
    n = p.degree
    iv = samuelson_interval(p[n], p[n - 1], p[n - 2], n, 128)
    lo, hi = iv.fractions()
    assert all(lo <= r <= hi for r in roots)
    up = samuelson_upper_surd(p[n], p[n - 1], p[n - 2], n)
    assert all(r <= up for r in roots)
    assert up <= samuelson_upper_rational(p[n], p[n - 1], p[n - 2], n)


def test_samuelson_tight_for_quadratic():
    lower, upper = samuelson_endpoints(1, -3, 1, 2)
    q = isolate_roots(IntPolynomial([1, -3, 1]))
    assert lower.fractions()[0] <= q[0].hi and q[1].lo <= upper.fractions()[1]
    assert samuelson_upper_surd(1, -3, 1, 2) == (3 + QuadSurd(0, 1, 5)) / 2


def test_negative_discriminant_rejected():
    with pytest.raises(DomainError):
        samuelson_endpoints(1, 0, 5, 2)


def test_bounds_row_fields_positive():
    r = bounds_row(6)
    for iv in (r.frob_lower, r.thm31_upper, r.thm41_lower, r.thm31_strict):
        assert iv.is_positive()
    assert r.loewy_lo < r.loewy_hi
