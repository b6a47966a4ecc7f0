"""Acceptance suite: one test per criterion, at the stated tolerances.

Run alone with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import math
import time
from fractions import Fraction

import pytest

from hongloewy.bounds import (
    frobenius_closed_form,
    golden_power,
    upper_bound_thm31,
)
from hongloewy.charpoly import (
    BASE_CASES,
    charpoly_oracle,
    charpoly_recurrence,
    pn_at_four_fifths,
)
from hongloewy.lattice import DivisorClosedSet, identity, j_function, meet_matrix_lower_bound
from hongloewy.matrix_core import build_Z
from hongloewy.oracle import brute_force_cn
from hongloewy.report import compute_row, emit_error_figures, emit_table1, fit_log_slope, sandwich
from hongloewy.roots import (
    certify_eigenvalue_bounds,
    compute_cn,
    interlaces,
    lambda2_enclosure,
    compare_roots,
)
from hongloewy.surd import QuadSurd

LN_PHI = math.log((1 + math.sqrt(5)) / 2)

# reference table: n -> (c_n, golden-ratio lower, Frobenius lower, upper)
REFERENCE_TABLE = {
    2: ("0.3819660113", "0.3819660113", "0.3779644730", "0.4082482905"),
    3: ("0.1980622642", "0.1978219619", "0.1961161351", "0.2041241452"),
    4: ("0.0870031120", "0.0869565217", "0.0867109970", "0.0877058019"),
    5: ("0.0370683347", "0.0370629486", "0.0370370370", "0.0371390676"),
    6: ("0.0148275852", "0.0148271154", "0.0148249863", "0.0148331386"),
    7: ("0.0058169987", "0.0058169617", "0.0058168052", "0.0058173957"),
    8: ("0.0022453455", "0.0022453429", "0.0022453322", "0.0022453719"),
    9: ("0.0008622031", "0.0008622030", "0.0008622023", "0.0008622048"),
    10: ("0.0003300037", "0.0003300037", "0.0003300036", "0.0003300038"),
}

# reference error values: n -> (E1, E2, E1', E2')
REFERENCE_ERRORS = {
    3: ("0.00606188", "0.000240302", "0.0306059", "0.00121327"),
    10: ("1.06108e-10", "1.09335e-11", "3.21535e-7", "3.31315e-8"),
    25: ("4.28758e-29", "4.61083e-30", "2.41337e-19", "2.59532e-20"),
    50: ("3.89204e-60", "4.21849e-61", "6.16555e-40", "6.68268e-41"),
}


def _agree_5_sig(ours: str, ref: str) -> bool:
    # half a unit in the fifth significant digit of the reference value
    r = Fraction(ref)
    e = math.floor(math.log10(float(r)))
    return abs(Fraction(ours) - r) <= Fraction(10) ** (e - 4) / 2


@pytest.mark.criterion(1)
def test_table1_reproduction(criterion):
    t0 = time.perf_counter()
    doc = emit_table1(range(2, 11), 10)
    elapsed = time.perf_counter() - t0
    rows = {int(r[0]): r[1:5] for r in (line.split(",") for line in doc.splitlines()[1:])}
    mismatches = [
        (n, tuple(rows[n]), REFERENCE_TABLE[n]) for n in REFERENCE_TABLE if tuple(rows[n]) != REFERENCE_TABLE[n]
    ]
    assert not mismatches, f"mismatches: {mismatches}"
    assert elapsed < 10, f"took {elapsed:.1f}s"
    criterion(f"36/36 cells match, {elapsed:.2f}s")


@pytest.mark.criterion(2)
def test_figure_data(criterion):
    t0 = time.perf_counter()
    doc, _ = emit_error_figures(sorted(REFERENCE_ERRORS), 8, "csv", precision_bits=512)
    elapsed = time.perf_counter() - t0
    header = doc.splitlines()[0].split(",")
    bad = []
    for line in doc.splitlines()[1:]:
        row = dict(zip(header, line.split(",")))
        n = int(row["n"])
        ours = (row["E1"], row["E2"], row["E1_rel"], row["E2_rel"])
        for name, o, ref in zip(("E1", "E2", "E1'", "E2'"), ours, REFERENCE_ERRORS[n]):
            if not _agree_5_sig(o, ref):
                bad.append((n, name, o, ref))
    assert not bad, f"disagreements: {bad}"
    assert elapsed < 60, f"took {elapsed:.1f}s"
    criterion(f"16/16 values within half a unit of the 5th digit, {elapsed:.2f}s")


@pytest.mark.criterion(3)
def test_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    for n in range(1, 7):
        r = brute_force_cn(n, 30)
        c = compute_cn(n, 30)
        assert r.cn_enclosure.overlaps((c.cn_lo, c.cn_hi)), f"n={n}: enclosures disjoint"
        assert r.exact_confirmations >= 1
        if n == 2:
            assert r.argmin.rows() == [[1, 0], [1, 1]]
    elapsed = time.perf_counter() - t0
    assert elapsed < 300, f"took {elapsed:.1f}s"
    criterion(f"n=1..6 overlap, argmin(2) = [[1,0],[1,1]], {elapsed:.2f}s")


@pytest.mark.criterion(4)
def test_four_fifths_corollary(criterion):
    t0 = time.perf_counter()
    for n in range(1, 201):
        assert pn_at_four_fifths(n) == charpoly_recurrence(n)(Fraction(4, 5)), f"n={n}"
    elapsed = time.perf_counter() - t0
    assert elapsed < 30, f"took {elapsed:.1f}s"
    criterion(f"n=1..200 exact, {elapsed:.2f}s")


@pytest.mark.criterion(5)
def test_charpoly_cross_validation(criterion):
    assert str(BASE_CASES[1]) == "x - 1"
    assert str(BASE_CASES[2]) == "x^2 - 3*x + 1"
    assert str(BASE_CASES[3]) == "x^3 - 6*x^2 + 5*x - 1"
    assert str(BASE_CASES[4]) == "x^4 - 13*x^3 + 18*x^2 - 8*x + 1"
    for n in range(1, 51):
        assert charpoly_recurrence(n).coeffs == charpoly_oracle(build_Z(n)).coeffs, f"n={n}"
    criterion("n=1..50 identical, base cases p1..p4 as expected")


@pytest.mark.criterion(6)
def test_eigenvalue_separation(criterion):
    for n in range(2, 101):
        c = certify_eigenvalue_bounds(n)
        assert c.lambda1_gt_one, f"lambda_1 > 1 not certified at n={n}"
        assert c.lambda2_lt_four_fifths, f"lambda_2 < 4/5 not certified at n={n}"
    prev = None
    for n in range(2, 61):
        cur = lambda2_enclosure(n)
        if prev is not None:
            assert compare_roots(prev, cur) <= 0, f"lambda_2 decreased at n={n}"
        prev = cur
    for n in range(3, 61):
        assert interlaces(charpoly_recurrence(n - 1), charpoly_recurrence(n)), f"n={n}"
    criterion("bounds n=2..100, monotone n=2..60, interlacing n=3..60")


@pytest.mark.criterion(7)
def test_frobenius_identity(criterion):
    for n in range(1, 101):
        exact = build_Z(n).frobenius_sq()
        lo, hi = frobenius_closed_form(n, 256).fractions()
        assert 0 <= lo and lo * lo <= exact <= hi * hi, f"n={n}"
    assert build_Z(2).frobenius_sq() == 7
    r = QuadSurd.sqrt_of(7)
    lo, hi = frobenius_closed_form(2, 256).fractions()
    assert lo <= r <= hi and r * r == 7
    criterion("n=1..100 at 256 bits; n=2 is sqrt(7)")


@pytest.mark.criterion(8)
def test_bound_ordering(criterion):
    for n in range(2, 101):
        checks = sandwich(n)
        bad = [k for k in ("loewy_lo", "frob_lower", "thm41_lower", "loewy_hi", "thm31_upper", "thm41_ge_frob") if not checks[k]]
        assert not bad, f"n={n}: {bad}"
        row = compute_row(n, 10, "sci")
        assert row.sig_new >= row.sig_prev, f"n={n}: digits {row.sig_new} < {row.sig_prev}"
    # n=2: the lower bound is c_2 itself
    from hongloewy.bounds import lower_bound_thm41

    c2 = compute_cn(2, 40)
    t = lower_bound_thm41(2, 512)
    assert t.overlaps((c2.cn_lo, c2.cn_hi))
    assert t.width() + (c2.cn_hi - c2.cn_lo) < Fraction(1, 10**40)
    criterion("n=2..100 sandwiched, digits never fewer, golden-ratio bound = c_2 at n=2")


@pytest.mark.criterion(9)
def test_asymptotics(criterion):
    c50 = compute_cn(50, 40).to_interval(512)
    scaled = c50 * golden_power(100, 512)
    lo, hi = scaled.fractions()
    assert abs(lo - 5) < Fraction(1, 10**6) and abs(hi - 5) < Fraction(1, 10**6)
    ns = list(range(20, 51))
    rows = [compute_row(n, 12, "sci") for n in ns]
    s_abs = fit_log_slope(ns, [r.E2 for r in rows])
    s_rel = fit_log_slope(ns, [r.E2_rel for r in rows])
    dev_abs = abs(s_abs / (-6 * LN_PHI) - 1)
    dev_rel = abs(s_rel / (-4 * LN_PHI) - 1)
    assert dev_abs < 0.05, f"E2 slope {s_abs:.4f}"
    assert dev_rel < 0.05, f"E2' slope {s_rel:.4f}"
    criterion(
        f"c_50 phi^100 - 5 = {float(lo - 5):.2e}; slopes off by {dev_abs:.2%} and {dev_rel:.2%}"
    )


@pytest.mark.criterion(10)
def test_lattice_application(criterion):
    for n in range(1, 11):
        r = meet_matrix_lower_bound(DivisorClosedSet.first(n))
        assert r.holds, f"n={n}"
    for x in range(1, 1001):
        assert j_function(x, identity) == sum(1 for k in range(1, x + 1) if math.gcd(k, x) == 1), x
    criterion("n=1..10 hold; totient identity to 1000")


@pytest.mark.criterion(11)
def test_variant_audit(criterion):
    worst = None
    for n in range(2, 101):
        checks = sandwich(n)
        assert checks["strict_le_as_stated"], f"n={n}: strict above as-stated"
        assert checks["thm31_strict"], f"n={n}: strict below c_n"
        if n in (2, 10, 50, 100):
            gap = upper_bound_thm31(n, variant="strict") - compute_cn(n, 40).to_interval()
            rel = float(gap) / float(compute_cn(n, 40))
            worst = rel if worst is None else min(worst, rel)
            print(f"n={n}: strict upper bound exceeds c_n by relative {rel:.3e}")
    criterion(f"strict <= as-stated and >= c_n for n=2..100 (min relative margin {worst:.2e})")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
