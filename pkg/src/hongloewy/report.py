"""Table and figure data: certified decimal strings for c_n, the bounds,
their errors and common significant digits.

Every printed digit is decided from an exact rational enclosure.  When an
enclosure is too wide to fix a digit the whole row is recomputed at a
higher working precision.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import statistics
import tempfile
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable

from .bounds import (
    bounds_row,
    loewy_bounds,
    lower_bound_frobenius,
    lower_bound_thm41,
    samuelson_upper_surd,
    upper_bound_thm31,
)
from .charpoly import charpoly_recurrence, leading_coeffs
from .errors import CertificationError, DomainError
from .interval import DEFAULT_PRECISION
from .poly import IntPolynomial
from .roots import RootEnclosure, compute_cn, count_roots, make_enclosure, seed_lambda1

log = logging.getLogger(__name__)

CSV_HEADER = (
    "n",
    "c_n",
    "lb_thm41",
    "lb_frob",
    "ub_thm31",
    "lb_loewy",
    "ub_loewy",
    "E1",
    "E1_rel",
    "E2",
    "E2_rel",
    "sig_new",
    "sig_prev",
)
MAX_LEVEL = 6
LN_PHI = math.log((1 + math.sqrt(5)) / 2)

Bounds = tuple[Fraction, Fraction]


class Undecided(Exception):
    """An enclosure straddles a rounding boundary."""


# -- decimal digits ----------------------------------------------------------


def _digit_key(s: str) -> tuple[str, int]:
    try:
        d = Decimal(s)
    except InvalidOperation:
        raise DomainError(f"not a decimal number: {s!r}") from None
    if not d.is_finite() or d <= 0:
        raise DomainError(f"expected a positive number, got {s!r}")
    sign, digits, exp = d.as_tuple()
    return "".join(map(str, digits)), d.adjusted()


def significant_digits(x: str, y: str) -> int:
    """Length of the common prefix of the significant digits of ``x`` and
    ``y``; 0 when their leading digits sit at different decimal places."""
    dx, ex = _digit_key(x)
    dy, ey = _digit_key(y)
    if ex != ey:
        return 0
    k = 0
    for a, b in zip(dx, dy):
        if a != b:
            break
        k += 1
    return k


def exponent10(q: Fraction) -> int:
    """``floor(log10(q))`` for ``q > 0``, exactly."""
    if q <= 0:
        raise DomainError("exponent of a nonpositive number")
    e = len(str(q.numerator)) - len(str(q.denominator))
    while Fraction(10) ** e > q:
        e -= 1
    while Fraction(10) ** (e + 1) <= q:
        e += 1
    return e


def _round_half_up(q: Fraction) -> int:
    return math.floor(q + Fraction(1, 2))


def round_fixed(b: Bounds, places: int) -> str:
    """Correctly rounded fixed-point string, or ``Undecided``."""
    lo, hi = b
    scale = 10**places
    m = _round_half_up(lo * scale)
    if _round_half_up(hi * scale) != m:
        raise Undecided
    sign = "-" if m < 0 else ""
    s = str(abs(m)).rjust(places + 1, "0")
    if places == 0:
        return sign + s
    return f"{sign}{s[:-places]}.{s[-places:]}"


def _sci_parts(x: Fraction, sig: int) -> tuple[int, int]:
    e = exponent10(x)
    m = _round_half_up(x * Fraction(10) ** (sig - 1 - e))
    if m == 10**sig:
        m //= 10
        e += 1
    return m, e


def round_sci(b: Bounds, sig: int) -> str:
    """Correctly rounded scientific string with ``sig`` significant digits
    (positive values only), or ``Undecided``."""
    lo, hi = b
    if lo <= 0:
        raise Undecided
    parts = _sci_parts(lo, sig)
    if _sci_parts(hi, sig) != parts:
        raise Undecided
    m, e = parts
    s = str(m)
    mant = s[0] + ("." + s[1:] if len(s) > 1 else "")
    return f"{mant}e{e:+03d}"


def sci_until_decided(make, sig: int, levels: int = MAX_LEVEL) -> str:
    """``round_sci`` of ``make(level)`` for the first level that decides
    every digit; ``make`` returns exact bounds, tighter as level grows."""
    for level in range(levels + 1):
        try:
            return round_sci(make(level), sig)
        except Undecided:
            continue
    raise CertificationError(f"could not fix {sig} significant digits")


def _truncated(b: Bounds, e: int, k: int) -> int:
    scale = Fraction(10) ** (k - 1 - e)
    t = math.floor(b[0] * scale)
    if math.floor(b[1] * scale) != t:
        raise Undecided
    return t


def certified_common_digits(a: Bounds, b: Bounds, limit: int = 400) -> int:
    """``significant_digits`` of the exact values enclosed by ``a`` and
    ``b``, decided without printing either; ``limit`` caps the count for
    values that agree that far (or exactly)."""
    ea, ea_hi = exponent10(a[0]), exponent10(a[1])
    eb, eb_hi = exponent10(b[0]), exponent10(b[1])
    if ea != ea_hi or eb != eb_hi:
        raise Undecided
    if ea != eb:
        return 0
    for k in range(1, limit + 1):
        if _truncated(a, ea, k) != _truncated(b, ea, k):
            return k - 1
    return limit


# -- rows --------------------------------------------------------------------


def thm41_is_exact(n: int) -> bool:
    """True when the Samuelson endpoint is itself the largest root of p_n,
    i.e. the lower bound equals c_n exactly."""
    s = samuelson_upper_surd(*leading_coeffs(n), n)
    return charpoly_recurrence(n).sign_at(s) == 0


@dataclass(frozen=True)
class ReportRow:
    n: int
    c_n: str
    lb_thm41: str
    lb_frob: str
    ub_thm31: str
    lb_loewy: str
    ub_loewy: str
    E1: str
    E1_rel: str
    E2: str
    E2_rel: str
    sig_new: int
    sig_prev: int

    def csv_fields(self) -> list:
        return [getattr(self, k) for k in CSV_HEADER]


@dataclass(frozen=True)
class Table1Row:
    n: int
    c_n: str
    thm41_lower: str
    frob_lower: str
    thm31_upper: str

    @classmethod
    def of(cls, r: ReportRow) -> Table1Row:
        return cls(r.n, r.c_n, r.lb_thm41, r.lb_frob, r.ub_thm31)


@dataclass(frozen=True)
class FigureRow:
    n: int
    digits_new: int
    digits_prev: int
    E1: str
    E1p: str
    E2: str
    E2p: str

    @classmethod
    def of(cls, r: ReportRow) -> FigureRow:
        return cls(r.n, r.sig_new, r.sig_prev, r.E1, r.E1_rel, r.E2, r.E2_rel)


def _sub(a: Bounds, b: Bounds) -> Bounds:
    return a[0] - b[1], a[1] - b[0]


def _div(a: Bounds, b: Bounds) -> Bounds:
    # a >= 0, b > 0
    return a[0] / b[1], a[1] / b[0]


def _working_precision(n: int, digits: int, level: int) -> tuple[int, int]:
    # c_n and the bounds agree to about 0.84 n digits; the errors need that
    # many extra digits on top of the printed ones
    cn_digits = (math.ceil(0.9 * n) + digits + 12) << level
    bits = max(DEFAULT_PRECISION, int(cn_digits * 3.33) + 64) << (1 if level else 0)
    return cn_digits, bits


def _row_at(n: int, digits: int, style: str, variant: str, level: int, base_bits: int) -> ReportRow:
    cn_digits, bits = _working_precision(n, digits, level)
    bits = max(bits, base_bits << level)
    res = compute_cn(n, cn_digits)
    cn = (res.cn_lo, res.cn_hi)
    t41 = lower_bound_thm41(n, bits).fractions()
    frob = lower_bound_frobenius(n, bits).fractions()
    t31 = upper_bound_thm31(n, bits, variant).fractions()
    llo, lhi = loewy_bounds(n)
    exact41 = thm41_is_exact(n)

    def value(b: Bounds) -> str:
        return round_fixed(b, digits) if style == "fixed" else round_sci(b, digits)

    e1 = _sub(t31, cn)
    if exact41:
        e2_s = e2r_s = "0"
        # identical values: every printed significant digit is shared
        sig_new = len(_digit_key(value(cn))[0])
    else:
        e2 = _sub(cn, t41)
        e2_s, e2r_s = round_sci(e2, digits), round_sci(_div(e2, cn), digits)
        sig_new = certified_common_digits(cn, t41)
    return ReportRow(
        n,
        value(cn),
        value(cn) if exact41 else value(t41),
        value(frob),
        value(t31),
        value((llo, llo)),
        value((lhi, lhi)),
        round_sci(e1, digits),
        round_sci(_div(e1, cn), digits),
        e2_s,
        e2r_s,
        sig_new,
        certified_common_digits(cn, frob),
    )


def compute_row(
    n: int,
    digits: int = 10,
    style: str = "fixed",
    variant: str = "as-stated",
    precision_bits: int = DEFAULT_PRECISION,
) -> ReportRow:
    """All report columns for one ``n``, every string certified."""
    if n < 2:
        raise DomainError("report rows need n >= 2")
    if style not in ("fixed", "sci"):
        raise DomainError(f"unknown style {style!r}")
    for level in range(MAX_LEVEL + 1):
        try:
            return _row_at(n, digits, style, variant, level, precision_bits)
        except Undecided:
            log.debug("n=%d: rounding undecided at level %d", n, level)
    raise CertificationError(f"could not certify the printed digits for n={n}")


def _row_job(args) -> tuple[ReportRow, RootEnclosure]:
    n, digits, style, variant, bits, seed = args
    if seed is not None:
        seed_lambda1(n, seed)
    row = compute_row(n, digits, style, variant, bits)
    # the memo holds the narrowest enclosure reached while certifying
    return row, compute_cn(n, 1).lambda1


def compute_rows(
    ns: Iterable[int],
    digits: int,
    style: str,
    variant: str = "as-stated",
    precision_bits: int = DEFAULT_PRECISION,
    threads: int = 1,
    cache: ResultCache | None = None,
) -> list[ReportRow]:
    """Rows in ascending ``n``; the output does not depend on ``threads``."""
    ns = sorted(set(ns))
    seeds = {n: cache.load(n) if cache else None for n in ns}
    jobs = [(n, digits, style, variant, precision_bits, seeds[n]) for n in ns]
    if threads > 1 and len(jobs) > 1:
        # largest n first so the slow rows start early
        order = sorted(range(len(jobs)), key=lambda i: -ns[i])
        with ProcessPoolExecutor(max_workers=threads) as pool:
            done = dict(zip(order, pool.map(_row_job, [jobs[i] for i in order])))
        results = [done[i] for i in range(len(jobs))]
    else:
        results = [_row_job(j) for j in jobs]
    if cache is not None:
        for row, enc in results:
            cache.store(row.n, enc)
        cache.save()
    return [row for row, _ in results]


# -- documents ---------------------------------------------------------------


def fit_log_slope(ns, values) -> float:
    """Least-squares slope of ``ln(value)`` against ``n``."""
    xs = [float(n) for n in ns]
    ys = [float(Decimal(str(v)).ln()) for v in values]
    return statistics.linear_regression(xs, ys).slope


def error_slopes(rows: list[ReportRow]) -> dict:
    """Fitted log-slopes over the upper half of the rows, with the
    reference rates ``-6 ln(phi)`` and ``-4 ln(phi)``."""
    half = [r for r in rows[len(rows) // 2 :] if r.E2 != "0"]
    if len(half) < 2:
        return {}
    ns = [r.n for r in half]
    out = {
        "n_min": ns[0],
        "n_max": ns[-1],
        "reference_abs": -6 * LN_PHI,
        "reference_rel": -4 * LN_PHI,
    }
    for key in ("E1", "E2", "E1_rel", "E2_rel"):
        out[key] = fit_log_slope(ns, [getattr(r, key) for r in half])
    return out


def render_csv(rows: list[ReportRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.csv_fields())
    return buf.getvalue()


def render_json(rows: list[ReportRow], extra: dict | None = None, projection=None) -> str:
    body = [asdict(projection.of(r)) if projection else asdict(r) for r in rows]
    doc = {"rows": body}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def emit_table1(
    n_range: Iterable[int] = range(2, 11),
    digits: int = 10,
    format: str = "csv",
    variant: str = "as-stated",
    precision_bits: int = DEFAULT_PRECISION,
    threads: int = 1,
    cache: ResultCache | None = None,
) -> str:
    """Table of c_n and its bounds, values printed to ``digits`` decimal
    places."""
    rows = compute_rows(n_range, digits, "fixed", variant, precision_bits, threads, cache)
    if format == "csv":
        return render_csv(rows)
    if format == "json":
        return render_json(rows, projection=Table1Row)
    raise DomainError(f"unknown format {format!r}")


def emit_error_figures(
    n_range: Iterable[int] = range(3, 51),
    digits: int = 6,
    format: str = "csv",
    variant: str = "as-stated",
    precision_bits: int = DEFAULT_PRECISION,
    threads: int = 1,
    cache: ResultCache | None = None,
) -> tuple[str, dict]:
    """Error and digit-count series; values in scientific notation with
    ``digits`` significant digits.  Returns the document and the fitted
    slopes (also embedded in the JSON form)."""
    rows = compute_rows(n_range, digits, "sci", variant, precision_bits, threads, cache)
    slopes = error_slopes(rows)
    if format == "csv":
        return render_csv(rows), slopes
    if format == "json":
        return render_json(rows, {"slopes": slopes}, projection=FigureRow), slopes
    raise DomainError(f"unknown format {format!r}")


# -- sandwich check ----------------------------------------------------------


def sandwich(n: int, variant: str = "as-stated", precision_bits: int = DEFAULT_PRECISION) -> dict[str, bool]:
    """Certified ordering of c_n against every bound.

    Refines c_n and raises the precision until each comparison is decided;
    a comparison still undecided at the last level counts as a failure,
    except the Samuelson bound when it is exactly c_n.
    """
    exact41 = n >= 2 and thm41_is_exact(n)
    checks: dict[str, bool | None] = {}
    for level in range(MAX_LEVEL + 1):
        cn_digits, bits = _working_precision(n, 10, level)
        bits = max(bits, precision_bits << level)
        res = compute_cn(n, cn_digits)
        lo, hi = res.cn_lo, res.cn_hi
        row = bounds_row(n, bits, variant)
        lows = {
            "loewy_lo": (row.loewy_lo, row.loewy_lo),
            "frob_lower": row.frob_lower.fractions(),
            "thm41_lower": row.thm41_lower.fractions(),
        }
        highs = {
            "loewy_hi": (row.loewy_hi, row.loewy_hi),
            "thm31_upper": row.thm31_upper.fractions(),
            "thm31_strict": row.thm31_strict.fractions(),
        }
        for k, b in lows.items():
            if checks.get(k) is None:
                if k == "thm41_lower" and exact41:
                    checks[k] = b[0] <= hi and lo <= b[1]
                elif b[1] <= lo:
                    checks[k] = True
                elif b[0] > hi:
                    checks[k] = False
        for k, b in highs.items():
            if checks.get(k) is None:
                if b[0] >= hi:
                    checks[k] = True
                elif b[1] < lo:
                    checks[k] = False
        f, t = lows["frob_lower"], lows["thm41_lower"]
        if checks.get("thm41_ge_frob") is None:
            if f[1] <= t[0]:
                checks["thm41_ge_frob"] = True
            elif t[1] < f[0]:
                checks["thm41_ge_frob"] = False
        s, a = highs["thm31_strict"], highs["thm31_upper"]
        if checks.get("strict_le_as_stated") is None:
            if s[1] <= a[0]:
                checks["strict_le_as_stated"] = True
            elif a[1] < s[0]:
                checks["strict_le_as_stated"] = False
        if len(checks) == 8 and all(v is not None for v in checks.values()):
            break
    keys = list(lows) + list(highs) + ["thm41_ge_frob", "strict_le_as_stated"]
    return {k: bool(checks.get(k)) for k in keys}


# -- result cache ------------------------------------------------------------


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _parse_frac(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den or 1))


class ResultCache:
    """JSON file keyed by n holding the charpoly coefficients, the
    lambda_1 and c_n enclosures and the precision they were refined to.

    Entries are re-verified (coefficients against the recurrence, Sturm
    count of the enclosure) before they are trusted.
    """

    def __init__(self, path: str):
        self.path = path
        self._lock = threading.Lock()
        self.entries: dict[str, dict] = {}
        if os.path.exists(path):
            try:
                with open(path, encoding="utf-8") as fh:
                    data = json.load(fh)
                self.entries = dict(data.get("entries", {}))
            except (OSError, ValueError) as exc:
                log.warning("ignoring unreadable cache %s: %s", path, exc)

    def load(self, n: int) -> RootEnclosure | None:
        e = self.entries.get(str(n))
        if e is None:
            return None
        try:
            p = IntPolynomial(int(c) for c in e["coeffs"])
            if p != charpoly_recurrence(n):
                raise CertificationError("coefficients disagree with the recurrence")
            lo, hi = (_parse_frac(s) for s in e["lambda1"])
            enc = make_enclosure(p, lo, hi)
            if count_roots(p, hi) != 0:
                raise CertificationError("enclosure is not the largest root")
        except (KeyError, ValueError, ZeroDivisionError, CertificationError) as exc:
            log.warning("cache entry for n=%d rejected: %s", n, exc)
            return None
        seed_lambda1(n, enc)
        return enc

    def store(self, n: int, enc: RootEnclosure) -> None:
        with self._lock:
            self.entries[str(n)] = {
                "coeffs": [str(c) for c in enc.poly.coeffs],
                "lambda1": [_frac_str(enc.lo), _frac_str(enc.hi)],
                "c_n": [_frac_str(1 / enc.hi), _frac_str(1 / enc.lo)],
                "precision": _relative_digits(enc),
            }

    def save(self) -> None:
        d = os.path.dirname(os.path.abspath(self.path))
        with self._lock:
            payload = json.dumps({"entries": self.entries}, indent=1, sort_keys=True)
        fd, tmp = tempfile.mkstemp(dir=d, prefix=".cache-", suffix=".json")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload)
        os.replace(tmp, self.path)


def _relative_digits(enc: RootEnclosure) -> int:
    if enc.width == 0:
        return 0
    return max(0, exponent10(enc.lo) - exponent10(enc.width))
