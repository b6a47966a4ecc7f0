"""Certified computation of the constants c_n = min lambda_min(X X^T).

``c_n`` is the smallest eigenvalue of ``X X^T`` over all unit
lower-triangular (0,1)-matrices ``X`` of size n.  It equals
``1/lambda_max(Z_n)`` for an explicit Fibonacci-structured matrix
``Z_n``; this package encloses it rigorously, evaluates the known
closed-form bounds, and checks both against brute force.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundsRow,
    bounds_row,
    frobenius_closed_form,
    loewy_bounds,
    lower_bound_frobenius,
    lower_bound_thm41,
    samuelson_interval,
    trace_closed_form,
    upper_bound_thm31,
)
from .charpoly import (
    charpoly_oracle,
    charpoly_recurrence,
    eval_closed_form,
    leading_coeffs,
    pn_at_four_fifths,
)
from .errors import CertificationError, DomainError
from .interval import FloatInterval
from .lattice import DivisorClosedSet, MeetMatrix, j_function, meet_matrix_lower_bound, mobius_divisor
from .matrix_core import TriangularBinaryMatrix, SymmetricIntMatrix, build_Z, enumerate_Kn, fibonacci, gram
from .oracle import OracleResult, brute_force_cn, min_eigenvalue_gram
from .poly import IntPolynomial
from .report import emit_error_figures, emit_table1, significant_digits
from .roots import (
    CnResult,
    RootEnclosure,
    certify_eigenvalue_bounds,
    compute_cn,
    isolate_roots,
    second_eigenvalue_report,
)
