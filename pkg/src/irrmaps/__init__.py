"""Exact enumeration of essentially irreducible maps with even face degrees.

Counting polynomials for genus 0, 1, 2, their structural identities
(string/dilaton, transform inversion, moment-route agreement), and an
independent brute-force polygon-gluing oracle with universal-cover balls.
"""

from .families import (ConsistencyError, QPolyTable, power_one_plus_r,
                       qpoly_direct_sum_oracle, qpoly_table, series_I, series_J,
                       series_J_inverse)
from .oracle import (CoverBall, GluingSpec, HalfEdgeMap, OracleError, SizeError,
                     assemble_map, brute_count, check_irreducible,
                     enumerate_matchings, simple_cycles_up_to)
from .pipeline import (CountPolynomial, DomainError, InvariantViolation,
                       PipelineContext, UnsupportedGenusError, count_exact,
                       girth_count, make_context, moment_hat, moment_hat_via_T,
                       nhat, nhat_genus0, nhat_higher_genus,
                       numeric_series_crosscheck, solve_R_hat, to_m_basis)
from .ring import (ContextError, GradedSeries, MultiPoly, Rational, Series,
                   TruncationError, bernoulli_plus, faulhaber_closed_sum,
                   power_sum_poly)
from .serialize import count_csv_rows, emit_polynomial_json, parse_polynomial_json
from .verify import (VerificationReport, cross_verify_counts, verify_ab_inverse,
                     verify_dilaton, verify_moments, verify_qpoly, verify_string,
                     verify_table1)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
