"""Exact verification of log-convexity and q-log-convexity for combinatorial polynomials."""

__version__ = "0.1.0"

from .arith import MultiPoly, Poly, binomial, mp_derivative, mp_eval, mp_substitute, poly_mul, poly_sub
from .convexity import (
    ConvexityVerdict,
    QLCVerdict,
    coeff_A,
    coeff_B,
    is_log_concave,
    is_log_convex,
    is_q_log_concave_upto,
    is_q_log_convex_upto,
    is_self_reciprocal,
    qlc_difference,
)
from .criteria import CriterionReport, SignPatternResult, check_theorem11, check_theorem21, sign_pattern
from .operators import L_mod, L_tilde
from .sequences import (
    PolySeqSpec,
    Triangle,
    WeightSeq,
    builtin_triangle,
    builtin_weights,
    gen_poly,
    load_triangle_csv,
    make_spec,
    triangle_value,
)
