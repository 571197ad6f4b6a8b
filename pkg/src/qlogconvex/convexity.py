"""Log-convexity of number sequences and q-log-convexity of polynomial sequences."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .arith import Poly, Scalar, as_scalar, poly_mul, poly_sub
from .operators import L_mod
from .parallel import chunked, ordered_map
from .sequences import PolySeqSpec, Triangle, gen_poly


@dataclass(frozen=True)
class ConvexityVerdict:
    """Outcome of a log-convexity/concavity check.

    On failure ``index`` is the first interior n with a violated inequality
    and ``values`` is (a_{n-1}, a_n, a_{n+1}).
    """

    holds: bool
    index: Optional[int] = None
    values: Optional[Tuple[Scalar, Scalar, Scalar]] = None

    def __post_init__(self):
        if self.holds != (self.index is None):
            raise ValueError("witness must be present exactly when the check fails")


@dataclass(frozen=True)
class QLCVerdict:
    """Outcome of a q-log-convexity (or concavity) check over 1 <= n < n_max.

    On failure, ``(n, t, coefficient)`` names the first negative coefficient
    of the relevant difference, in (n, t) order.
    """

    holds: bool
    n: Optional[int] = None
    t: Optional[int] = None
    coefficient: Optional[Scalar] = None
    checked: int = 0

    def __post_init__(self):
        if self.holds != (self.n is None):
            raise ValueError("witness must be present exactly when the check fails")
        if self.coefficient is not None and not self.coefficient < 0:
            raise ValueError("witness coefficient must be negative")

    @property
    def witness(self) -> Optional[Tuple[int, int, Scalar]]:
        if self.holds:
            return None
        return (self.n, self.t, self.coefficient)


def _check_values(values: Sequence, strict_nonneg: bool) -> list:
    vals = [as_scalar(v) for v in values]
    if not vals:
        raise ValueError("sequence must be nonempty")
    if strict_nonneg:
        for i, v in enumerate(vals):
            if v < 0:
                raise ValueError(f"negative entry {v} at index {i}")
    return vals


def is_log_convex(values: Sequence, strict_nonneg: bool = True) -> ConvexityVerdict:
    """a_{n-1} a_{n+1} >= a_n^2 at every interior index."""
    vals = _check_values(values, strict_nonneg)
    for i in range(1, len(vals) - 1):
        if vals[i - 1] * vals[i + 1] < vals[i] ** 2:
            return ConvexityVerdict(False, i, (vals[i - 1], vals[i], vals[i + 1]))
    return ConvexityVerdict(True)


def is_log_concave(values: Sequence, strict_nonneg: bool = True) -> ConvexityVerdict:
    """a_n^2 >= a_{n-1} a_{n+1} at every interior index."""
    vals = _check_values(values, strict_nonneg)
    for i in range(1, len(vals) - 1):
        if vals[i] ** 2 < vals[i - 1] * vals[i + 1]:
            return ConvexityVerdict(False, i, (vals[i - 1], vals[i], vals[i + 1]))
    return ConvexityVerdict(True)


def qlc_difference(p_prev: Poly, p_cur: Poly, p_next: Poly) -> Poly:
    """p_prev * p_next - p_cur**2."""
    return poly_sub(poly_mul(p_prev, p_next), poly_mul(p_cur, p_cur))


def _first_negative(spec: PolySeqSpec, ns: list, direction: int):
    for n in ns:
        diff = qlc_difference(gen_poly(spec, n - 1), gen_poly(spec, n), gen_poly(spec, n + 1))
        for t, c in enumerate(diff):
            if direction * c < 0:
                return (n, t, direction * c)
    return None


def _qlc_upto(spec: PolySeqSpec, n_max: int, direction: int, parallel: bool) -> QLCVerdict:
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    spec.triangle.require_rows(n_max)
    ns = list(range(1, n_max))
    # small chunks keep the first-failure search short; order is preserved
    tasks = [(spec, chunk, direction) for chunk in chunked(ns, 4)]
    for hit in ordered_map(_first_negative, tasks, parallel=parallel):
        if hit is not None:
            n, t, c = hit
            return QLCVerdict(False, n, t, c, checked=len(ns))
    return QLCVerdict(True, checked=len(ns))


def is_q_log_convex_upto(spec: PolySeqSpec, n_max: int, parallel: bool = False) -> QLCVerdict:
    """Every coefficient of g_{n-1} g_{n+1} - g_n^2 is >= 0 for 1 <= n <= n_max - 1."""
    return _qlc_upto(spec, n_max, 1, parallel)


def is_q_log_concave_upto(spec: PolySeqSpec, n_max: int, parallel: bool = False) -> QLCVerdict:
    """Mirror of :func:`is_q_log_convex_upto` for g_n^2 - g_{n-1} g_{n+1}.

    The witness coefficient is the (negative) coefficient of g_n^2 - g_{n-1} g_{n+1}.
    """
    return _qlc_upto(spec, n_max, -1, parallel)


def is_self_reciprocal(p: Poly, n: int) -> bool:
    """True iff coefficient i equals coefficient n - i for 0 <= i <= n."""
    if n < p.degree:
        return False
    return all(p[i] == p[n - i] for i in range(n // 2 + 1))


# ---------------------------------------------------------------------------
# Coefficients of the difference via L-sums
# ---------------------------------------------------------------------------


def _check_nt(n: int, t: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if t < 0 or t > 2 * n:
        raise ValueError(f"t must satisfy 0 <= t <= 2n = {2 * n}, got {t}")


def coeff_A(tri: Triangle, n: int, t: int) -> int:
    """Coefficient of q^t in f_{n-1} f_{n+1} - f_n^2, summed from L_t values."""
    _check_nt(n, t)
    s, odd = divmod(t, 2)
    total = sum(L_mod(tri, n, t, k) for k in range(s + (1 if odd else 0)))
    if odd:
        return total
    diag = L_mod(tri, n, t, s)
    if diag % 2:
        raise ArithmeticError(f"odd diagonal L_{t}(a({n},{s})) = {diag}")
    return total + diag // 2


def coeff_B(spec: PolySeqSpec, n: int, t: int) -> Scalar:
    """Coefficient of q^t in g_{n-1} g_{n+1} - g_n^2, summed from weighted L_t values."""
    _check_nt(n, t)
    tri, u = spec.triangle, spec.weights
    s, odd = divmod(t, 2)
    total: Scalar = sum(L_mod(tri, n, t, k) * u(k) * u(t - k) for k in range(s + (1 if odd else 0)))
    if not odd:
        total += Fraction(L_mod(tri, n, t, s) * u(s) ** 2, 2)
    return as_scalar(total)


def direct_coefficient(spec: PolySeqSpec, n: int, t: int) -> Scalar:
    """Same coefficient as :func:`coeff_B`, read off the expanded product."""
    _check_nt(n, t)
    diff = qlc_difference(gen_poly(spec, n - 1), gen_poly(spec, n), gen_poly(spec, n + 1))
    return diff[t]
