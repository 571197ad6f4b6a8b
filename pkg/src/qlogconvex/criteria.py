"""Hypothesis checkers for the two sufficient criteria of q-log-convexity.

* ``check_theorem11`` -- the Liu-Wang criterion: for every n >= 1 and
  0 <= t <= 2n the row [L~_t(a(n,k))]_{k <= t/2} changes sign at most once,
  from nonnegative to nonpositive.
* ``check_theorem21`` -- the self-reciprocal criterion: every g_n is
  palindromic of degree n (C1) and the rows [L_t(a(n,k))]_{k <= t/2} have the
  same single sign change, but only for 0 <= t <= n (C2).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import as_scalar
from .convexity import is_self_reciprocal
from .operators import L_mod, L_row, L_tilde
from .parallel import chunked, ordered_map
from .sequences import PolySeqSpec, Triangle, gen_poly

__all__ = [
    "CriterionReport",
    "SignPatternResult",
    "L_mod",
    "L_tilde",
    "check_theorem11",
    "check_theorem21",
    "sign_pattern",
]


@dataclass(frozen=True)
class SignPatternResult:
    admissible: bool
    split_index: Optional[int] = None
    violation: Optional[Tuple[int, int]] = None


def sign_pattern(values: Sequence) -> SignPatternResult:
    """Check that no strictly positive value follows a strictly negative one.

    Zeros match either side.  When admissible, ``split_index`` is the largest
    k' with values[:k'+1] >= 0 and values[k'+1:] <= 0 (-1 if the first entry
    is negative).  Otherwise ``violation`` is (first negative index, first
    later positive index).

    >>> sign_pattern([5, 3, -2, -7])
    SignPatternResult(admissible=True, split_index=1, violation=None)
    >>> sign_pattern([1, -1, 2]).violation
    (1, 2)
    """
    vals = [as_scalar(v) for v in values]
    if not vals:
        raise ValueError("sign_pattern needs a nonempty sequence")
    first_neg = next((i for i, v in enumerate(vals) if v < 0), None)
    if first_neg is None:
        return SignPatternResult(True, len(vals) - 1)
    for j in range(first_neg + 1, len(vals)):
        if vals[j] > 0:
            return SignPatternResult(False, violation=(first_neg, j))
    return SignPatternResult(True, first_neg - 1)


@dataclass
class CriterionReport:
    theorem: str  # "T1.1" or "T2.1"
    triangle: str
    weights: Optional[str]
    operator: str  # "L_tilde" or "L"
    n_range: Tuple[int, int]
    results: Dict[Tuple[int, int], SignPatternResult] = field(default_factory=dict)
    c1_ok: Optional[bool] = None
    c1_failure: Optional[int] = None

    @property
    def c2_ok(self) -> bool:
        return all(r.admissible for r in self.results.values())

    @property
    def overall(self) -> bool:
        ok = self.c2_ok
        if self.theorem == "T2.1":
            ok = ok and bool(self.c1_ok)
        return ok

    def violations(self) -> List[Tuple[int, int, SignPatternResult]]:
        """Failing (n, t) cells in lexicographic order."""
        return [(n, t, r) for (n, t), r in sorted(self.results.items()) if not r.admissible]

    @property
    def first_violation(self) -> Optional[Tuple[int, int, SignPatternResult]]:
        bad = self.violations()
        return bad[0] if bad else None


def _rows(tri: Triangle, ns: List[int], operator: str, full_range: bool):
    out = []
    for n in ns:
        t_max = 2 * n if full_range else n
        for t in range(t_max + 1):
            out.append(((n, t), sign_pattern(L_row(tri, n, t, operator))))
    return out


def _collect(tri: Triangle, n_max: int, operator: str, full_range: bool, parallel: bool):
    ns = list(range(1, n_max + 1))
    chunks = chunked(ns, 5)
    results: Dict[Tuple[int, int], SignPatternResult] = {}
    for part in ordered_map(_rows, [(tri, c, operator, full_range) for c in chunks], parallel):
        results.update(part)
    return dict(sorted(results.items()))


def check_theorem11(tri: Triangle, n_max: int, parallel: bool = False) -> CriterionReport:
    """Sign pattern of L~_t(a(n,k)) for 1 <= n <= n_max, 0 <= t <= 2n."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    tri.require_rows(n_max + 1)
    report = CriterionReport("T1.1", tri.name, None, "L_tilde", (1, n_max))
    report.results = _collect(tri, n_max, "tilde", True, parallel)
    return report


def check_theorem21(spec: PolySeqSpec, n_max: int, parallel: bool = False) -> CriterionReport:
    """C1 for 0 <= n <= n_max + 1 and C2 for 1 <= n <= n_max, 0 <= t <= n."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    tri = spec.triangle
    tri.require_rows(n_max + 1)
    report = CriterionReport("T2.1", tri.name, spec.weights.name, "L", (1, n_max))
    report.c1_ok = True
    for n in range(n_max + 2):
        g = gen_poly(spec, n)
        if g.degree != n or not is_self_reciprocal(g, n):
            report.c1_ok = False
            report.c1_failure = n
            break
    report.results = _collect(tri, n_max, "L", False, parallel)
    return report
