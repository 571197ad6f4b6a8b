"""Named polynomials behind the q-log-convexity proof for S_n(q), and checks on them.

Three kinds of checks live here:

* symbolic identities (derivative factorizations, closed-form evaluations),
  compared as expanded canonical :class:`MultiPoly` forms;
* the two product factorizations of L_t, checked exactly at every integer
  grid point (binomials are not polynomials, so there is nothing to expand);
* pointwise sign claims, evaluated exactly on integer grids.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .arith import MultiPoly, Scalar, binomial, mp_eval, poly_in_x, sign
from .criteria import sign_pattern
from .operators import L_mod
from .parallel import chunked, ordered_map
from .report import Section
from .sequences import builtin_triangle

n, t, x = MultiPoly.gens()
half = Fraction(1, 2)


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NamedPoly:
    name: str
    poly: MultiPoly
    roles: Tuple[str, ...]
    description: str = ""

    def __call__(self, n=0, t=0, x=0) -> Scalar:
        return mp_eval(self.poly, n, t, x)


def _phi() -> MultiPoly:
    return (
        (n + 1) * (n - x) * (n - x + 1)
        + (n + 1) * (n - t + x) * (n - t + x + 1)
        - 2 * n * (n - x + 1) * (n - t + x + 1)
    )


def _psi() -> MultiPoly:
    return (
        (n + 1) * (n - x) ** 2 * (n - x + 1) ** 2 * (2 * n - 2 * t + 2 * x + 1) * (2 * n - 2 * t + 2 * x - 1)
        + (n + 1) * (n - t + x) ** 2 * (n - t + x + 1) ** 2 * (2 * n - 2 * x - 1) * (2 * n - 2 * x + 1)
        - 2 * n * (n - x + 1) ** 2 * (n - t + x + 1) ** 2 * (2 * n - 2 * x - 1) * (2 * n - 2 * t + 2 * x - 1)
    )


def _theta() -> MultiPoly:
    return (
        (4 * n**2 - 1) * x**4
        - 2 * (2 * n - 1) * (2 * n**2 + 2 * n + 1) * x**3
        + (4 * n**4 + 8 * n**3 + 8 * n**2 - 1) * x**2
        - 2 * n * (n + 1) * (2 * n**2 + 4 * n - 1) * x
        + 2 * n * (2 * n - 1) * (n + 1) ** 2
    )


def _theta1() -> MultiPoly:
    return 2 * (1 - 4 * n**2) * x**2 + (2 * n - 1) * (2 * n**2 + 4 * n + 3) * x - (2 * n**3 + 6 * n**2 + 3 * n - 1)


def _theta2() -> MultiPoly:
    return -4 * (2 * n + 1) * x + (2 * n**2 + 4 * n + 3)


def _psi1() -> MultiPoly:
    return (
        12 * (2 * n + 1) * x**4
        - 24 * t * (2 * n + 1) * x**3
        - 2 * (16 * n**3 - 8 * (2 * t - 1) * n**2 - 2 * (7 * t**2 + 3 * t + 1) * n - (8 * t**2 - 4 * t + 3)) * x**2
        + 2 * t * (16 * n**3 - 8 * (2 * t - 1) * n**2 - 2 * (t**2 + 3 * t + 1) * n - (2 * t**2 - 4 * t + 3)) * x
        + (
            8 * n**5
            - 4 * (4 * t - 1) * n**4
            + 4 * (t**2 - t - 3) * n**3
            + 4 * (-(t**2) + 5 * t + t**3 - 2) * n**2
            + (4 * t**3 - 10 * t**2 - 1 + 11 * t) * n
            - (2 * t**2 - 3 * t + 1)
        )
    )


def _psi2() -> MultiPoly:
    return (
        12 * (2 * n + 1) * x**2
        - 12 * t * (2 * n + 1) * x
        - 16 * n**3
        + 8 * (2 * t - 1) * n**2
        + 2 * (t**2 + 3 * t + 1) * n
        + (2 * t**2 - 4 * t + 3)
    )


def _xi() -> MultiPoly:
    return (
        4 * n * t**3
        + 2 * (2 * n**2 - 4 * n - 1) * t**2
        - (16 * n**3 - 12 * n**2 - 8 * n - 3) * t
        + (8 * n**4 - 4 * n**3 - 8 * n**2 - 1)
    )


def _eta() -> MultiPoly:
    return 2 * (n + 1) * t**2 + 2 * (8 * n**2 + 3 * n - 2) * t - (2 * n - 1) * (8 * n**2 + 8 * n + 3)


def _psi_nn() -> MultiPoly:
    return (
        8 * (2 * n + 1) * x**6
        - 24 * n * (2 * n + 1) * x**5
        + 2 * (26 * n**3 - 2 * n + 12 * n**2 + 3) * x**4
        - 4 * n * (3 + 6 * n**3 + 2 * n**2 - 2 * n) * x**3
        + 2 * (4 * n**2 + 2 * n - 1 - 4 * n**3 + 2 * n**5) * x**2
        + 2 * n * (n - 1) * (2 * n - 1) * (n + 1) * x
        - n * (n - 1) * (n - 2) * (n + 1) ** 2
    )


def _psi1_nn() -> MultiPoly:
    return (
        12 * (1 + 2 * n) * x**4
        - 24 * n * (1 + 2 * n) * x**3
        + 2 * (6 * n**2 - 2 * n + 3 + 14 * n**3) * x**2
        - 2 * n * (2 * n**3 + 3 - 2 * n) * x
        - (n - 1) * (2 * n - 1) * (n + 1)
    )


def _psi2_nn() -> MultiPoly:
    return 12 * (1 + 2 * n) * x**2 - 12 * n * (1 + 2 * n) * x + 2 * n**3 + 3 - 2 * n


_BUILDERS: Dict[str, Tuple[Callable[[], MultiPoly], Tuple[str, ...], str]] = {
    "phi": (_phi, ("n", "t", "x"), "sign factor of L_t(C(n,k))"),
    "psi": (_psi, ("n", "t", "x"), "sign factor of L_t(a(n,k)) for the S_n triangle"),
    "theta": (_theta, ("n", "x"), "sign factor of L_t(a(n,0)), as a polynomial in x = t"),
    "theta1": (_theta1, ("n", "x"), "theta'(x) / (2(n - x))"),
    "theta2": (_theta2, ("n", "x"), "theta1'(x) / (2n - 1)"),
    "psi1": (_psi1, ("n", "t", "x"), "psi'(x) / (2(2x - t))"),
    "psi2": (_psi2, ("n", "t", "x"), "psi1'(x) / (2(2x - t))"),
    "xi": (_xi, ("n", "t"), "psi1(0) / (n + 1), in t"),
    "eta": (_eta, ("n", "t"), "psi2(0), in t"),
    "psi_nn": (_psi_nn, ("n", "x"), "psi at t = n"),
    "psi1_nn": (_psi1_nn, ("n", "x"), "psi_nn'(x) / (2(2x - n))"),
    "psi2_nn": (_psi2_nn, ("n", "x"), "psi1_nn'(x) / (2(2x - n))"),
}

CATALOG_NAMES: Tuple[str, ...] = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def build_named_poly(name: str) -> NamedPoly:
    try:
        builder, roles, desc = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown named polynomial {name!r}; catalog: {list(_BUILDERS)}") from None
    return NamedPoly(name, builder(), roles, desc)


def P(name: str) -> MultiPoly:
    return build_named_poly(name).poly


# ---------------------------------------------------------------------------
# Symbolic identities
# ---------------------------------------------------------------------------


@dataclass
class Equation:
    label: str
    lhs: MultiPoly
    rhs: MultiPoly

    @property
    def difference(self) -> MultiPoly:
        return self.lhs - self.rhs


@dataclass
class IdentityCheck:
    id: str
    description: str
    equations: List[Equation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(eq.lhs == eq.rhs for eq in self.equations)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def first_failure(self) -> Optional[Tuple[str, str]]:
        """(equation label, one differing term) for the first failing equation."""
        for eq in self.equations:
            diff = eq.difference
            if not diff.is_zero():
                exps, coef = diff.sorted_terms()[0]
                return eq.label, str(MultiPoly({exps: coef}))
        return None


def _d(p: MultiPoly, var: str = "x", order: int = 1) -> MultiPoly:
    return p.derivative(var, order)


def _at(p: MultiPoly, var: str, value) -> MultiPoly:
    return p.subs(var, value)


def _id_a():
    return [
        Equation("d/dx phi = (4n+2)(2x-t)", _d(P("phi")), (4 * n + 2) * (2 * x - t)),
        Equation("phi(0) = (n+1)(t^2-t)", _at(P("phi"), "x", 0), (n + 1) * (t**2 - t)),
    ]


def _id_b():
    return [Equation("d/dx psi = 2(2x-t) psi1", _d(P("psi")), 2 * (2 * x - t) * P("psi1"))]


def _id_c():
    return [Equation("d/dx psi1 = 2(2x-t) psi2", _d(P("psi1")), 2 * (2 * x - t) * P("psi2"))]


def _id_d():
    return [Equation("theta(n) = -n(n-1)(n-2)(n+1)", _at(P("theta"), "x", n), -n * (n - 1) * (n - 2) * (n + 1))]


def _id_e():
    return [
        Equation("theta' = 2(n-x) theta1", _d(P("theta")), 2 * (n - x) * P("theta1")),
        Equation("theta1' = (2n-1) theta2", _d(P("theta1")), (2 * n - 1) * P("theta2")),
    ]


def _id_f():
    th = P("theta")
    return [
        Equation("theta(0)", _at(th, "x", 0), 2 * n * (2 * n - 1) * (n + 1) ** 2),
        Equation("theta(1)", _at(th, "x", 1), 2 * n**2 * (2 * n - 1) * (n - 1)),
        Equation("theta(2)", _at(th, "x", 2), 2 * (n - 2) * (6 * n**3 - 13 * n**2 + 1)),
        Equation("theta(n-1)", _at(th, "x", n - 1), -4 + 8 * n + 3 * n**4 - 10 * n**3 + 11 * n**2),
    ]


def _id_g():
    th1, th2 = P("theta1"), P("theta2")
    return [
        Equation("theta1(0)", _at(th1, "x", 0), 1 - 2 * n**3 - 6 * n**2 - 3 * n),
        Equation("theta1(1)", _at(th1, "x", 1), n * (2 * (n - 2) ** 2 - 9)),
        Equation("theta1(n-1)", _at(th1, "x", n - 1), -4 * n**4 + 16 * n**3 - 16 * n**2 - 12 * n + 6),
        Equation("theta2(0)", _at(th2, "x", 0), 2 * n**2 + 4 * n + 3),
        Equation("theta2(n-1)", _at(th2, "x", n - 1), -6 * n**2 + 8 * n + 7),
    ]


def _id_h():
    return [
        Equation(
            "psi2(t/2)",
            _at(P("psi2"), "x", half * t),
            -4 * n * (2 * n - t) ** 2 - (4 * n - t - 1) * (2 * n - t) - 3 * (t - 1),
        )
    ]


def _id_i():
    lhs = _at(P("psi1"), "x", half * t)
    expanded = (
        8 * n**5 - 16 * n**4 * t + 12 * n**3 * t**2 - 4 * n**2 * t**3 + half * n * t**4
        + 4 * n**4 - 4 * n**3 * t + n * t**3 - Fraction(1, 4) * t**4
        - 12 * n**3 + 20 * n**2 * t - 11 * n * t**2 + 2 * t**3
        - 8 * n**2 + 11 * n * t - Fraction(7, 2) * t**2 - n + 3 * t - 1
    )
    m = 2 * n - t
    powers = (
        (half * n - Fraction(1, 4)) * m**4
        + (n - 2) * m**3
        + (n - Fraction(7, 2)) * m**2
        + 3 * (n - 1) * m
        + 5 * n
        - 1
    )
    return [
        Equation("psi1(t/2) expanded in n, t", lhs, expanded),
        Equation("psi1(t/2) in powers of (2n-t)", lhs, powers),
    ]


def _id_j():
    lhs = _at(P("psi1"), "x", half * t)
    return [
        Equation(
            "psi1^(2,t)(t/2)",
            _at(lhs, "n", 2),
            Fraction(3, 4) * ((4 - t) ** 2 - 1) ** 2 + 3 * (4 - t) + Fraction(33, 4),
        ),
        Equation(
            "psi1^(3,t)(t/2)",
            _at(lhs, "n", 3),
            Fraction(5, 4) * (6 - t) ** 4 + (Fraction(11, 2) - t) * (6 - t) ** 2 + 6 * (6 - t) + 14,
        ),
    ]


def _id_k():
    return [
        Equation("psi1(0) = (n+1) xi(t)", _at(P("psi1"), "x", 0), (n + 1) * P("xi")),
        Equation("psi2(0) = eta(t)", _at(P("psi2"), "x", 0), P("eta")),
        Equation(
            "psi1(0) expanded form",
            _at(P("psi1"), "x", 0),
            (n + 1)
            * (
                4 * n * t**3
                + 2 * (2 * n**2 - 4 * n - 1) * t**2
                - (16 * n**3 - 12 * n**2 - 8 * n - 3) * t
                + (8 * n**4 - 4 * n**3 - 8 * n**2 - 1)
            ),
        ),
        Equation(
            "psi2(0) expanded form",
            _at(P("psi2"), "x", 0),
            2 * (n + 1) * t**2 + 2 * (8 * n**2 + 3 * n - 2) * t - (2 * n - 1) * (8 * n**2 + 8 * n + 3),
        ),
    ]


def _id_l():
    xi = P("xi")
    d1, d2 = _d(xi, "t"), _d(xi, "t", 2)
    three_quarters_n = Fraction(3, 4) * n
    return [
        Equation(
            "xi(3n/4)",
            _at(xi, "t", three_quarters_n),
            -Fraction(1, 64)
            * (4 * n**2 * (n - 4) ** 2 + 136 * (n - Fraction(9, 17)) ** 2 + Fraction(440, 17)),
        ),
        Equation("xi(n-1)", _at(xi, "t", n - 1), -(4 * n - 18) * n**2 - 13 * n - 6),
        Equation("xi'(t)", d1, 12 * n * t**2 + (8 * n**2 - 16 * n - 4) * t + (12 * n**2 - 16 * n**3 + 8 * n + 3)),
        Equation("xi''(t)", d2, 24 * n * t + (8 * n**2 - 16 * n - 4)),
        Equation("xi''(0)", _at(d2, "t", 0), 8 * (n - 1) ** 2 - 12),
        Equation("xi'(3n/4)", _at(d1, "t", three_quarters_n), -Fraction(13, 4) * n**3 + 5 * n + 3),
    ]


def _id_m():
    eta = P("eta")
    a2, a1 = eta.coefficient("t", 2), eta.coefficient("t", 1)
    # axis -a1/(2 a2) = -(8n^2+3n-2)/(2(n+1)), cross-multiplied
    return [
        Equation("eta(0)", _at(eta, "t", 0), -16 * n**3 - 8 * n**2 + 2 * n + 3),
        Equation(
            "eta(3n/4)",
            _at(eta, "t", Fraction(3, 4) * n),
            -Fraction(23, 8) * n**3 - Fraction(19, 8) * n**2 - n + 3,
        ),
        Equation("axis of symmetry of eta", a1 * 2 * (n + 1), 2 * a2 * (8 * n**2 + 3 * n - 2)),
    ]


def _id_n():
    pnn, p1, p2 = P("psi_nn"), P("psi1_nn"), P("psi2_nn")
    return [
        Equation("psi^(n,n) = closed sextic", _at(P("psi"), "t", n), pnn),
        Equation("d/dx psi_nn = 2(2x-n) psi1_nn", _d(pnn), 2 * (2 * x - n) * p1),
        Equation("d/dx psi1_nn = 2(2x-n) psi2_nn", _d(p1), 2 * (2 * x - n) * p2),
        Equation("psi1_nn(0)", _at(p1, "x", 0), -(n**2) * (n - 1) - n * (n**2 - 2) - 1),
        Equation(
            "psi1_nn(n/2)",
            _at(p1, "x", half * n),
            Fraction(1, 4) * (2 * n**3 * (n**2 - 2) + n**2 * (3 * n**2 - 2) + 4 * (2 * n - 1)),
        ),
        Equation("psi2_nn(0)", _at(p2, "x", 0), 2 * n**3 - 2 * n + 3),
        Equation("psi2_nn(n/2)", _at(p2, "x", half * n), -4 * n**3 - 3 * n**2 - 2 * n + 3),
        Equation("psi_nn(1)", _at(pnn, "x", 1), (n - 1) * ((3 * n - 16) * n**3 + (21 * n**2 + 8 * n - 12))),
        Equation(
            "psi_nn(n/2)",
            _at(pnn, "x", half * n),
            -Fraction(1, 8) * n * (n - 1) * (n**2 - n - 4) * (n + 2) ** 2,
        ),
        Equation("psi^(2,2)(1) = 8", _at(_at(pnn, "n", 2), "x", 1), MultiPoly.const(8)),
    ]


def _id_o():
    return [
        Equation("psi_nn = psi(t := n)", P("psi_nn"), _at(P("psi"), "t", n)),
        Equation("psi1_nn = psi1(t := n)", P("psi1_nn"), _at(P("psi1"), "t", n)),
        Equation("psi2_nn = psi2(t := n)", P("psi2_nn"), _at(P("psi2"), "t", n)),
    ]


IDENTITIES: Dict[str, Tuple[str, Callable[[], List[Equation]]]] = {
    "a": ("derivative of phi and phi(0)", _id_a),
    "b": ("derivative of psi factors through psi1", _id_b),
    "c": ("derivative of psi1 factors through psi2", _id_c),
    "d": ("theta at x = n", _id_d),
    "e": ("derivatives of theta and theta1", _id_e),
    "f": ("theta at 0, 1, 2, n-1", _id_f),
    "g": ("theta1 at 0, 1, n-1 and theta2 at 0, n-1", _id_g),
    "h": ("psi2 at the axis x = t/2", _id_h),
    "i": ("psi1 at x = t/2, both closed forms", _id_i),
    "j": ("psi1(t/2) for n = 2 and n = 3", _id_j),
    "k": ("psi1(0) and psi2(0) in terms of xi and eta", _id_k),
    "l": ("values and derivatives of xi", _id_l),
    "m": ("values and axis of eta", _id_m),
    "n": ("the t = n specialization and its derivatives", _id_n),
    "o": ("psi_nn agrees with substituting t := n", _id_o),
}


def verify_identity(identity_id: str) -> IdentityCheck:
    try:
        desc, build = IDENTITIES[identity_id]
    except KeyError:
        raise KeyError(f"unknown identity {identity_id!r}; catalog: {list(IDENTITIES)}") from None
    return IdentityCheck(identity_id, desc, build())


def identity_section() -> Section:
    checks = [verify_identity(i) for i in IDENTITIES]
    per_id = {}
    witness = None
    for c in checks:
        per_id[c.id] = {"status": c.status, "description": c.description, "equations": len(c.equations)}
        if witness is None and not c.passed:
            label, term = c.first_failure()
            witness = {"id": c.id, "equation": label, "differing_term": term}
    return Section(
        "identities",
        all(c.passed for c in checks),
        counts={"identities": len(checks), "equations": sum(len(c.equations) for c in checks),
                "failed": sum(not c.passed for c in checks)},
        witness=witness,
        details={"catalog": per_id},
    )


# L_t(a(n,0)) for the S_n triangle, n = 1..4 and 0 <= t <= n: reference values
GOLDEN_L_AT_K0: Dict[Tuple[int, int], int] = {
    (1, 0): 4, (1, 1): 0,
    (2, 0): 8, (2, 1): 8, (2, 2): 0,
    (3, 0): 40, (3, 1): 40, (3, 2): 46, (3, 3): 8,
    (4, 0): 280, (4, 1): 336, (4, 2): 472, (4, 3): 332, (4, 4): 60,
}


# ---------------------------------------------------------------------------
# Factorization grids
# ---------------------------------------------------------------------------


def _eq31_rows(ns: List[int]):
    tri = builtin_triangle("binomial")
    phi = P("phi")
    checked, bad = 0, None
    for nn in ns:
        for tt in range(2 * nn + 1):
            phi_x = poly_in_x(phi, nn, tt)
            for k in range(tt // 2 + 1):
                lhs = L_mod(tri, nn, tt, k)
                rhs = Fraction(
                    binomial(nn, k) * binomial(nn + 1, tt - k) * phi_x(k),
                    nn * (nn + 1) * (nn - k + 1),
                )
                checked += 1
                if lhs != rhs and bad is None:
                    bad = (nn, tt, k, lhs, rhs)
    return checked, 0, bad


def _eq32_rows(ns: List[int]):
    tri = builtin_triangle("sun_a")
    psi = P("psi")
    checked, skipped, bad = 0, 0, None
    for nn in ns:
        for tt in range(nn + 1):
            psi_x = poly_in_x(psi, nn, tt)
            for k in range(tt // 2 + 1):
                odd1, odd2 = 2 * nn - 2 * k - 1, 2 * nn - 2 * tt + 2 * k - 1
                assert odd1 % 2 and odd2 % 2  # odd, hence never zero
                den = nn * (nn - k + 1) ** 2 * (nn - tt + k + 1) ** 2 * odd1 * odd2
                if den == 0:
                    skipped += 1
                    continue
                num = (
                    binomial(nn, k)
                    * binomial(2 * nn - 2 * k, nn - k)
                    * binomial(nn, tt - k)
                    * binomial(2 * nn - 2 * tt + 2 * k, nn - tt + k)
                    * psi_x(k)
                )
                lhs = L_mod(tri, nn, tt, k)
                checked += 1
                if lhs != Fraction(num, den) and bad is None:
                    bad = (nn, tt, k, lhs, Fraction(num, den))
    return checked, skipped, bad


def _theta_rows(ns: List[int]):
    tri = builtin_triangle("sun_a")
    theta = P("theta")
    checked, bad = 0, None
    for nn in ns:
        th = poly_in_x(theta, nn, 0)
        for tt in range(nn + 1):
            rhs = Fraction(
                binomial(2 * nn, nn) * binomial(nn, tt) * binomial(2 * nn - 2 * tt, nn - tt) * th(tt),
                nn * (nn + 1) * (2 * nn - 1) * (nn - tt + 1) ** 2 * (2 * nn - 2 * tt - 1),
            )
            lhs = L_mod(tri, nn, tt, 0)
            checked += 1
            if lhs != rhs and bad is None:
                bad = (nn, tt, 0, lhs, rhs)
    return checked, 0, bad


_GRIDS = {
    "eq31": (_eq31_rows, "L_t(C(n,k)) = C(n,k) C(n+1,t-k) phi(k) / (n(n+1)(n-k+1)), 0<=t<=2n"),
    "eq32": (_eq32_rows, "L_t(a(n,k)) = binomial product * psi(k) / denominator, 0<=t<=n"),
    "theta": (_theta_rows, "L_t(a(n,0)) = binomial product * theta(t) / denominator, 0<=t<=n"),
}


def grid_verify_factorization(which: str, n_max: int, parallel: bool = False) -> Section:
    """Check one of the L_t factorizations exactly at every integer point with n <= n_max."""
    try:
        fn, desc = _GRIDS[which]
    except KeyError:
        raise KeyError(f"unknown factorization {which!r}; expected one of {list(_GRIDS)}") from None
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    chunks = chunked(list(range(1, n_max + 1)), 5)
    checked = skipped = 0
    bad = None
    for c, s, b in ordered_map(fn, [(ch,) for ch in chunks], parallel):
        checked += c
        skipped += s
        if bad is None and b is not None:
            bad = b
    witness = None
    if bad is not None:
        nn, tt, k, lhs, rhs = bad
        witness = {"n": nn, "t": tt, "k": k, "lhs": lhs, "rhs": rhs}
    return Section(
        f"factorization_{which}",
        bad is None,
        counts={"n_max": n_max, "points": checked, "skipped_degenerate": skipped},
        witness=witness,
        details={"identity": desc},
    )


# ---------------------------------------------------------------------------
# Sign claims on integer grids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignClaim:
    id: str
    description: str
    points: Callable[[int], Iterable[Tuple[int, int]]]  # n_max -> (n, t) grid
    value: Callable[[int, int], Scalar]
    expected_sign: int  # +1: > 0, -1: < 0


def _ev(name: str, **point) -> Scalar:
    return mp_eval(P(name), **point)


def _grid(n_lo: int, t_range: Callable[[int], Iterable[int]]):
    def gen(n_max: int):
        for nn in range(n_lo, n_max + 1):
            for tt in t_range(nn):
                yield nn, tt
    return gen


def _only_n(n_lo: int):
    return _grid(n_lo, lambda nn: (0,))


def _ceil_frac(num: int, den: int) -> int:
    return -((-num) // den)


SIGN_CLAIMS: Tuple[SignClaim, ...] = (
    SignClaim("theta_pos", "theta(t) > 0 for n >= 5, 0 <= t <= n-1",
              _grid(5, lambda nn: range(nn)), lambda nn, tt: _ev("theta", n=nn, x=tt), 1),
    SignClaim("theta_at_n_neg", "theta(n) < 0 for n >= 5",
              _only_n(5), lambda nn, tt: _ev("theta", n=nn, x=nn), -1),
    SignClaim("theta2_0_pos", "theta2(0) > 0 for n >= 5",
              _only_n(5), lambda nn, tt: _ev("theta2", n=nn, x=0), 1),
    SignClaim("theta2_nm1_neg", "theta2(n-1) < 0 for n >= 5",
              _only_n(5), lambda nn, tt: _ev("theta2", n=nn, x=nn - 1), -1),
    SignClaim("theta1_0_neg", "theta1(0) < 0 for n >= 5",
              _only_n(5), lambda nn, tt: _ev("theta1", n=nn, x=0), -1),
    SignClaim("theta1_1_pos", "theta1(1) > 0 for n >= 5",
              _only_n(5), lambda nn, tt: _ev("theta1", n=nn, x=1), 1),
    SignClaim("theta1_nm1_neg", "theta1(n-1) < 0 for n >= 5",
              _only_n(5), lambda nn, tt: _ev("theta1", n=nn, x=nn - 1), -1),
    SignClaim("theta_0_gt_1", "theta(0) > theta(1) for n >= 5",
              _only_n(5), lambda nn, tt: _ev("theta", n=nn, x=0) - _ev("theta", n=nn, x=1), 1),
    SignClaim("theta_2_gt_1", "theta(2) > theta(1) for n >= 5",
              _only_n(5), lambda nn, tt: _ev("theta", n=nn, x=2) - _ev("theta", n=nn, x=1), 1),
    SignClaim("theta_2_gt_nm1", "theta(2) > theta(n-1) for n >= 5",
              _only_n(5), lambda nn, tt: _ev("theta", n=nn, x=2) - _ev("theta", n=nn, x=nn - 1), 1),
    SignClaim("psi2_half_neg", "psi2(t/2) < 0 for n >= 1, 0 <= t < n",
              _grid(1, lambda nn: range(nn)), lambda nn, tt: _ev("psi2", n=nn, t=tt, x=Fraction(tt, 2)), -1),
    SignClaim("psi1_half_pos", "psi1(t/2) > 0 for n >= 2, 0 <= t < n",
              _grid(2, lambda nn: range(nn)), lambda nn, tt: _ev("psi1", n=nn, t=tt, x=Fraction(tt, 2)), 1),
    SignClaim("claim1_psi2_0_neg", "psi2(0) < 0 for (n,t) in {(2,0),(2,1),(3,0),(3,1),(3,2)}",
              lambda n_max: [(2, 0), (2, 1), (3, 0), (3, 1), (3, 2)],
              lambda nn, tt: _ev("psi2", n=nn, t=tt, x=0), -1),
    SignClaim("claim2_xi_neg", "xi(t) < 0 for n >= 4, integer t in [3n/4, n-1]",
              _grid(4, lambda nn: range(_ceil_frac(3 * nn, 4), nn)), lambda nn, tt: _ev("xi", n=nn, t=tt), -1),
    SignClaim("claim2_xi2_0_pos", "xi''(0) > 0 for n >= 4",
              _only_n(4), lambda nn, tt: 8 * (nn - 1) ** 2 - 12, 1),
    SignClaim("claim2_xi1_3n4_neg", "xi'(3n/4) < 0 for n >= 4",
              _only_n(4), lambda nn, tt: mp_eval(P("xi").derivative("t"), n=nn, t=Fraction(3 * nn, 4)), -1),
    SignClaim("claim3_eta_neg", "eta(t) < 0 for n >= 2, integer t in [0, 3n/4]",
              _grid(2, lambda nn: range(3 * nn // 4 + 1)), lambda nn, tt: _ev("eta", n=nn, t=tt), -1),
    SignClaim("psi2_nn_0_pos", "psi2_nn(0) > 0 for n >= 3",
              _only_n(3), lambda nn, tt: _ev("psi2_nn", n=nn, x=0), 1),
    SignClaim("psi2_nn_half_neg", "psi2_nn(n/2) < 0 for n >= 3",
              _only_n(3), lambda nn, tt: _ev("psi2_nn", n=nn, x=Fraction(nn, 2)), -1),
    SignClaim("psi1_nn_0_neg", "psi1_nn(0) < 0 for n >= 3",
              _only_n(3), lambda nn, tt: _ev("psi1_nn", n=nn, x=0), -1),
    SignClaim("psi1_nn_half_pos", "psi1_nn(n/2) > 0 for n >= 3",
              _only_n(3), lambda nn, tt: _ev("psi1_nn", n=nn, x=Fraction(nn, 2)), 1),
    SignClaim("psi_nn_1_pos", "psi_nn(1) > 0 for n >= 3",
              _only_n(3), lambda nn, tt: _ev("psi_nn", n=nn, x=1), 1),
    SignClaim("psi_nn_half_neg", "psi_nn(n/2) < 0 for n >= 3",
              _only_n(3), lambda nn, tt: _ev("psi_nn", n=nn, x=Fraction(nn, 2)), -1),
    SignClaim("psi_22_1", "psi^(2,2)(1) = 8 > 0 (the n = 2 case)",
              lambda n_max: [(2, 2)], lambda nn, tt: _ev("psi", n=2, t=2, x=1), 1),
)


def _run_claim(claim: SignClaim, n_max: int) -> Section:
    checked, violations, first = 0, 0, None
    for nn, tt in claim.points(n_max):
        v = claim.value(nn, tt)
        checked += 1
        if sign(v) != claim.expected_sign:
            violations += 1
            if first is None:
                first = {"n": nn, "t": tt, "value": v}
    return Section(
        f"sign_{claim.id}",
        violations == 0,
        counts={"n_max": n_max, "points": checked, "violations": violations},
        witness=first,
        details={"claim": claim.description},
    )


def grid_verify_sign_claims(n_max: int = 200, claims: Optional[Iterable[str]] = None) -> List[Section]:
    """Evaluate each pointwise sign claim exactly on its integer range up to ``n_max``."""
    if n_max < 5:
        raise ValueError(f"sign claims need n_max >= 5, got {n_max}")
    wanted = set(claims) if claims is not None else None
    return [_run_claim(c, n_max) for c in SIGN_CLAIMS if wanted is None or c.id in wanted]


# ---------------------------------------------------------------------------
# Bridges between L_t(a(n,k)) and psi on integers
# ---------------------------------------------------------------------------


def bridge_sign_consistency(n_max: int = 20) -> Section:
    """sign L_t(a(n,k)) = sign(prefactor) * sign psi(n,t,k) for 1 <= n <= n_max, t <= n.

    For k >= 1 the prefactor is positive, so the signs coincide outright; at
    k = 0, t = n the factor 2n-2t+2k-1 = -1 flips it.
    """
    tri = builtin_triangle("sun_a")
    psi = P("psi")
    checked, first, direct = 0, None, 0
    for nn in range(1, n_max + 1):
        for tt in range(nn + 1):
            psi_x = poly_in_x(psi, nn, tt)
            for k in range(tt // 2 + 1):
                lv, pv = L_mod(tri, nn, tt, k), psi_x(k)
                pre = sign((2 * nn - 2 * k - 1) * (2 * nn - 2 * tt + 2 * k - 1))
                checked += 1
                if k >= 1:
                    direct += 1
                if sign(lv) != pre * sign(pv) or (k >= 1 and pre != 1):
                    if first is None:
                        first = {"n": nn, "t": tt, "k": k, "L": lv, "psi": pv}
    return Section(
        "bridge_sign_L_vs_psi",
        first is None,
        counts={"n_max": n_max, "points": checked, "points_k_ge_1": direct},
        witness=first,
    )


def bridge_sign_pattern(n_max: int = 20) -> Section:
    """[psi^(n,t)(k)]_{k=1..t/2} has a single sign change for 2 <= n <= n_max, t <= n-1."""
    psi = P("psi")
    rows, first = 0, None
    for nn in range(2, n_max + 1):
        for tt in range(nn):
            if tt < 2:
                continue
            psi_x = poly_in_x(psi, nn, tt)
            res = sign_pattern([psi_x(k) for k in range(1, tt // 2 + 1)])
            rows += 1
            if not res.admissible and first is None:
                first = {"n": nn, "t": tt, "violation": list(res.violation)}
    return Section(
        "bridge_sign_pattern_psi",
        first is None,
        counts={"n_max": n_max, "rows": rows},
        witness=first,
    )
