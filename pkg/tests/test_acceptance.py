"""Acceptance criteria 1-10, one test each.

Every test records a ``PASS``/``FAIL`` line that is printed in the terminal
summary, so ``pytest tests/test_acceptance.py`` doubles as a scorecard.
"""
import contextlib
import json
import random
import time

import pytest

from conftest import ACCEPTANCE_LINES, comb0, write_csv
from qlogconvex.cli import run_cli
from qlogconvex.convexity import coeff_B, direct_coefficient, is_log_convex, is_q_log_convex_upto
from qlogconvex.criteria import check_theorem11, check_theorem21
from qlogconvex.identities import (
    P,
    GOLDEN_L_AT_K0,
    grid_verify_factorization,
    identity_section,
    verify_identity,
)
from qlogconvex.arith import MultiPoly, mp_eval
from qlogconvex.operators import L_mod
from qlogconvex.report import strip_timestamps
from qlogconvex.sequences import (
    PolySeqSpec,
    TRIANGLES,
    WEIGHTS,
    builtin_triangle,
    builtin_weights,
    gen_poly,
    load_triangle_csv,
    make_spec,
)

# runtime budgets, seconds
GOLDEN_BUDGET = 1.0
QLC_BUDGET = 120.0
C1_BUDGET = 5.0
IDENTITY_BUDGET = 5.0

GOLDEN = [4, 0, 8, 8, 0, 40, 40, 46, 8, 280, 336, 472, 332, 60]


@contextlib.contextmanager
def criterion(number, label):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        line = f"criterion {number:2d}: {status}  {label}  ({time.perf_counter() - start:.2f}s)"
        ACCEPTANCE_LINES.append(line)
        print(line)


def test_criterion_01_golden_table():
    with criterion(1, "golden L_t(a(n,0)) table, 14 values, exact"):
        start = time.perf_counter()
        tri = builtin_triangle("sun_a")
        got = [L_mod(tri, n, t, 0) for n in range(1, 5) for t in range(n + 1)]
        elapsed = time.perf_counter() - start
        assert got == GOLDEN
        assert list(GOLDEN_L_AT_K0.values()) == GOLDEN
        assert elapsed < GOLDEN_BUDGET


def test_criterion_02_sun_q_log_convex_to_100():
    with criterion(2, "S_{n-1}S_{n+1} - S_n^2 >= 0 coefficientwise, 1 <= n <= 99"):
        start = time.perf_counter()
        verdict = is_q_log_convex_upto(make_spec("sun_a", "central_binomial"), 100)
        elapsed = time.perf_counter() - start
        assert verdict.holds and verdict.checked == 99
        assert elapsed < QLC_BUDGET


def test_criterion_03_unweighted_q_log_convex_to_100():
    with criterion(3, "f_n (sun_a + ones) q-log-convex, n_max = 100"):
        start = time.perf_counter()
        verdict = is_q_log_convex_upto(make_spec("sun_a", "ones"), 100)
        elapsed = time.perf_counter() - start
        assert verdict.holds and verdict.checked == 99
        assert elapsed < QLC_BUDGET


def test_criterion_04_self_reciprocal_to_200():
    with criterion(4, "S_n self-reciprocal, 0 <= n <= 200"):
        start = time.perf_counter()
        spec = make_spec("sun_a", "central_binomial")
        for n in range(201):
            c = gen_poly(spec, n).coeffs
            assert len(c) == n + 1 and c == c[::-1], n
        assert time.perf_counter() - start < C1_BUDGET


def test_criterion_05_sign_patterns():
    with criterion(5, "sign patterns: L on sun_a (t <= n) and L-tilde on binomial (t <= 2n), n <= 50"):
        rep = check_theorem21(make_spec("sun_a", "central_binomial"), 50)
        assert rep.c1_ok and rep.c2_ok and not rep.violations()
        assert len(rep.results) == sum(n + 1 for n in range(1, 51))
        rep = check_theorem11(builtin_triangle("binomial"), 50)
        assert rep.overall and not rep.violations()
        assert len(rep.results) == sum(2 * n + 1 for n in range(1, 51))


def test_criterion_06_identity_catalog():
    with criterion(6, "identity catalog (a)-(o) by canonical-form equality"):
        start = time.perf_counter()
        sec = identity_section()
        n, t, x = MultiPoly.gens()
        assert sec.passed and sec.counts["identities"] == 15
        labels = {eq.label for eq in verify_identity("n").equations}
        assert {"psi^(2,2)(1) = 8", "psi_nn(n/2)"} <= labels
        assert verify_identity("d").passed and verify_identity("o").passed
        assert mp_eval(P("psi"), n=2, t=2, x=1) == 8
        assert P("theta").subs("x", n) == -n * (n - 1) * (n - 2) * (n + 1)
        assert time.perf_counter() - start < IDENTITY_BUDGET


def test_criterion_07_factorization_grids():
    with criterion(7, "factorization grids, every integer point with n <= 50"):
        eq31 = grid_verify_factorization("eq31", 50)
        eq32 = grid_verify_factorization("eq32", 50)
        for sec in (eq31, eq32):
            assert sec.passed, sec.witness
            assert sec.counts["skipped_degenerate"] == 0
        assert eq31.counts["points"] == sum((t // 2 + 1) for n in range(1, 51) for t in range(2 * n + 1))
        assert eq32.counts["points"] == sum((t // 2 + 1) for n in range(1, 51) for t in range(n + 1))


def _expanded_coefficients(n):
    """Coefficients of S_{n-1}S_{n+1} - S_n^2 by direct double loops."""
    def s(m):
        return [comb0(m, k) * comb0(2 * k, k) * comb0(2 * m - 2 * k, m - k) for k in range(m + 1)]

    lo, mid, hi = s(n - 1), s(n), s(n + 1)
    out = [0] * (2 * n + 1)
    for i, a in enumerate(lo):
        for j, b in enumerate(hi):
            out[i + j] += a * b
    for i, a in enumerate(mid):
        for j, b in enumerate(mid):
            out[i + j] -= a * b
    return out


def test_criterion_08_oracle_equivalence():
    with criterion(8, "L-sum coefficients equal direct expansion, n <= 50, B(n,t) = B(n,2n-t)"):
        spec = make_spec("sun_a", "central_binomial")
        for n in range(1, 51):
            direct = _expanded_coefficients(n)
            for t in range(2 * n + 1):
                b = coeff_B(spec, n, t)
                assert b == direct[t] == direct_coefficient(spec, n, t), (n, t)
                assert b == coeff_B(spec, n, 2 * n - t), (n, t)


def _log_convex_scale(rng):
    """c_n = a^n b^C(n,2); multiplying a q-log-convex sequence by it keeps the property."""
    a, b = rng.randint(1, 3), rng.randint(1, 2)
    return [a**n * b ** (n * (n - 1) // 2) for n in range(13)]


def _random_triangles(rng, count):
    """Positive triangles with n <= 12 from four families, paired with weight names.

    Families 0 and 1 satisfy every hypothesis by construction, so they exercise
    the implication; families 2 and 3 are unstructured and mostly probe the
    guard rails.
    """
    out = []
    for i in range(count):
        family = i % 4
        if family == 0:
            c = _log_convex_scale(rng)
            entries = {(n, k): c[n] * comb0(n, k) * comb0(2 * n - 2 * k, n - k)
                       for n in range(13) for k in range(n + 1)}
            weights = "central_binomial"
        elif family == 1:
            c, m = _log_convex_scale(rng), rng.randint(1, 2)
            entries = {(n, k): c[n] * comb0(n, k) ** m for n in range(13) for k in range(n + 1)}
            weights = "ones"
        elif family == 2:
            # a(n,k) u_k = c_n b(n,k) C(2k,k) C(2n-2k,n-k) with b palindromic
            entries = {}
            for n in range(13):
                cn = rng.randint(1, 5)
                half = [rng.randint(1, 6) for _ in range(n // 2 + 1)]
                for k in range(n + 1):
                    entries[(n, k)] = cn * half[min(k, n - k)] * comb0(2 * n - 2 * k, n - k)
            weights = "central_binomial"
        else:
            entries = {}
            for n in range(13):
                half = [rng.randint(1, 9) for _ in range(n // 2 + 1)]
                for k in range(n + 1):
                    entries[(n, k)] = half[min(k, n - k)]
            weights = "ones"
        out.append((entries, weights))
    return out


def _sound(spec, n_max):
    """False only when the criterion and log-convex weights hold but the conclusion fails."""
    if not check_theorem21(spec, n_max - 1).overall:
        return True, False
    if not is_log_convex(spec.weights.values(n_max + 1)).holds:
        return True, False
    unweighted = PolySeqSpec(spec.triangle, builtin_weights("ones"))
    if not is_q_log_convex_upto(unweighted, n_max).holds:
        return True, False
    return is_q_log_convex_upto(spec, n_max).holds, True


def test_criterion_09_soundness(tmp_path):
    with criterion(9, "soundness over builtin specs and 24 random CSV triangles (n <= 12)"):
        instances = [make_spec(t, w) for t in TRIANGLES for w in WEIGHTS]
        rng = random.Random(20240601)
        for i, (entries, weights) in enumerate(_random_triangles(rng, 24)):
            path = write_csv(tmp_path / f"rand{i}.csv", entries)
            instances.append(PolySeqSpec(load_triangle_csv(path), builtin_weights(weights)))
        applicable = 0
        for spec in instances:
            ok, applied = _sound(spec, 11)
            applicable += applied
            assert ok, spec.name
        assert len(instances) >= 20 + len(TRIANGLES) * len(WEIGHTS)
        # the structured families must actually reach the conclusion check
        assert applicable >= 12


def _cli_report(tmp_path, argv, name):
    out = tmp_path / name
    code = run_cli([*argv, "--out", str(out)])
    return code, strip_timestamps(json.loads(out.read_text(encoding="utf-8")))


@pytest.mark.parametrize("argv", [
    ["verify-sun", "--max-n", "100"],
    ["check-c2", "--max-n", "50"],
    ["check-c2", "--max-n", "50", "--triangle", "binomial", "--criterion", "1.1"],
    ["identities", "--max-n", "50"],
], ids=["criterion2", "criterion5-L", "criterion5-Ltilde", "criterion7"])
def test_criterion_10_parallel_matches_sequential(argv, tmp_path, monkeypatch, capsys):
    with criterion(10, f"parallel == sequential report for '{' '.join(argv)}'"):
        monkeypatch.setenv("QLOGCONVEX_JOBS", "2")
        code_s, seq = _cli_report(tmp_path, argv, "seq.json")
        code_p, par = _cli_report(tmp_path, [*argv, "--parallel"], "par.json")
        assert code_s == code_p == 0
        assert seq == par
