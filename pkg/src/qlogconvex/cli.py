"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for usage,
configuration or I/O errors.  Set ``QLOGCONVEX_JOBS`` to bound the number of
worker processes used with ``--parallel``.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import __version__
from .convexity import is_log_convex, is_q_log_concave_upto, is_q_log_convex_upto, is_self_reciprocal
from .criteria import CriterionReport, check_theorem11, check_theorem21
from .identities import (
    GOLDEN_L_AT_K0,
    bridge_sign_consistency,
    bridge_sign_pattern,
    grid_verify_factorization,
    grid_verify_sign_claims,
    identity_section,
)
from .operators import L_mod
from .report import Report, Section, write_report
from .sequences import (
    TRIANGLES,
    WEIGHTS,
    PolySeqSpec,
    TriangleFormatError,
    builtin_triangle,
    gen_poly,
    make_spec,
    write_triangle_csv,
)

log = logging.getLogger("qlogconvex")

COMMANDS = ("verify-sun", "check-c1", "check-c2", "identities", "qlc", "seq")
DEFAULT_MAX_N = {"verify-sun": 100, "check-c1": 50, "check-c2": 50, "identities": 50, "qlc": 50, "seq": 10}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    triangle: str = "sun_a"
    weights: str = "central_binomial"
    n_max: int = 50
    parallel: bool = False
    out: Optional[str] = None
    criterion: str = "2.1"
    sign_max_n: int = 200
    bridge_max_n: int = 20
    concave: bool = False
    csv: Optional[str] = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.n_max < 1:
            raise ConfigError(f"--max-n must be a positive integer, got {self.n_max}")
        if self.weights not in WEIGHTS:
            raise ConfigError(f"unknown weights {self.weights!r}; builtins: {sorted(WEIGHTS)}")

    def echo(self) -> dict:
        """Config fields that affect results; execution knobs are left out."""
        out = {"command": self.command, "triangle": self.triangle, "weights": self.weights, "n_max": self.n_max}
        if self.command == "check-c2":
            out["criterion"] = self.criterion
        if self.command == "identities":
            out["sign_max_n"] = self.sign_max_n
            out["bridge_max_n"] = self.bridge_max_n
        if self.command == "qlc":
            out["mode"] = "concave" if self.concave else "convex"
        return out


# ---------------------------------------------------------------------------
# Sections
# ---------------------------------------------------------------------------


def qlc_section(spec: PolySeqSpec, n_max: int, parallel: bool, concave: bool = False) -> Section:
    check = is_q_log_concave_upto if concave else is_q_log_convex_upto
    verdict = check(spec, n_max, parallel=parallel)
    witness = None
    if not verdict.holds:
        witness = {"n": verdict.n, "t": verdict.t, "coefficient": verdict.coefficient}
    kind = "q_log_concave" if concave else "q_log_convex"
    return Section(
        f"{kind}[{spec.name}]",
        verdict.holds,
        counts={"n_max": n_max, "differences_checked": verdict.checked},
        witness=witness,
    )


def self_reciprocity_section(spec: PolySeqSpec, n_lo: int, n_hi: int) -> Section:
    first = None
    for nn in range(n_lo, n_hi + 1):
        g = gen_poly(spec, nn)
        if g.degree != nn or not is_self_reciprocal(g, nn):
            first = {"n": nn, "degree": g.degree}
            break
    return Section(
        f"self_reciprocal[{spec.name}]",
        first is None,
        counts={"n_from": n_lo, "n_to": n_hi},
        witness=first,
    )


def golden_table_section() -> Section:
    tri = builtin_triangle("sun_a")
    table, first = {}, None
    for (nn, tt), expected in GOLDEN_L_AT_K0.items():
        value = L_mod(tri, nn, tt, 0)
        table[f"L_{tt}(a({nn},0))"] = value
        if value != expected and first is None:
            first = {"n": nn, "t": tt, "computed": value, "expected": expected}
    return Section("golden_table_L_t_a_n_0", first is None, counts={"entries": len(table)}, witness=first,
                   details={"values": table})


def weights_log_convex_section(spec: PolySeqSpec, count: int) -> Section:
    verdict = is_log_convex(spec.weights.values(count))
    witness = None if verdict.holds else {"index": verdict.index, "values": list(verdict.values)}
    return Section(f"log_convex_weights[{spec.weights.name}]", verdict.holds,
                   counts={"terms": count}, witness=witness)


def criterion_sections(rep: CriterionReport) -> List[Section]:
    sections = []
    if rep.theorem == "T2.1":
        sections.append(
            Section(
                f"theorem21_c1[{rep.triangle}+{rep.weights}]",
                bool(rep.c1_ok),
                counts={"n_from": 0, "n_to": rep.n_range[1] + 1},
                witness=None if rep.c1_ok else {"n": rep.c1_failure},
            )
        )
    bad = rep.violations()
    witness = None
    if bad:
        nn, tt, res = bad[0]
        witness = {"n": nn, "t": tt, "violation": list(res.violation)}
    label = "theorem21_c2" if rep.theorem == "T2.1" else "theorem11"
    name = f"{rep.triangle}+{rep.weights}" if rep.weights else rep.triangle
    sections.append(
        Section(
            f"{label}[{name}]",
            not bad,
            counts={"n_from": rep.n_range[0], "n_to": rep.n_range[1], "rows": len(rep.results),
                    "violations": len(bad)},
            witness=witness,
            details={"operator": rep.operator, "t_range": "0..2n" if rep.theorem == "T1.1" else "0..n"},
        )
    )
    return sections


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _spec(cfg: RunConfig) -> PolySeqSpec:
    try:
        return make_spec(cfg.triangle, cfg.weights)
    except KeyError as exc:
        raise ConfigError(exc.args[0]) from None
    except (TriangleFormatError, OSError) as exc:
        raise ConfigError(str(exc)) from None


def run_checks(cfg: RunConfig) -> Report:
    """Execute ``cfg`` and return the (finished) report."""
    cfg.validate()
    report = Report(config=cfg.echo())
    cmd, N = cfg.command, cfg.n_max
    try:
        if cmd == "verify-sun":
            spec = make_spec("sun_a", "central_binomial")
            report.add(golden_table_section())
            report.add(self_reciprocity_section(spec, 0, N))
            report.add(qlc_section(spec, N, cfg.parallel))
        elif cmd == "check-c1":
            spec = _spec(cfg)
            spec.triangle.require_rows(N + 1)
            report.add(self_reciprocity_section(spec, 0, N + 1))
        elif cmd == "check-c2":
            spec = _spec(cfg)
            if cfg.criterion == "1.1":
                rep = check_theorem11(spec.triangle, N, parallel=cfg.parallel)
            else:
                rep = check_theorem21(spec, N, parallel=cfg.parallel)
            for s in criterion_sections(rep):
                report.add(s)
        elif cmd == "identities":
            report.add(identity_section())
            for which in ("eq31", "eq32", "theta"):
                report.add(grid_verify_factorization(which, N, parallel=cfg.parallel))
            for s in grid_verify_sign_claims(cfg.sign_max_n):
                report.add(s)
            report.add(bridge_sign_consistency(cfg.bridge_max_n))
            report.add(bridge_sign_pattern(cfg.bridge_max_n))
        elif cmd == "qlc":
            spec = _spec(cfg)
            report.add(qlc_section(spec, N, cfg.parallel, concave=cfg.concave))
        elif cmd == "seq":
            spec = _spec(cfg)
            spec.triangle.require_rows(N)
            polys = {f"g_{i}": str(gen_poly(spec, i)) for i in range(N + 1)}
            report.add(Section(f"sequence[{spec.name}]", True, counts={"n_max": N}, details={"polynomials": polys}))
            report.add(weights_log_convex_section(spec, N + 1))
            if cfg.csv:
                write_triangle_csv(spec.triangle, N, cfg.csv)
    except ValueError as exc:
        # row-range and argument-domain problems are configuration errors
        raise ConfigError(str(exc)) from None
    return report.finish()


def summarize(report: Report) -> str:
    lines = []
    for s in report.sections:
        counts = ", ".join(f"{k}={v}" for k, v in s.counts.items())
        line = f"[{s.status}] {s.check}"
        if counts:
            line += f" ({counts})"
        if s.witness:
            line += "  witness: " + ", ".join(f"{k}={v}" for k, v in s.witness.items())
        lines.append(line)
        if s.details and "polynomials" in s.details:
            lines.extend(f"    {k} = {v}" for k, v in s.details["polynomials"].items())
    lines.append(f"overall: {'pass' if report.overall else 'fail'}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlogconvex",
        description="Exact checks of q-log-convexity and its sufficient criteria.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def common(p, triangle=True):
        p.add_argument("--max-n", type=int, default=None, help="largest n to check")
        p.add_argument("--parallel", action="store_true", help="spread grid work over processes")
        p.add_argument("--out", default=None, help="write the JSON report here")
        p.add_argument("-v", "--verbose", action="store_true")
        if triangle:
            p.add_argument("--triangle", default="sun_a",
                           help=f"builtin ({', '.join(TRIANGLES)}) or CSV path with n,k,value rows")
            p.add_argument("--weights", default="central_binomial", choices=sorted(WEIGHTS))

    common(sub.add_parser("verify-sun", help="q-log-convexity of S_n(q) plus golden values"), triangle=False)
    common(sub.add_parser("check-c1", help="self-reciprocity of g_n for n <= max-n + 1"))
    p = sub.add_parser("check-c2", help="sign-pattern hypothesis of a criterion")
    common(p)
    p.add_argument("--criterion", choices=("2.1", "1.1"), default="2.1",
                   help="2.1: C1 + C2 with L for t <= n; 1.1: L-tilde for t <= 2n")
    p = sub.add_parser("identities", help="identity catalog, factorization grids and sign claims")
    common(p, triangle=False)
    p.add_argument("--sign-max-n", type=int, default=200)
    p.add_argument("--bridge-max-n", type=int, default=20)
    p = sub.add_parser("qlc", help="q-log-convexity of g_n up to max-n")
    common(p)
    p.add_argument("--concave", action="store_true", help="check q-log-concavity instead")
    p = sub.add_parser("seq", help="print g_0 .. g_max-n")
    common(p)
    p.add_argument("--csv", default=None, help="also write the triangle rows 0..max-n as CSV")
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    args = build_parser().parse_args(list(argv))
    cfg = RunConfig(
        command=args.command,
        n_max=args.max_n if args.max_n is not None else DEFAULT_MAX_N[args.command],
        parallel=args.parallel,
        out=args.out,
    )
    if args.command == "verify-sun":
        cfg.triangle, cfg.weights = "sun_a", "central_binomial"
    elif args.command != "identities":
        cfg.triangle, cfg.weights = args.triangle, args.weights
    else:
        cfg.triangle, cfg.weights = "binomial,sun_a", "central_binomial"
    for name in ("criterion", "sign_max_n", "bridge_max_n", "concave", "csv"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return cfg


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        # argparse: 0 for --help/--version, 2 for usage errors
        return 0 if exc.code in (0, None) else 2
    try:
        report = run_checks(cfg)
    except ConfigError as exc:
        print(f"qlogconvex: error: {exc}", file=sys.stderr)
        return 2
    print(summarize(report))
    if cfg.out:
        try:
            write_report(report, cfg.out)
        except OSError as exc:
            print(f"qlogconvex: error: cannot write report: {exc}", file=sys.stderr)
            return 2
        log.info("report written to %s", cfg.out)
    return 0 if report.overall else 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
