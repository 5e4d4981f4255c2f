"""Command line: ``jordanian verify | expand | star | ode-check``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .ncalg import parse_rational
from .report import reports_to_json, reports_to_text, sort_reports
from .suite import DEFAULT_U, GROUPS, Settings, run

EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        q = parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return Fraction(int(q.numerator), int(q.denominator))


def _vector(text: str) -> tuple:
    try:
        return tuple(float(_rational(x.strip())) for x in text.split(","))
    except argparse.ArgumentTypeError as exc:
        raise argparse.ArgumentTypeError(f"bad vector {text!r}: {exc}") from None


def _rational_vector(text: str) -> tuple:
    return tuple(_rational(x.strip()) for x in text.split(","))


def _common(p: argparse.ArgumentParser):
    p.add_argument("-N", "--order", type=int, default=6, help="truncation order in 1/kappa (default 6)")
    p.add_argument("--triple-order", type=int, default=None, help="order for three-leg checks (default min(4, N))")
    p.add_argument("-n", "--dim", type=int, default=2, help="spacetime dimension (default 2)")
    p.add_argument("--u", type=_rational, action="append", help="deformation parameter, repeatable (a/b)")
    p.add_argument("--family", action="append", help="F0, F1, L, R or LR; repeatable")
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--v", type=_rational_vector, default=None, help="deformation direction, comma separated")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--report", help="write the JSON report to this path")
    p.add_argument("--format", choices=("json", "text"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jordanian", description="Exact and numeric checks for Jordanian twist deformations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run verification checks")
    _common(p)
    p.add_argument("--checks", help="comma separated groups: " + ", ".join(GROUPS))

    p = sub.add_parser("expand", help="print a series in canonical text form")
    _common(p)
    p.add_argument("expr", help="F0|F1|FL|FR|FLR|coproduct:<gen>|antipode:<gen>|rmatrix")

    p = sub.add_parser("star", help="plane-wave star product kernel")
    _common(p)
    p.add_argument("--k", type=_vector, required=True)
    p.add_argument("--q", type=_vector, required=True)

    p = sub.add_parser("ode-check", help="closed forms against RK4 integration")
    _common(p)
    return parser


def _settings(args) -> Settings:
    if args.order < 1:
        raise UsageError("--order must be >= 1")
    if args.dim < 1:
        raise UsageError("--dim must be >= 1")
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    triple = args.triple_order if args.triple_order is not None else min(4, args.order)
    if not 1 <= triple <= args.order:
        raise UsageError("--triple-order must lie in [1, order]")
    families = tuple(_family_name(f) for f in (args.family or ("F0", "F1", "L", "R", "LR")))
    s = Settings(
        n=args.dim,
        N=args.order,
        triple_order=triple,
        u=tuple(args.u) if args.u else DEFAULT_U,
        u_given=bool(args.u),
        families=families,
        kappa=args.kappa,
        v=args.v,
        seed=args.seed,
        samples=args.samples,
        tol=args.tol,
    )
    try:
        s.cfg
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not args.kappa:
        raise UsageError("--kappa must be nonzero")
    return s


def _family_name(text: str) -> str:
    key = text.upper()
    aliases = {"FL": "L", "FR": "R", "FLR": "LR"}
    key = aliases.get(key, key)
    if key not in ("F0", "F1", "L", "R", "LR"):
        raise UsageError(f"unknown family {text!r}")
    return key


def _emit(reports, args) -> int:
    reports = sort_reports(reports)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(reports_to_json(reports) + "\n")
    print(reports_to_json(reports) if args.format == "json" else reports_to_text(reports))
    return 0 if reports and all(r.passed for r in reports) else 1


def cmd_verify(args) -> int:
    s = _settings(args)
    groups = [g.strip() for g in args.checks.split(",")] if args.checks else None
    if groups:
        unknown = [g for g in groups if g not in GROUPS]
        if unknown:
            raise UsageError(f"unknown check group(s): {', '.join(unknown)}")
    return _emit(run(s, groups), args)


def cmd_expand(args) -> int:
    from .hopf import build_twist, r_matrix, twisted_antipode, twisted_coproduct

    if args.order < 0:
        raise UsageError("--order must be >= 0")
    order = args.order
    args.order = max(order, 1)
    s = _settings(args)
    cfg = s.cfg
    expr = args.expr
    u = (args.u or [None])[0]
    fam = _family_name(args.family[0]) if args.family else None
    head, _, gen = expr.partition(":")
    gens = dict(cfg.generators())
    if head.upper() in ("F0", "F1", "FL", "FR", "FLR"):
        out = build_twist(_family_name(head), u, cfg).element
    elif head in ("coproduct", "antipode") and gen:
        if gen not in gens:
            raise UsageError(f"unknown generator {gen!r}")
        F = build_twist(fam or "F0", u, cfg)
        out = (twisted_coproduct if head == "coproduct" else twisted_antipode)(F, gens[gen])
    elif head == "rmatrix":
        out = r_matrix(build_twist(fam or "F0", u, cfg)).element
    else:
        raise UsageError(f"unknown expression {expr!r}")
    out = out.truncate(order)
    if args.format == "json":
        print(json.dumps({"expr": expr, "family": fam, "u": None if u is None else str(u), "N": order, "series": out.to_text().splitlines()}, indent=2))
    else:
        print(out.to_text())
    return 0


def _star_params(args):
    from .starlab import StarParams

    u = float((args.u or [Fraction(1, 2)])[0])
    v = tuple(float(x) for x in args.v) if args.v else (1.0,) + (0.0,) * (args.dim - 1)
    return StarParams(u, args.kappa, v)


def cmd_star(args) -> int:
    from .starlab import star_kernel

    p = _star_params(args)
    if len(args.k) != p.n or len(args.q) != p.n:
        raise UsageError(f"--k and --q need {p.n} components")
    fam = _family_name(args.family[0]) if args.family else "R"
    if fam not in ("L", "R"):
        raise UsageError("star supports families L and R")
    pw = star_kernel(p, args.k, args.q, fam)
    payload = {"op": "star", "family": fam, "params": p.to_dict(), "inputs": {"k": list(args.k), "q": list(args.q)}, "outputs": pw.to_dict()}
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        d = " ".join(repr(float(x)) for x in pw.dvec)
        print(f"dvec = {d}\ngLog = {pw.gLog!r}\namplitude = {pw.amplitude!r}")
    return 0


def cmd_ode_check(args) -> int:
    from .starlab import StarParams, check_ode_oracle

    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    base = _star_params(args)
    reports = []
    for u in args.u or DEFAULT_U:
        reports += check_ode_oracle(StarParams(float(u), base.kappa, base.v), args.samples, args.seed, args.tol)
    return _emit(reports, args)


COMMANDS = {"verify": cmd_verify, "expand": cmd_expand, "star": cmd_star, "ode-check": cmd_ode_check}


def main(argv=None) -> int:
    from .starlab import DomainError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"jordanian {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"jordanian {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
