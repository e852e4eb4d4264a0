"""Command-line front end: bound queries, extremal witness emission, oracle
runs, constant tables, and kernel/spline sampling.

Results go to stdout as a JSON envelope (CSV for table/kernel/spline),
diagnostics to stderr.  Exit codes: 0 success or verified, 1 verification
negative, 2 usage or parse error.  LANDAU_SEED overrides --seed.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction
from typing import List, Optional

from . import eulerspline, landau2, landaun, oracle, peano
from .bounds import BoundQuery, BoundResult, FullLine, HalfLine, Segment, compute_bound
from .exactnum import euler_number
from .pwpoly import PiecewisePoly, StructuralError, is_extreme_point, membership

SCHEMA_VERSION = "1"


def _emit(command: str, result, provenance: List[str]) -> None:
    envelope = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "result": result,
        "provenance": provenance,
    }
    json.dump(envelope, sys.stdout)
    sys.stdout.write("\n")


def _fail(message: str, code: int = 2) -> int:
    print(message, file=sys.stderr)
    return code


def _domain(args) -> object:
    if args.domain == "line":
        return FullLine
    if args.domain == "halfline":
        return HalfLine
    if args.T is None:
        raise ValueError("--domain segment requires --T")
    return Segment(args.T)


def _bound_result(args) -> BoundResult:
    dom = _domain(args)
    if args.t0 is not None:
        if args.domain != "segment":
            raise ValueError("--t0 only applies to --domain segment")
        if args.n != 2:
            raise ValueError("pointwise bounds are only available for --n 2")
        return landau2.sigma_pointwise(
            landau2.PointwiseQuery(args.t0, args.T, args.a, args.b)
        )
    return compute_bound(BoundQuery(n=args.n, k=args.k, a=args.a, b=args.b, domain=dom))


def cmd_bound(args) -> int:
    try:
        if args.functional == "var":
            if args.n != 2 or args.domain != "segment":
                raise ValueError("--functional var needs --n 2 and --domain segment")
            res = landau2.sigma1(args.a, args.b, args.T)
            out = res.as_dict()
            out.pop("witness", None)
            _emit("bound", out, [f"sigma1-{res.provenance}"])
            return 0
        result = _bound_result(args)
    except ValueError as exc:
        return _fail(f"error: {exc}")
    out = result.as_dict()
    out.pop("witness", None)
    out.pop("witness_point", None)
    if out["provenance"].startswith("half-line-bracket"):
        bracket = landaun.cnk_bracket(args.n, args.k)
        scale = args.a ** (1 - args.k / args.n) * args.b ** (args.k / args.n)
        out["bracket"] = {
            "upper": bracket.upper * scale,
            "upper_source": bracket.upper_source,
            "matorin": bracket.matorin * scale,
            "malliavin": bracket.malliavin * scale,
            "lower_shape": bracket.lower * scale,
            "lower_kappa_free": bracket.lower_kappa_free,
        }
    _emit("bound", out, [result.provenance])
    return 0


def _extremal_witness(args) -> tuple[PiecewisePoly, str]:
    if args.functional == "var":
        if args.n != 2 or args.domain != "segment":
            raise ValueError("--functional var needs --n 2 and --domain segment")
        res = landau2.sigma1(args.a, args.b, args.T)
        if res.witness is None:
            raise ValueError(
                "no extremal witness available: sigma_1 is only exactly known "
                "for T' <= 4 and on the lattice"
            )
        return res.witness, f"sigma1-{res.provenance}"
    if args.domain == "line" and args.n >= 3:
        scale = (args.b / args.a) ** (1.0 / args.n)
        from .pwpoly import transform

        witness = transform(eulerspline.q_n_piecewise(args.n, periods=2), mu=args.a, lam=scale)
        return witness, "kolmogorov-whole-line"
    result = _bound_result(args)
    if result.witness is None:
        raise ValueError(f"no extremal witness available for this query ({result.provenance})")
    return result.witness, result.provenance


def cmd_extremal(args) -> int:
    try:
        witness, provenance = _extremal_witness(args)
    except ValueError as exc:
        return _fail(f"error: {exc}")
    report = membership(witness, args.n, args.a, args.b)
    if not report.ok:
        return _fail(f"internal error: witness failed membership: {report.violations}", 1)
    doc = witness.to_json_dict()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh)
            fh.write("\n")
        _emit("extremal", {"written": args.out, "membership": "ok"}, [provenance])
    else:
        _emit("extremal", {"spline": doc, "membership": "ok"}, [provenance])
    return 0


def cmd_oracle(args) -> int:
    seed = int(os.environ.get("LANDAU_SEED", args.seed))
    if args.problem == "pointwise":
        if args.t0 is None or args.T is None:
            return _fail("error: oracle pointwise needs --T and --t0")
        value = oracle.lp_max_pointwise_derivative(args.a, args.b, args.T, args.t0, args.M)
        closed = landau2.sigma_pointwise(
            landau2.PointwiseQuery(args.t0, args.T, args.a, args.b)
        ).value
        result = {
            "value": value,
            "status": "OracleApprox",
            "config": {"problem": "pointwise", "a": args.a, "b": args.b, "T": args.T,
                       "t0": args.t0, "M": args.M},
            "discrepancy_vs_closed_form": (value - closed) / closed,
        }
        _emit("oracle", result, ["lp-discretized-class"])
        return 0
    if args.T is None:
        return _fail("error: oracle sigma1 needs --T")
    value, control = oracle.bangbang_sigma1_search(
        args.a, args.b, args.T, max_switches=args.max_switches,
        restarts=args.restarts, seed=seed,
    )
    closed = landau2.sigma1(args.a, args.b, args.T)
    discrepancy = None if closed.exact is None else (value - closed.exact) / closed.exact
    result = {
        "value": value,
        "status": "OracleApprox",
        "config": {"problem": "sigma1", "a": args.a, "b": args.b, "T": args.T,
                   "restarts": args.restarts, "seed": seed},
        "control": {"f0": control.f0, "fp0": control.fp0,
                    "switches": list(control.switches), "sign": control.sign,
                    "scale": control.scale},
        "discrepancy_vs_closed_form": discrepancy,
    }
    _emit("oracle", result, ["bangbang-switching-search"])
    return 0


def cmd_table(args) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    what, max_n = args.what, args.max_n
    if what == "euler-numbers":
        writer.writerow(["n", "E_n"])
        for n in range(max_n + 1):
            writer.writerow([n, euler_number(n)])
    elif what == "favard":
        writer.writerow(["n", "K_n"])
        for n in range(max_n + 1):
            writer.writerow([n, repr(eulerspline.favard(n))])
    elif what == "rn":
        writer.writerow(["n", "r_n"])
        for n in range(max_n + 1):
            writer.writerow([n, eulerspline.r_n(n)])
    elif what == "Ank":
        writer.writerow(["n", "k", "A_nk"])
        for n in range(2, max_n + 1):
            for k in range(1, n):
                writer.writerow([n, k, landaun.A_nk_markov(n, k)])
    elif what == "Bnk":
        writer.writerow(["n", "k", "kallioniemi", "cartan", "lower_bound"])
        for n in range(2, max_n + 1):
            for k in range(1, n):
                writer.writerow([
                    n, k,
                    landaun.B_nk_kallioniemi(n, k),
                    landaun.B_nk_cartan(n, k),
                    landaun.B_nk_lower(n, k),
                ])
    else:  # cnk
        writer.writerow(["n", "k", "exact", "upper", "matorin", "malliavin",
                         "lower_shape_kappa_free"])
        for n in range(2, max_n + 1):
            for k in range(1, n):
                br = landaun.cnk_bracket(n, k)
                writer.writerow([
                    n, k,
                    "" if br.exact is None else repr(br.exact),
                    repr(br.upper), repr(br.matorin), repr(br.malliavin),
                    repr(br.lower),
                ])
    return 0


def cmd_kernel(args) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    if args.n == 2:
        L = peano.derivative_functional(args.x, args.T)
    else:
        if args.T != 1.0:
            return _fail("error: kernels of order n > 2 are built on [0, 1]; use --T 1")
        if not 0 <= args.x <= 1:
            return _fail("error: need 0 <= x <= 1")
        if not 0 < args.k < args.n:
            return _fail("error: need 0 < k < n")
        alphas = [Fraction(i, args.n) for i in range(1, args.n + 1)]
        x = Fraction(args.x).limit_denominator(10**9)
        lambdas = peano._lambda_system(args.n, args.k, x, alphas)
        terms = [(x, args.k, Fraction(1))] + [(al, 0, -lam) for al, lam in zip(alphas, lambdas)]
        L = peano.LinearFunctional(tuple(terms), Fraction(1), args.n)
    writer.writerow(["t", "K"])
    for i in range(args.samples):
        t = float(L.T) * i / (args.samples - 1)
        writer.writerow([repr(t), repr(peano.peano_kernel(L, t))])
    return 0


def cmd_spline(args) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    if args.what == "en":
        fn = lambda x: eulerspline.e_n(args.n, x)
        x0, x1 = args.x0, args.x1
    elif args.what == "euler-spline":
        fn = lambda x: eulerspline.euler_spline(args.n, x)
        x0, x1 = args.x0, args.x1
    else:  # qn
        fn = lambda x: eulerspline.q_n(args.n, x)
        span = 4.0 / eulerspline.q_n_scale(args.n)  # two full periods
        x0, x1 = 0.0, span
    writer.writerow(["x", "value"])
    for i in range(args.samples):
        x = x0 + (x1 - x0) * i / (args.samples - 1)
        writer.writerow([repr(x), repr(fn(x))])
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.file) as fh:
            spline = PiecewisePoly.from_json(fh.read())
    except (OSError, StructuralError) as exc:
        return _fail(f"error: cannot read spline: {exc}")
    n = args.n if args.n is not None else spline.n_smooth
    report = membership(spline, n, args.a, args.b)
    result = {
        "membership": report.ok,
        "numeric": report.numeric,
        "violations": [
            {"kind": v.kind, "where": v.where, "detail": v.detail} for v in report.violations
        ],
    }
    verdict_ok = report.ok
    if args.extreme and report.ok:
        verdict = is_extreme_point(spline, n, args.a, args.b)
        result["is_extreme"] = verdict.is_extreme
        result["multiplicity_sum"] = (
            "inf" if math.isinf(verdict.multiplicity_sum) else verdict.multiplicity_sum
        )
        result["contact_points"] = [
            {"t": cp.t, "sign": cp.sign, "multiplicity": cp.multiplicity}
            for cp in verdict.contact_points
        ]
        result["contact_intervals"] = [
            {"lo": iv.lo, "hi": iv.hi, "sign": iv.sign} for iv in verdict.contact_intervals
        ]
        result["condition_ii_violations"] = list(verdict.condition_ii_violations)
        verdict_ok = verdict.is_extreme
    _emit("verify", result, ["membership-check" if not args.extreme else "extreme-point-certificate"])
    return 0 if verdict_ok else 1


def _add_bound_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=2, help="derivative class order")
    p.add_argument("--k", type=int, default=1, help="derivative order to bound")
    p.add_argument("--a", type=float, default=1.0, help="bound on |f|")
    p.add_argument("--b", type=float, default=1.0, help="bound on |f^(n)|")
    p.add_argument("--domain", choices=["segment", "halfline", "line"], default="segment")
    p.add_argument("--T", type=float, help="segment length")
    p.add_argument("--t0", type=float, help="point for the pointwise problem (n = 2)")
    p.add_argument(
        "--functional",
        choices=["sup", "var"],
        default="sup",
        help="sup-norm of f^(k), or total variation of f (n = 2 segments)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="landau",
        description="Sharp bounds for intermediate derivatives of functions with "
        "|f| <= a and |f^(n)| <= b, with extremal witnesses and oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="compute a bound (JSON)")
    _add_bound_flags(p)
    p.set_defaults(fn=cmd_bound)

    p = sub.add_parser("extremal", help="emit a membership-checked extremal witness spline")
    _add_bound_flags(p)
    p.add_argument("--out", help="write the spline JSON to this file")
    p.set_defaults(fn=cmd_extremal)

    p = sub.add_parser("oracle", help="brute-force verification (JSON)")
    p.add_argument("--problem", choices=["pointwise", "sigma1"], default="pointwise")
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--T", type=float)
    p.add_argument("--t0", type=float)
    p.add_argument("--M", type=int, default=400, help="grid intervals for the LP")
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--max-switches", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("table", help="emit constant tables (CSV)")
    p.add_argument("--what", choices=["favard", "euler-numbers", "rn", "cnk", "Ank", "Bnk"],
                   required=True)
    p.add_argument("--max-n", type=int, default=10)
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("kernel", help="sample a Peano kernel (CSV)")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--samples", type=int, default=201)
    p.set_defaults(fn=cmd_kernel)

    p = sub.add_parser("spline", help="sample Euler splines (CSV)")
    p.add_argument("--what", choices=["en", "euler-spline", "qn"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--x1", type=float, default=2.0)
    p.set_defaults(fn=cmd_spline)

    p = sub.add_parser("verify", help="check a spline JSON for membership/extremality")
    p.add_argument("--file", required=True)
    p.add_argument("--n", type=int, default=None, help="class order (default: the file's)")
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--extreme", action="store_true")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        return _fail(f"error: {exc}")


if __name__ == "__main__":
    sys.exit(main())
