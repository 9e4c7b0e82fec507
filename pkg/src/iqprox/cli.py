"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 infeasible or unbounded instance,
4 violated internal guarantee or failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import exact, formats, oracles
from .cones import build_cone, enumerate_generators
from .errors import ClaimViolation, InfeasibleError, InputError, UnboundedError
from .families import (build_example_1_1, build_ilp_tightness, build_prop44,
                       build_prop45, build_prop46)
from .pipeline import run_pipeline, subdeterminant_bound

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_CLAIM = 4


def _parse_rat(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad rational {s!r}") from e


def _parse_point(s: str) -> list[Fraction]:
    return [_parse_rat(p) for p in s.split(",")]


def _emit(doc):
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_solve(args) -> int:
    inst = formats.load_instance(args.instance)
    report = oracles.full_report(inst)
    _emit({
        "digest": formats.instance_digest(inst),
        "xd": formats.vec_to_strs(report.int_opt.point),
        "f_xd": formats.rat_to_str(report.int_opt.value),
        "xd_ties": [formats.vec_to_strs(p) for p in report.int_opt.ties],
        "xc": formats.vec_to_strs(report.cont_opt.point),
        "f_xc": formats.rat_to_str(report.cont_opt.value),
        "xc_ties": [formats.vec_to_strs(p) for p in report.cont_opt.ties],
        "fmax_int": formats.rat_to_str(report.fmax_int),
        "fmax_cont": formats.rat_to_str(report.fmax_cont),
    })
    return EXIT_OK


def cmd_proximity(args) -> int:
    inst = formats.load_instance(args.instance)
    eps = _parse_rat(args.eps)
    xc = _parse_point(args.xc) if args.xc else None
    xd = _parse_point(args.xd) if args.xd else None
    t0 = time.monotonic()
    report = oracles.full_report(inst)
    result = run_pipeline(inst, eps, xc=xc, xd=xd, checked=args.checked)
    vi = oracles.verdict(inst, result.x_star_int, eps, "integer", report)
    vc = oracles.verdict(inst, result.x_star_cont, eps, "continuous", report)
    oracles.claim_cross_checks(inst, result, report)
    if not (vi.is_approx and vc.is_approx):
        raise ClaimViolation("approximation", "pipeline output failed its verdict")
    verdicts = {
        "int_ratio": None if vi.ratio is None else formats.rat_to_str(vi.ratio),
        "cont_ratio": None if vc.ratio is None else formats.rat_to_str(vc.ratio),
        "int_approx": vi.is_approx,
        "cont_approx": vc.is_approx,
    }
    doc = formats.run_report(inst, result, report, verdicts,
                             elapsed=time.monotonic() - t0)
    if args.trace:
        with open(args.trace, "w") as fh:
            json.dump(doc["trace"], fh, indent=2)
            fh.write("\n")
    _emit(doc)
    return EXIT_OK


def cmd_tightness(args) -> int:
    eps = _parse_rat(args.eps) if args.eps else None
    if args.family == "ilp":
        fam = build_ilp_tightness(args.n, args.delta, _parse_rat(args.beta),
                                  t=args.t)
        report = oracles.full_report(fam.instance)
        gap = exact.inf_norm(exact.vec_sub(report.cont_opt.point,
                                           report.int_opt.point))
        bound = fam.expected["gap"]
        _emit({"family": "ilp", "gap": formats.rat_to_str(gap),
               "bound": formats.rat_to_str(bound),
               "status": "TIGHT" if gap == bound else "SLACK"})
        return EXIT_OK
    if eps is None:
        raise InputError("--eps is required for this family")
    if args.family == "example11":
        fam = build_example_1_1(args.t)
        ds = oracles.delta_star(fam.instance, eps)
        _emit({"family": "example11",
               "delta_star": formats.rat_to_str(ds.value),
               "upper_bound_only": ds.upper_bound_only})
        return EXIT_OK
    if args.family == "prop44":
        fam = build_prop44(eps, args.delta, n=args.n)
        ds = oracles.delta_star(fam.instance, eps)
        nd = fam.params["n"] * args.delta
        _emit({"family": "prop44", "n": fam.params["n"],
               "delta_star": formats.rat_to_str(ds.value),
               "bound": str(nd),
               "status": "TIGHT" if ds.value > nd else "SLACK",
               "upper_bound_only": ds.upper_bound_only})
        return EXIT_OK
    if args.family == "prop45":
        fam = build_prop45(args.n, args.delta, eps)
        ds = oracles.delta_star(fam.instance, eps)
        bound = fam.expected["bound"]
        _emit({"family": "prop45",
               "delta_star": formats.rat_to_str(ds.value),
               "bound": formats.rat_to_str(bound),
               "status": "TIGHT" if ds.value == bound else
               ("SLACK" if ds.value > bound else "BELOW"),
               "upper_bound_only": ds.upper_bound_only})
        return EXIT_OK
    if args.family == "prop46":
        fam = build_prop46(args.n, args.delta, eps)
        radius = fam.expected["radius"]
        ok = oracles.certify_no_cont_approx_within(
            fam.instance, eps, fam.expected["xd"], radius)
        bound = fam.expected["bound"]
        _emit({"family": "prop46",
               "certified_radius": formats.rat_to_str(radius),
               "bound": formats.rat_to_str(bound),
               "certified": ok,
               "status": "TIGHT" if ok and radius >= bound else "FAILED"})
        return EXIT_OK if ok else EXIT_CLAIM
    raise InputError(f"unknown family {args.family!r}")


def cmd_subdet(args) -> int:
    inst = formats.load_instance(args.instance)
    value, rows, cols = exact.max_abs_subdeterminant_witness(inst.A)
    _emit({"max_abs_subdeterminant": value,
           "witness_rows": list(rows), "witness_cols": list(cols)})
    return EXIT_OK


def cmd_cone(args) -> int:
    inst = formats.load_instance(args.instance)
    xa = _parse_point(args.xa)
    xb = _parse_point(args.xb)
    cone = build_cone(inst.A, xa, xb)
    delta = subdeterminant_bound(inst)
    gens = enumerate_generators(cone, delta)
    _emit({"delta": delta,
           "generators": [formats.vec_to_strs(g) for g in gens]})
    return EXIT_OK


def cmd_verify_report(args) -> int:
    with open(args.report) as fh:
        doc = json.load(fh)
    inst = formats.instance_from_dict(doc["instance"])
    if formats.instance_digest(inst) != doc["digest"]:
        print("digest mismatch", file=sys.stderr)
        return EXIT_CLAIM
    eps = formats.str_to_rat(doc["eps"])
    xs = formats.strs_to_vec(doc["x_star_int"])
    xq = formats.strs_to_vec(doc["x_star_cont"])
    xc = formats.strs_to_vec(doc["xc"])
    xd = formats.strs_to_vec(doc["xd"])
    bound = formats.str_to_rat(doc["schedule"]["theorem_bound"])
    report = oracles.full_report(inst)
    problems = []
    if exact.inf_norm(exact.vec_sub(xc, xs)) != formats.str_to_rat(doc["distance_int"]):
        problems.append("distance_int does not match its points")
    if exact.inf_norm(exact.vec_sub(xq, xd)) != formats.str_to_rat(doc["distance_cont"]):
        problems.append("distance_cont does not match its points")
    if formats.str_to_rat(doc["distance_int"]) > bound:
        problems.append("distance_int beyond the schedule bound")
    if not oracles.verdict(inst, xs, eps, "integer", report).is_approx:
        problems.append("x_star_int fails its verdict")
    if not oracles.verdict(inst, xq, eps, "continuous", report).is_approx:
        problems.append("x_star_cont fails its verdict")
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return EXIT_CLAIM
    _emit({"verified": True, "digest": doc["digest"]})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="iqprox")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact optima and objective maxima")
    p.add_argument("instance")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("proximity", help="run the rounding pipeline")
    p.add_argument("instance")
    p.add_argument("--eps", required=True)
    p.add_argument("--xc")
    p.add_argument("--xd")
    p.add_argument("--checked", action="store_true")
    p.add_argument("--trace")
    p.set_defaults(func=cmd_proximity)

    p = sub.add_parser("tightness", help="worst-case family reports")
    p.add_argument("family",
                   choices=["ilp", "example11", "prop44", "prop45", "prop46"])
    p.add_argument("--n", type=int)
    p.add_argument("--delta", type=int, default=1)
    p.add_argument("--beta", default="1/2")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--eps")
    p.set_defaults(func=cmd_tightness)

    p = sub.add_parser("subdet", help="largest absolute subdeterminant")
    p.add_argument("instance")
    p.set_defaults(func=cmd_subdet)

    p = sub.add_parser("cone", help="generators of the row-sign cone")
    p.add_argument("instance")
    p.add_argument("--xa", required=True)
    p.add_argument("--xb", required=True)
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("verify-report", help="re-check a saved run report")
    p.add_argument("report")
    p.set_defaults(func=cmd_verify_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FileNotFoundError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (InfeasibleError, UnboundedError) as e:
        print(f"{e.__class__.__name__.removesuffix('Error').lower()}: {e}",
              file=sys.stderr)
        return EXIT_INFEASIBLE
    except ClaimViolation as e:
        print(f"violation: {e}", file=sys.stderr)
        return EXIT_CLAIM


if __name__ == "__main__":
    sys.exit(main())
