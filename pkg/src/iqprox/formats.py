"""JSON instance files and machine-readable run reports.

Every number crossing the process boundary is a rational string ("3/4" or
"5"); floats never appear, so parse(serialize(x)) is exact.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .errors import InputError
from .pipeline import Instance, PipelineResult, instance


def rat_to_str(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def str_to_rat(s) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise InputError(f"bad rational literal {s!r}") from e


def vec_to_strs(v) -> list[str]:
    return [rat_to_str(x) for x in v]


def strs_to_vec(xs) -> list[Fraction]:
    return [str_to_rat(x) for x in xs]


def instance_to_dict(inst: Instance) -> dict:
    return {
        "n": inst.n,
        "m": inst.m,
        "k": inst.k,
        "A": [[int(x) for x in row] for row in inst.A],
        "b": vec_to_strs(inst.b),
        "q": vec_to_strs(inst.q),
        "h": vec_to_strs(inst.h),
    }


def instance_from_dict(d: dict) -> Instance:
    try:
        A = d["A"]
        b = strs_to_vec(d["b"])
        q = strs_to_vec(d["q"])
        h = strs_to_vec(d["h"])
        k = int(d.get("k", len(q)))
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed instance document: {e}") from e
    inst = instance(A, b, q, h, k)
    if "n" in d and int(d["n"]) != inst.n:
        raise InputError("declared n does not match the data")
    if "m" in d and int(d["m"]) != inst.m:
        raise InputError("declared m does not match the data")
    return inst


def save_instance(inst: Instance, path: str):
    with open(path, "w") as fh:
        json.dump(instance_to_dict(inst), fh, indent=2)
        fh.write("\n")


def load_instance(path: str) -> Instance:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except json.JSONDecodeError as e:
        raise InputError(f"cannot parse {path}: {e}") from e
    if not isinstance(d, dict):
        raise InputError("instance document must be a JSON object")
    return instance_from_dict(d)


def instance_digest(inst: Instance) -> str:
    payload = json.dumps(instance_to_dict(inst), sort_keys=True,
                         separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def schedule_to_dict(sched) -> dict:
    return {
        "eps": rat_to_str(sched.eps),
        "n": sched.n,
        "delta": sched.delta,
        "k": sched.k,
        "chi": vec_to_strs(sched.chi),
        "psi": vec_to_strs(sched.psi),
        "theorem_bound": rat_to_str(sched.theorem_bound),
    }


def trace_to_list(trace) -> list[dict]:
    out = []
    for rec in trace:
        out.append({
            "j": rec.j,
            "x": vec_to_strs(rec.x_j),
            "zero_set": sorted(rec.z_set),
            "nonzero_set": sorted(rec.n_set),
            "s": rec.s,
            "termination": rec.termination_reason,
        })
    return out


def run_report(inst: Instance, result: PipelineResult, report=None,
               verdicts: dict | None = None, elapsed: float | None = None) -> dict:
    doc = {
        "instance": instance_to_dict(inst),
        "digest": instance_digest(inst),
        "delta": result.delta,
        "eps": rat_to_str(result.schedule.eps),
        "schedule": schedule_to_dict(result.schedule),
        "case": result.case,
        "x_star_int": vec_to_strs(result.x_star_int),
        "x_star_cont": vec_to_strs(result.x_star_cont),
        "xc": vec_to_strs(result.xc),
        "xd": vec_to_strs(result.xd),
        "distance_int": rat_to_str(result.distance_int),
        "distance_cont": rat_to_str(result.distance_cont),
        "trace": trace_to_list(result.trace),
    }
    if report is not None:
        doc["oracles"] = {
            "xd": vec_to_strs(report.int_opt.point),
            "f_xd": rat_to_str(report.int_opt.value),
            "xc": vec_to_strs(report.cont_opt.point),
            "f_xc": rat_to_str(report.cont_opt.value),
            "fmax_int": rat_to_str(report.fmax_int),
            "fmax_cont": rat_to_str(report.fmax_cont),
        }
    if verdicts is not None:
        doc["verdicts"] = verdicts
    if elapsed is not None:
        doc["elapsed_seconds"] = elapsed
    return doc
