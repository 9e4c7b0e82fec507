"""Constructive proximity pipeline for separable concave integer QPs.

Given optimal anchors for the discrete and continuous problems, the pipeline
normalizes the instance so the discrete anchor is the origin, walks the
zeroing sequence governed by the chi/psi threshold schedule, and rounds a
conic decomposition of the endpoint into an integer output together with its
continuous counterpart.  Every intermediate guarantee that does not need a
brute-force oracle is asserted at runtime and raises ClaimViolation with the
claim's name when it fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import exact
from .cones import (ConicDecomposition, build_cone, caratheodory_decompose,
                    check_two_representations, enumerate_generators)
from .errors import ClaimViolation, InputError
from .polyhedra import Polyhedron, contains, polyhedron

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Instance:
    """Data of the discrete problem and its continuous relaxation.

    Objective: sum_{i<k} -q_i x_i^2 + h.x, minimized over {A x <= b}
    (intersected with the integer lattice on the discrete side).
    """

    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    k: int
    q: tuple[Fraction, ...]
    h: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.h)

    @property
    def m(self) -> int:
        return len(self.A)

    def polyhedron(self) -> Polyhedron:
        return polyhedron(self.A, self.b, self.n)


def instance(A, b, q, h, k: int | None = None) -> Instance:
    """Validated Instance: integer A, positive q, 0 <= k <= n."""
    rows = tuple(tuple(Fraction(x) for x in row) for row in A)
    if not exact.is_integral_mat(rows):
        raise InputError("constraint matrix must be integer")
    qv = tuple(Fraction(x) for x in q)
    hv = tuple(Fraction(x) for x in h)
    if k is None:
        k = len(qv)
    if k != len(qv):
        raise InputError(f"k={k} but {len(qv)} quadratic coefficients given")
    if not 0 <= k <= len(hv):
        raise InputError(f"k={k} out of range for n={len(hv)}")
    if any(x <= 0 for x in qv):
        raise InputError("quadratic coefficients must be positive")
    bv = tuple(Fraction(x) for x in b)
    if len(bv) != len(rows):
        raise InputError("row/rhs count mismatch")
    if any(len(r) != len(hv) for r in rows):
        raise InputError("matrix width does not match h")
    return Instance(rows, bv, k, qv, hv)


def subdeterminant_bound(inst: Instance) -> int:
    """Delta of the constraint matrix, floored at 1 for the cone machinery."""
    return max(1, exact.max_abs_subdeterminant(inst.A))


@dataclass(frozen=True)
class Schedule:
    """chi/psi thresholds of the zeroing sequence and the proven bound."""

    eps: Fraction
    n: int
    delta: int
    k: int
    chi: tuple[Fraction, ...]
    psi: tuple[Fraction, ...]
    theorem_bound: Fraction

    def psi_at(self, j: int) -> Fraction:
        return self.psi[j - 1] if j >= 1 else ZERO


def compute_schedule(n: int, delta: int, k: int, eps) -> Schedule:
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise InputError(f"eps must be in (0, 1], got {eps}")
    if n < 1 or delta < 1 or k < 0:
        raise InputError(f"bad schedule parameters n={n}, delta={delta}, k={k}")
    nd = Fraction(n * delta)
    chi: list[Fraction] = []
    psi: list[Fraction] = []
    acc = ZERO  # running sum of delta * chi_i
    for _ in range(k):
        if not chi:
            c = 8 * nd / eps + 2 * nd
        else:
            c = 2 * nd + Fraction(8) / eps * (acc + nd)
        chi.append(c)
        acc += delta * c
        psi.append(acc)
    bound = nd * (10 * delta / eps + 1) ** k
    sched = Schedule(eps, n, delta, k, tuple(chi), tuple(psi), bound)
    if k and psi[-1] + nd > bound:
        raise ClaimViolation("schedule-bound", f"psi_k + n*delta = {psi[-1] + nd} > {bound}")
    return sched


@dataclass
class StepRecord:
    """One entry of the sequence trace (the last carries the stop reason)."""

    j: int
    x_j: tuple[Fraction, ...]
    z_set: frozenset[int]
    n_set: frozenset[int]
    s: int | None = None
    lam: list[Fraction] | None = None
    decomposition: ConicDecomposition | None = None
    termination_reason: str | None = None  # None | "all-large" | "small-norm"


@dataclass
class PipelineResult:
    case: str  # "c1" | "c2"
    x_ell: tuple[Fraction, ...]
    x_star_int: tuple[Fraction, ...]
    x_star_cont: tuple[Fraction, ...]
    trace: list[StepRecord]
    distance_int: Fraction
    distance_cont: Fraction
    schedule: Schedule
    delta: int
    xc: tuple[Fraction, ...]
    xd: tuple[Fraction, ...]
    z_ell: frozenset[int] = frozenset()
    decomposition: ConicDecomposition | None = None
    normalized: "PipelineResult | None" = None
    witnesses: "MidpointWitnesses | None" = None


def eval_objective(inst: Instance, x) -> Fraction:
    xv = exact.vec(x)
    if len(xv) != inst.n:
        raise exact.DimensionError(f"point has dim {len(xv)}, instance has {inst.n}")
    quad = sum((-inst.q[i] * xv[i] * xv[i] for i in range(inst.k)), ZERO)
    return quad + exact.dot(inst.h, xv)


def normalize(inst: Instance, xd) -> tuple[Instance, tuple[Fraction, ...]]:
    """Translate so the given integer feasible point becomes the origin.

    Returns the shifted instance and the translation (the original point);
    the shifted objective vanishes at the origin by construction.
    """
    xdv = tuple(Fraction(x) for x in xd)
    if not exact.is_integral_vec(xdv):
        raise InputError("anchor point must be integer")
    P = inst.polyhedron()
    if not contains(P, xdv):
        raise InputError("anchor point must be feasible")
    b2 = tuple(bi - exact.dot(row, xdv) for row, bi in zip(inst.A, inst.b))
    h2 = tuple(inst.h[i] - 2 * inst.q[i] * xdv[i] if i < inst.k else inst.h[i]
               for i in range(inst.n))
    return Instance(inst.A, b2, inst.k, inst.q, h2), xdv


def apply_unimodular(inst: Instance, M, t, alpha, beta) -> Instance:
    """Transformed instance under y = M x + t with objective alpha*f + beta.

    Supported maps keep the objective separable quadratic: any unimodular M
    when k = 0, signed permutations otherwise.  The additive constant
    (beta and the completion terms) is dropped; it affects neither optima nor
    approximation quality.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise InputError("alpha must be positive")
    Mm = exact.mat(M)
    tv = exact.vec(t)
    n = inst.n
    if len(Mm) != n or any(len(r) != n for r in Mm) or len(tv) != n:
        raise InputError("transform shape mismatch")
    if not (exact.is_integral_mat(Mm) and exact.is_integral_vec(tv)):
        raise InputError("M and t must be integer")
    if abs(exact.det(Mm)) != 1:
        raise InputError("M must be unimodular")

    Minv = [exact.solve_linear(Mm, [ONE if j == i else ZERO for j in range(n)])
            for i in range(n)]
    Minv = exact.transpose(Minv)  # columns were solved, transpose to matrix
    # Constraints: A x <= b with x = Minv (y - t).
    AMinv = [[exact.dot(row, [Minv[r][c] for r in range(n)]) for c in range(n)]
             for row in inst.A]
    b2 = tuple(bi + exact.dot(arow, tv) for arow, bi in zip(AMinv, inst.b))
    A2 = tuple(tuple(r) for r in AMinv)

    if inst.k == 0:
        h2 = tuple(alpha * exact.dot([Minv[r][c] for r in range(n)], inst.h)
                   for c in range(n))
        return Instance(A2, b2, 0, (), h2)

    # Signed permutation: column c holds a single +-1 in some row.
    perm = {}
    sign = {}
    for c in range(n):
        nz = [r for r in range(n) if Mm[r][c] != 0]
        if len(nz) != 1 or abs(Mm[nz[0]][c]) != 1:
            raise InputError("with quadratic terms, M must be a signed permutation")
        perm[c] = nz[0]
        sign[c] = int(Mm[nz[0]][c])
    if any(perm[c] >= inst.k for c in range(inst.k)):
        raise InputError("quadratic coordinates must map to quadratic coordinates")
    # y_{perm[c]} = sign[c] * x_c + t_{perm[c]}
    q2 = [ZERO] * inst.k
    h2 = [ZERO] * n
    for c in range(n):
        r = perm[c]
        s = sign[c]
        if c < inst.k:
            # -q_c x_c^2 = -q_c (s (y_r - t_r))^2 = -q_c (y_r - t_r)^2
            q2[r] = alpha * inst.q[c]
            h2[r] += alpha * (2 * inst.q[c] * tv[r] + s * inst.h[c])
        else:
            h2[r] += alpha * s * inst.h[c]
    return Instance(A2, b2, inst.k, tuple(q2), tuple(h2))


def restricted_polyhedron(inst: Instance, zset) -> Polyhedron:
    """The feasible set with x_i = 0 appended (as +-rows) for i in zset."""
    rows = [list(r) for r in inst.A]
    rhs = list(inst.b)
    for i in sorted(zset):
        e = [ZERO] * inst.n
        e[i] = ONE
        rows.append(e)
        rhs.append(ZERO)
        rows.append([-x for x in e])
        rhs.append(ZERO)
    return polyhedron(rows, rhs, inst.n)


def _zero_nonzero_sets(x, k) -> tuple[frozenset[int], frozenset[int]]:
    z = frozenset(i for i in range(k) if x[i] == 0)
    return z, frozenset(range(k)) - z


def one_step(inst: Instance, xa, zset, delta: int) -> tuple[tuple[Fraction, ...], StepRecord]:
    """Produce the next sequence point: zero one more quadratic coordinate.

    The input must have some nonzero quadratic coordinate whose magnitude,
    scaled by delta, stays below the overall infinity norm; the output keeps
    all previously zeroed coordinates at zero, zeroes the smallest-magnitude
    one, and moves by at most delta times that magnitude.
    """
    xav = tuple(Fraction(v) for v in xa)
    P = inst.polyhedron()
    if not contains(P, xav):
        raise InputError("step input must be feasible")
    z, nset = _zero_nonzero_sets(xav, inst.k)
    if z != frozenset(zset):
        raise InputError("supplied zero set does not match the point")
    if not nset:
        raise InputError("all quadratic coordinates are already zero")
    s = min(nset, key=lambda i: (abs(xav[i]), i))
    if exact.inf_norm(xav) <= delta * abs(xav[s]):
        raise InputError("caller should have terminated: small-norm condition holds")

    origin = tuple([ZERO] * inst.n)
    Pt = restricted_polyhedron(inst, z)
    cone = build_cone(Pt.A, xav, origin)
    gens = enumerate_generators(cone, delta)
    dec = caratheodory_decompose(list(xav), gens)

    sgn = 1 if xav[s] > 0 else -1
    selected = [i for i, g in enumerate(dec.generators)
                if g[s] != 0 and (g[s] > 0) == (sgn > 0)]
    residual = abs(xav[s])
    lam = [ZERO] * len(dec.generators)
    for i in selected:
        if residual == 0:
            break
        g = dec.generators[i]
        take = min(dec.coefficients[i], residual / abs(g[s]))
        lam[i] = take
        residual -= take * abs(g[s])
    if residual != 0:
        raise ClaimViolation("onestep", "greedy coefficients cannot cover x_s")

    move = [ZERO] * inst.n
    for i in selected:
        move = exact.vec_add(move, exact.vec_scale(lam[i], dec.generators[i]))
    xb = tuple(exact.vec_sub(xav, move))

    # Claim onestep (iii): both conic expressions agree and land in P.
    pos = ConicDecomposition(list(dec.generators),
                             [dec.coefficients[i] - lam[i] for i in range(len(lam))])
    pos.generators = [g for g, c in zip(pos.generators, pos.coefficients) if c != 0]
    pos.coefficients = [c for c in pos.coefficients if c != 0]
    neg = ConicDecomposition([dec.generators[i] for i in selected if lam[i] != 0],
                             [lam[i] for i in selected if lam[i] != 0])
    if not check_two_representations(Pt, cone, origin, xav, pos, neg):
        raise ClaimViolation("onestep-iii", "common point escaped the polyhedron")

    if any(xb[i] != 0 for i in z | {s}):
        raise ClaimViolation("onestep-i", f"coordinate not zeroed at {sorted(z | {s})}")
    if exact.inf_norm(exact.vec_sub(xav, xb)) > delta * abs(xav[s]):
        raise ClaimViolation("onestep-ii", "step moved too far")
    if not contains(P, xb):
        raise ClaimViolation("onestep", "step output left the polyhedron")

    rec = StepRecord(j=-1, x_j=xav, z_set=z, n_set=nset, s=s, lam=lam, decomposition=dec)
    return xb, rec


def build_sequence(inst: Instance, xc, schedule: Schedule,
                   delta: int) -> tuple[tuple[Fraction, ...], list[StepRecord]]:
    """Run the zeroing sequence from the continuous anchor.

    The trace has one record per sequence point; the last record carries the
    termination reason ("all-large" or "small-norm").
    """
    P = inst.polyhedron()
    x = tuple(Fraction(v) for v in xc)
    xcv = x
    trace: list[StepRecord] = []
    j = 0
    while True:
        z, nset = _zero_nonzero_sets(x, inst.k)
        if not contains(P, tuple(exact.vec_sub(xcv, x))):
            raise ClaimViolation("xell-a", f"x^c - x^{j} left the polyhedron")
        if all(abs(x[i]) > schedule.chi[j] for i in nset):
            trace.append(StepRecord(j, x, z, nset, termination_reason="all-large"))
            break
        s = min(nset, key=lambda i: (abs(x[i]), i))
        if exact.inf_norm(x) <= delta * abs(x[s]):
            trace.append(StepRecord(j, x, z, nset, s=s, termination_reason="small-norm"))
            break
        if j >= inst.k:
            raise ClaimViolation("sequence-length", "more than k steps taken")
        nxt, rec = one_step(inst, x, z, delta)
        rec.j = j
        trace.append(rec)
        if exact.inf_norm(exact.vec_sub(x, nxt)) > delta * schedule.chi[j]:
            raise ClaimViolation("xell-step", f"step {j} exceeded delta*chi_{j + 1}")
        z2, _ = _zero_nonzero_sets(nxt, inst.k)
        if len(z2) <= len(z):
            raise ClaimViolation("zero-growth", "zero set did not grow")
        x = nxt
        j += 1
    ell = trace[-1].j
    if ell > inst.k:
        raise ClaimViolation("sequence-length", f"ell={ell} > k={inst.k}")
    if exact.inf_norm(exact.vec_sub(xcv, x)) > schedule.psi_at(ell):
        raise ClaimViolation("xell-b", "endpoint drifted beyond psi_ell")
    return x, trace


def construct_outputs(inst: Instance, xc, x_ell, trace, schedule: Schedule,
                      delta: int) -> PipelineResult:
    """Build the integer output and its continuous counterpart (normalized).

    Small-norm termination keeps the anchors themselves; otherwise the
    endpoint's conic decomposition is floored into an integer point.
    """
    xcv = tuple(Fraction(v) for v in xc)
    n = inst.n
    nd = Fraction(n * delta)
    last = trace[-1]
    ell = last.j
    origin = tuple([ZERO] * n)
    P = inst.polyhedron()

    if last.termination_reason == "small-norm":
        # Case c-1: the anchors are already close.
        if exact.inf_norm(xcv) > schedule.psi_at(ell + 1):
            raise ClaimViolation("c1-distance", "anchors further apart than psi_{ell+1}")
        dist = exact.inf_norm(xcv)
        return PipelineResult(
            case="c1", x_ell=tuple(x_ell), x_star_int=origin, x_star_cont=xcv,
            trace=trace, distance_int=dist, distance_cont=dist,
            schedule=schedule, delta=delta, xc=xcv, xd=origin,
            z_ell=last.z_set)

    # Case c-2.
    zl = last.z_set
    Pbar = restricted_polyhedron(inst, zl)
    cone = build_cone(Pbar.A, x_ell, origin)
    gens = enumerate_generators(cone, delta)
    dec = caratheodory_decompose(list(x_ell), gens)
    xstar = [ZERO] * n
    for g, c in zip(dec.generators, dec.coefficients):
        xstar = exact.vec_add(xstar, exact.vec_scale(Fraction(math.floor(c)), g))
    xstar = tuple(xstar)
    xcont = tuple(exact.vec_sub(xcv, xstar))

    if not exact.is_integral_vec(xstar):
        raise ClaimViolation("xstar-integrality", "rounded point is not integer")
    if exact.inf_norm(exact.vec_sub(x_ell, xstar)) > nd:
        raise ClaimViolation("floor-residual", "||x_ell - x_star|| > n*delta")
    if not contains(Pbar, xstar):
        raise ClaimViolation("xstar-membership", "x_star left the restricted polyhedron")
    nl = last.n_set
    if nl and ell < inst.k:
        thresh = schedule.chi[ell] - nd
        if any(abs(xstar[i]) < thresh for i in nl):
            raise ClaimViolation("xstar-d", "a surviving coordinate is too small")
    zstar = frozenset(i for i in range(inst.k) if xstar[i] == 0)
    if zstar != zl:
        raise ClaimViolation("xstar-e", f"zero sets differ: {sorted(zstar)} vs {sorted(zl)}")
    dist = exact.inf_norm(exact.vec_sub(xcv, xstar))
    if dist > schedule.psi_at(ell) + nd:
        raise ClaimViolation("xstar-f", "||x_c - x_star|| > psi_ell + n*delta")
    if not contains(P, xcont):
        raise ClaimViolation("xstar-g", "x_c - x_star left the polyhedron")

    return PipelineResult(
        case="c2", x_ell=tuple(x_ell), x_star_int=xstar, x_star_cont=xcont,
        trace=trace, distance_int=dist, distance_cont=dist,
        schedule=schedule, delta=delta, xc=xcv, xd=origin,
        z_ell=zl, decomposition=dec)


@dataclass
class MidpointWitnesses:
    x_tri: tuple[Fraction, ...]
    x_l: tuple[Fraction, ...]
    x_r: tuple[Fraction, ...]
    x_dia: tuple[Fraction, ...]


def midpoint_witnesses(inst: Instance, result: PipelineResult) -> MidpointWitnesses:
    """Integer points flanking the half-way point of the rounded output.

    Operates on the normalized problem (discrete anchor at the origin) and
    needs the case c-2 decomposition.  The parity split of the floored
    coefficients gives two lattice points of the restricted polyhedron whose
    midpoint is x_star/2; the fourth witness is the feasible midpoint of the
    continuous anchor and output.
    """
    if result.case != "c2" or result.decomposition is None:
        raise InputError("midpoint witnesses need a case c-2 result")
    n = inst.n
    nd = Fraction(n * result.delta)
    dec = result.decomposition
    x_tri = tuple(x / 2 for x in result.x_star_int)
    xl = [ZERO] * n
    xr = [ZERO] * n
    for g, c in zip(dec.generators, dec.coefficients):
        fl = math.floor(c)
        if fl % 2:
            cl, cr = Fraction(fl - 1, 2), Fraction(fl + 1, 2)
        else:
            cl = cr = Fraction(fl, 2)
        xl = exact.vec_add(xl, exact.vec_scale(cl, g))
        xr = exact.vec_add(xr, exact.vec_scale(cr, g))
    xl, xr = tuple(xl), tuple(xr)
    Pbar = restricted_polyhedron(inst, result.z_ell)
    if not (exact.is_integral_vec(xl) and exact.is_integral_vec(xr)):
        raise ClaimViolation("witness-integrality", "parity split is not integer")
    if tuple((a + b) / 2 for a, b in zip(xl, xr)) != x_tri:
        raise ClaimViolation("witness-midpoint", "parity split misses the midpoint")
    if not (contains(Pbar, xl) and contains(Pbar, xr)):
        raise ClaimViolation("witness-membership", "a witness left the restricted polyhedron")
    if exact.inf_norm(exact.vec_sub(xr, xl)) > nd:
        raise ClaimViolation("witness-span", "||x_r - x_l|| > n*delta")
    x_dia = tuple((a + b) / 2 for a, b in zip(result.xc, result.x_star_cont))
    if not contains(inst.polyhedron(), x_dia):
        raise ClaimViolation("witness-diamond", "continuous midpoint left the polyhedron")
    return MidpointWitnesses(x_tri, xl, xr, x_dia)


def run_pipeline(inst: Instance, eps, xc=None, xd=None,
                 checked: bool = False) -> PipelineResult:
    """End-to-end construction in the instance's original coordinates.

    Anchors default to oracle optima; with checked=True, supplied anchors
    are re-verified against the oracles before anything runs.
    """
    from . import oracles  # local import; oracles build on this module

    if xc is None or xd is None or checked:
        qp = oracles.solve_qp(inst)
        iqp = oracles.solve_iqp(inst)
        if xc is None:
            xc = qp.point
        elif checked and eval_objective(inst, xc) != qp.value:
            raise InputError("supplied continuous anchor is not optimal")
        if xd is None:
            xd = iqp.point
        elif checked and eval_objective(inst, xd) != iqp.value:
            raise InputError("supplied integer anchor is not optimal")
    xcv = tuple(Fraction(v) for v in xc)
    xdv = tuple(Fraction(v) for v in xd)
    P = inst.polyhedron()
    if not contains(P, xcv):
        raise InputError("continuous anchor is infeasible")

    delta = subdeterminant_bound(inst)
    norm_inst, shift = normalize(inst, xdv)
    sched = compute_schedule(inst.n, delta, inst.k, eps)
    yc = tuple(exact.vec_sub(xcv, shift))
    y_ell, trace = build_sequence(norm_inst, yc, sched, delta)
    norm_result = construct_outputs(norm_inst, yc, y_ell, trace, sched, delta)
    if norm_result.case == "c2":
        norm_result.witnesses = midpoint_witnesses(norm_inst, norm_result)

    back = lambda v: tuple(exact.vec_add(v, shift))
    result = replace(
        norm_result,
        x_ell=back(norm_result.x_ell),
        x_star_int=back(norm_result.x_star_int),
        x_star_cont=back(norm_result.x_star_cont),
        xc=xcv, xd=xdv,
        normalized=norm_result)
    if result.distance_int > sched.theorem_bound:
        raise ClaimViolation("theorem-bound", "integer output beyond the proven distance")
    if result.distance_cont > sched.theorem_bound:
        raise ClaimViolation("theorem-bound", "continuous output beyond the proven distance")
    if not exact.is_integral_vec(result.x_star_int):
        raise ClaimViolation("xstar-integrality", "integer output is not integral")
    if not contains(P, result.x_star_int):
        raise ClaimViolation("xstar-feasible", "integer output is infeasible")
    if not contains(P, result.x_star_cont):
        raise ClaimViolation("xstarc-feasible", "continuous output is infeasible")
    return result
