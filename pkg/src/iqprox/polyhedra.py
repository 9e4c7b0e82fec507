"""H-representation polyhedra: membership, vertices, faces, lattice points.

All enumeration routines assume desk-scale inputs and verify boundedness
before enumerating, raising UnboundedError otherwise.  Outputs are
canonically ordered (lexicographic) so results are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import exact
from .errors import DimensionError, UnboundedError
from .simplex import lp_solve

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Polyhedron:
    """{x in R^n : A x <= b} with exact rational data."""

    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    n: int

    @property
    def m(self) -> int:
        return len(self.A)


def polyhedron(A, b, n: int | None = None) -> Polyhedron:
    rows = tuple(tuple(Fraction(x) for x in row) for row in A)
    rhs = tuple(Fraction(x) for x in b)
    if len(rows) != len(rhs):
        raise DimensionError("row/rhs count mismatch")
    if n is None:
        if not rows:
            raise DimensionError("ambient dimension required for empty system")
        n = len(rows[0])
    if any(len(row) != n for row in rows):
        raise DimensionError("inconsistent row lengths")
    if n < 1:
        raise DimensionError("ambient dimension must be >= 1")
    return Polyhedron(rows, rhs, n)


@dataclass(frozen=True)
class Vertex:
    point: tuple[Fraction, ...]
    tight_rows: frozenset[int]


@dataclass(frozen=True)
class Face:
    """A nonempty face, identified by its maximal equality row set."""

    equality_rows: frozenset[int]
    dim: int


def contains(P: Polyhedron, x) -> bool:
    if len(x) != P.n:
        raise DimensionError(f"point has dim {len(x)}, polyhedron has {P.n}")
    xv = [Fraction(v) for v in x]
    return all(exact.dot(row, xv) <= bi for row, bi in zip(P.A, P.b))


def tight_rows(P: Polyhedron, x) -> frozenset[int]:
    xv = [Fraction(v) for v in x]
    return frozenset(i for i in range(P.m) if exact.dot(P.A[i], xv) == P.b[i])


def coordinate_range(P: Polyhedron, i: int) -> tuple[Fraction, Fraction] | None:
    """Exact [min, max] of x_i over P; None if P is empty; raises if unbounded."""
    obj = [ZERO] * P.n
    obj[i] = ONE
    hi = lp_solve(P.A, P.b, obj, "max")
    if hi.status == "infeasible":
        return None
    lo = lp_solve(P.A, P.b, obj, "min")
    if hi.status == "unbounded" or lo.status == "unbounded":
        raise UnboundedError(f"coordinate {i} is unbounded")
    return lo.objective, hi.objective


def is_empty(P: Polyhedron) -> bool:
    return lp_solve(P.A, P.b, [ZERO] * P.n, "min").status == "infeasible"


def bounding_box(P: Polyhedron) -> list[tuple[Fraction, Fraction]] | None:
    """Per-coordinate exact ranges; None for empty P; raises UnboundedError."""
    box = []
    for i in range(P.n):
        rng = coordinate_range(P, i)
        if rng is None:
            return None
        box.append(rng)
    return box


def assert_bounded(P: Polyhedron):
    bounding_box(P)  # raises UnboundedError when any direction escapes


def enumerate_vertices(P: Polyhedron) -> list[Vertex]:
    """All vertices, via nonsingular n-row subsets, deduplicated by point."""
    if bounding_box(P) is None:
        return []
    seen = {}
    for rows in combinations(range(P.m), P.n):
        M = [list(P.A[i]) for i in rows]
        rhs = [P.b[i] for i in rows]
        x = exact.solve_linear(M, rhs)
        if x is None:
            continue
        pt = tuple(x)
        if pt not in seen and contains(P, pt):
            seen[pt] = Vertex(pt, tight_rows(P, pt))
    return [seen[p] for p in sorted(seen)]


def enumerate_lattice_points(P: Polyhedron) -> list[tuple[Fraction, ...]]:
    """All integer points of a bounded P, in lexicographic order.

    Walks the integer grid of the exact bounding box coordinate by
    coordinate, narrowing the interval of each next coordinate by interval
    propagation over the rows, and keeps exactly the points with A x <= b.
    """
    box = bounding_box(P)
    if box is None:
        return []
    lo = [math.ceil(a) for a, _ in box]
    hi = [math.floor(b) for _, b in box]
    out = []
    prefix: list[Fraction] = []

    def narrowed(j: int) -> tuple[int, int]:
        # Bounds for x_j given fixed prefix x_0..x_{j-1} and box tails.
        lo_j, hi_j = lo[j], hi[j]
        for row, bi in zip(P.A, P.b):
            c = row[j]
            if c == 0:
                continue
            slack = bi - sum(row[t] * prefix[t] for t in range(j))
            for t in range(j + 1, P.n):
                a = row[t]
                if a > 0:
                    slack -= a * box[t][0]
                elif a < 0:
                    slack -= a * box[t][1]
            if c > 0:
                hi_j = min(hi_j, math.floor(slack / c))
            else:
                lo_j = max(lo_j, math.ceil(slack / c))
        return lo_j, hi_j

    def rec(j: int):
        if j == P.n:
            pt = tuple(prefix)
            if contains(P, pt):
                out.append(pt)
            return
        a, b = narrowed(j)
        for v in range(a, b + 1):
            prefix.append(Fraction(v))
            rec(j + 1)
            prefix.pop()

    rec(0)
    return out


def enumerate_faces(P: Polyhedron) -> list[Face]:
    """Every nonempty face of a small bounded P.

    Each subset of rows forced to equality yields a face; faces are
    deduplicated by their maximal equality set.  Includes P itself and all
    vertices.
    """
    assert_bounded(P)
    if is_empty(P):
        return []
    faces: dict[frozenset[int], int] = {}
    infeasible: list[frozenset[int]] = []

    def face_system(S):
        rows = [list(r) for r in P.A]
        rhs = list(P.b)
        for i in S:
            rows.append([-c for c in P.A[i]])
            rhs.append(-P.b[i])
        return rows, rhs

    for size in range(P.m + 1):
        for S in combinations(range(P.m), size):
            Sset = frozenset(S)
            if any(bad <= Sset for bad in infeasible):
                continue
            rows, rhs = face_system(Sset)
            if lp_solve(rows, rhs, [ZERO] * P.n, "min").status == "infeasible":
                infeasible.append(Sset)
                continue
            # Maximal equality set: row i is forced iff min a_i.x over the
            # face equals b_i.
            eq = set(Sset)
            for i in range(P.m):
                if i in eq:
                    continue
                res = lp_solve(rows, rhs, list(P.A[i]), "min")
                if res.objective == P.b[i]:
                    eq.add(i)
            E = frozenset(eq)
            if E not in faces:
                eq_rows = [list(P.A[i]) for i in sorted(E)]
                faces[E] = P.n - exact.rank(eq_rows)
    return sorted((Face(E, d) for E, d in faces.items()),
                  key=lambda f: (len(f.equality_rows), sorted(f.equality_rows)))


def intersect_with_box(P: Polyhedron, center, radius) -> Polyhedron:
    """P intersected with {x : |x_i - center_i| <= radius for all i}.

    Appended rows are +-identity, so the subdeterminant bound of the
    constraint matrix is preserved.
    """
    r = Fraction(radius)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    rows = [list(row) for row in P.A]
    rhs = list(P.b)
    for i in range(P.n):
        e = [ZERO] * P.n
        e[i] = ONE
        rows.append(e)
        rhs.append(Fraction(center[i]) + r)
        rows.append([-x for x in e])
        rhs.append(-(Fraction(center[i]) - r))
    return polyhedron(rows, rhs, P.n)
