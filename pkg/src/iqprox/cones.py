"""Row-sign cones, integer generator sets, and conic decompositions.

The cone of a matrix A and two points splits the rows of A by the sign of
u.(xa - xb); ties land on both sides.  Generators are enumerated orthant by
orthant as primitive integer extreme rays, which keeps every generator's
infinity norm within the subdeterminant bound of the source matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from . import exact
from .errors import DimensionError, InputError, RepresentationMismatch
from .polyhedra import Polyhedron, contains
from .simplex import lp_solve

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ProximityCone:
    """{x : A1 x <= 0, A2 x >= 0} from the row partition of a matrix."""

    a1: tuple[tuple[Fraction, ...], ...]
    a2: tuple[tuple[Fraction, ...], ...]
    ambient_dim: int


@dataclass(frozen=True)
class GeneratorSet:
    vectors: tuple[tuple[Fraction, ...], ...]

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)


@dataclass
class ConicDecomposition:
    """target = sum_i coefficients[i] * generators[i], all coefficients > 0."""

    generators: list[tuple[Fraction, ...]] = field(default_factory=list)
    coefficients: list[Fraction] = field(default_factory=list)

    def combine(self, n: int) -> list[Fraction]:
        out = [ZERO] * n
        for g, c in zip(self.generators, self.coefficients):
            out = [o + c * gi for o, gi in zip(out, g)]
        return out


def build_cone(A, xa, xb) -> ProximityCone:
    """Partition the rows of A by the sign of u.(xa - xb); ties go to both."""
    if not A:
        raise DimensionError("cone needs at least one row")
    n = len(A[0])
    if len(xa) != n or len(xb) != n:
        raise DimensionError("point dimension does not match matrix columns")
    xav = exact.vec(xa)
    xbv = exact.vec(xb)
    a1, a2 = [], []
    for row in A:
        r = tuple(Fraction(x) for x in row)
        lhs = exact.dot(r, xav)
        rhs = exact.dot(r, xbv)
        if lhs <= rhs:
            a1.append(r)
        if lhs >= rhs:
            a2.append(r)
    return ProximityCone(tuple(a1), tuple(a2), n)


def cone_contains(cone: ProximityCone, x) -> bool:
    xv = exact.vec(x)
    if len(xv) != cone.ambient_dim:
        raise DimensionError("point dimension mismatch")
    return (all(exact.dot(r, xv) <= 0 for r in cone.a1)
            and all(exact.dot(r, xv) >= 0 for r in cone.a2))


def enumerate_generators(cone: ProximityCone, delta: int) -> GeneratorSet:
    """Integer generator set of the cone, infinity norm at most delta.

    For each orthant, extreme rays of the pointed piece are found by setting
    n-1 linearly independent constraints (cone rows or orthant coordinate
    planes) to equality; each ray is scaled to the primitive integer vector
    with the orthant's orientation.
    """
    if delta < 1:
        raise InputError("delta must be a positive integer")
    n = cone.ambient_dim
    hyperplanes = [list(r) for r in cone.a1] + [list(r) for r in cone.a2]
    for i in range(n):
        e = [ZERO] * n
        e[i] = ONE
        hyperplanes.append(e)
    found = set()
    for signs in product((1, -1), repeat=n):
        for S in combinations(range(len(hyperplanes)), n - 1):
            M = [hyperplanes[i] for i in S]
            if exact.rank(M) != n - 1:
                continue
            ns = exact.null_space(M, n)
            if len(ns) != 1:
                continue
            for r in (ns[0], [-x for x in ns[0]]):
                if all(s * x >= 0 for s, x in zip(signs, r)) and cone_contains(cone, r):
                    g = tuple(exact.primitive_integer_vector(r))
                    if any(g):
                        if exact.inf_norm(g) > delta:
                            raise AssertionError(
                                f"generator {g} exceeds the subdeterminant bound {delta}")
                        found.add(g)
    return GeneratorSet(tuple(sorted(found)))


def conic_multipliers(gens: GeneratorSet, target) -> list[Fraction] | None:
    """Nonnegative gamma with sum gamma_i v_i = target, or None."""
    vs = list(gens.vectors)
    n = len(target)
    if not vs:
        return [] if all(Fraction(t) == 0 for t in target) else None
    k = len(vs)
    rows, rhs = [], []
    for j in range(k):
        r = [ZERO] * k
        r[j] = -ONE
        rows.append(r)
        rhs.append(ZERO)
    for i in range(n):
        r = [Fraction(v[i]) for v in vs]
        rows.append(r)
        rhs.append(Fraction(target[i]))
        rows.append([-x for x in r])
        rhs.append(-Fraction(target[i]))
    res = lp_solve(rows, rhs, [ZERO] * k, "min")
    return res.point if res.is_optimal else None


def in_generated_cone(gens: GeneratorSet, target) -> bool:
    return conic_multipliers(gens, target) is not None


def caratheodory_decompose(target, gens: GeneratorSet) -> ConicDecomposition:
    """Positive combination of linearly independent generators hitting target.

    Starts from any feasible conic combination and repeatedly shifts along a
    null-space direction of the support until some coefficient reaches zero
    (ties broken by smallest index), leaving at most n independent
    generators.
    """
    gamma = conic_multipliers(gens, target)
    if gamma is None:
        raise InputError("target is not in the cone of the generator set")
    vs = list(gens.vectors)
    support = [(vs[j], gamma[j]) for j in range(len(vs)) if gamma[j] > 0]
    while True:
        cols = [g for g, _ in support]
        if not cols:
            break
        M = exact.transpose(cols)  # n x m, columns are generators
        ns = exact.null_space(M, len(cols))
        if not ns:
            break
        c = ns[0]
        if all(ci <= 0 for ci in c):
            c = [-ci for ci in c]
        step = None
        hit = -1
        for j, cj in enumerate(c):
            if cj > 0:
                t = support[j][1] / cj
                if step is None or t < step:
                    step = t
                    hit = j
        support = [(g, a - step * cj) for (g, a), cj in zip(support, c)]
        assert support[hit][1] == 0
        support = [(g, a) for g, a in support if a != 0]
    return ConicDecomposition([g for g, _ in support], [a for _, a in support])


def check_two_representations(P: Polyhedron, cone: ProximityCone,
                              x1, x2,
                              pos_combo: ConicDecomposition,
                              neg_combo: ConicDecomposition) -> bool:
    """Certificate check: x1 + sum(alpha v) == x2 - sum(beta v), in P.

    A disagreement between the two expressions raises RepresentationMismatch;
    membership failure of the common point returns False.
    """
    for combo in (pos_combo, neg_combo):
        for g, c in zip(combo.generators, combo.coefficients):
            if c < 0:
                raise InputError("combination coefficients must be nonnegative")
            if not cone_contains(cone, g):
                raise InputError(f"generator {g} is not in the cone")
    n = P.n
    p1 = exact.vec_add(exact.vec(x1), pos_combo.combine(n))
    p2 = exact.vec_sub(exact.vec(x2), neg_combo.combine(n))
    if p1 != p2:
        raise RepresentationMismatch(f"representations differ: {p1} vs {p2}")
    return contains(P, p1)
