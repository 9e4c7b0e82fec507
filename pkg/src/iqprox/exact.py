"""Exact rational linear algebra.

Everything is a ``fractions.Fraction``; there is no floating point anywhere in
this package.  Vectors are lists of fractions, matrices are lists of rows.
Determinants of integer matrices use fraction-free (Bareiss) elimination to
keep intermediate values small; rational matrices fall back to plain exact
Gaussian elimination.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

from .errors import DimensionError, DomainError

Rat = Fraction


def rat(x) -> Fraction:
    """Coerce ints, strings like '3/4', or fractions to Fraction."""
    return Fraction(x)


def vec(xs) -> list[Fraction]:
    return [Fraction(x) for x in xs]


def mat(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def zeros(n: int) -> list[Fraction]:
    return [Fraction(0)] * n


def is_integral(x: Fraction) -> bool:
    return Fraction(x).denominator == 1


def is_integral_vec(v) -> bool:
    return all(is_integral(x) for x in v)


def is_integral_mat(M) -> bool:
    return all(is_integral(x) for row in M for x in row)


def dot(u, v) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"dot: {len(u)} vs {len(v)}")
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def matvec(M, v) -> list[Fraction]:
    return [dot(row, v) for row in M]


def vec_add(u, v) -> list[Fraction]:
    if len(u) != len(v):
        raise DimensionError(f"vec_add: {len(u)} vs {len(v)}")
    return [Fraction(a) + Fraction(b) for a, b in zip(u, v)]


def vec_sub(u, v) -> list[Fraction]:
    if len(u) != len(v):
        raise DimensionError(f"vec_sub: {len(u)} vs {len(v)}")
    return [Fraction(a) - Fraction(b) for a, b in zip(u, v)]


def vec_scale(c, v) -> list[Fraction]:
    c = Fraction(c)
    return [c * Fraction(x) for x in v]


def inf_norm(v) -> Fraction:
    return max((abs(Fraction(x)) for x in v), default=Fraction(0))


def transpose(M) -> list[list[Fraction]]:
    return [list(col) for col in zip(*M)] if M else []


def _check_square(M):
    n = len(M)
    if any(len(row) != n for row in M):
        raise DimensionError("matrix is not square")
    return n


def _det_bareiss(M: list[list[int]]) -> int:
    """Fraction-free elimination; M entries must be Python ints."""
    n = len(M)
    if n == 0:
        return 1
    a = [row[:] for row in M]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
            a[r][i] = 0
        prev = a[i][i]
    return sign * a[n - 1][n - 1]


def _det_gauss(M) -> Fraction:
    n = len(M)
    a = [[Fraction(x) for x in row] for row in M]
    detval = Fraction(1)
    for i in range(n):
        pivot = None
        for r in range(i, n):
            if a[r][i] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != i:
            a[i], a[pivot] = a[pivot], a[i]
            detval = -detval
        detval *= a[i][i]
        inv = a[i][i]
        for r in range(i + 1, n):
            if a[r][i] != 0:
                factor = a[r][i] / inv
                for c in range(i, n):
                    a[r][c] -= factor * a[i][c]
    return detval


def det(M) -> Fraction:
    """Exact determinant of a square matrix."""
    _check_square(M)
    if is_integral_mat(M):
        return Fraction(_det_bareiss([[int(Fraction(x)) for x in row] for row in M]))
    return _det_gauss(M)


def max_abs_subdeterminant(M) -> int:
    """Largest |det| over all square submatrices of an integer matrix.

    Exhaustive over row/column subsets; intended for desk-scale inputs only.
    Returns 0 exactly when the matrix is all-zero (or empty).
    """
    value, _, _ = max_abs_subdeterminant_witness(M)
    return value


def max_abs_subdeterminant_witness(M) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Like max_abs_subdeterminant, also returning witness row/col indices."""
    if not is_integral_mat(M):
        raise DomainError("subdeterminants are defined here for integer matrices only")
    m = len(M)
    n = len(M[0]) if m else 0
    a = [[int(Fraction(x)) for x in row] for row in M]
    best, best_rows, best_cols = 0, (), ()
    for size in range(1, min(m, n) + 1):
        for rows in combinations(range(m), size):
            for cols in combinations(range(n), size):
                sub = [[a[r][c] for c in cols] for r in rows]
                d = abs(_det_bareiss(sub))
                if d > best:
                    best, best_rows, best_cols = d, rows, cols
    return best, best_rows, best_cols


def solve_linear(M, rhs) -> list[Fraction] | None:
    """Solve M x = rhs exactly for square M; None when singular."""
    n = _check_square(M)
    if len(rhs) != n:
        raise DimensionError(f"solve_linear: rhs length {len(rhs)} vs {n}")
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(M)]
    for i in range(n):
        pivot = None
        for r in range(i, n):
            if a[r][i] != 0:
                pivot = r
                break
        if pivot is None:
            return None
        if pivot != i:
            a[i], a[pivot] = a[pivot], a[i]
        inv = a[i][i]
        a[i] = [x / inv for x in a[i]]
        for r in range(n):
            if r != i and a[r][i] != 0:
                factor = a[r][i]
                a[r] = [x - factor * y for x, y in zip(a[r], a[i])]
    return [a[i][n] for i in range(n)]


def _rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rref, pivot column indices)."""
    a = [[Fraction(x) for x in row] for row in M]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        pivot = None
        for i in range(r, m):
            if a[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                factor = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(M) -> int:
    if not M:
        return 0
    _, pivots = _rref(M)
    return len(pivots)


def null_space(M, n: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : M x = 0}.  For an empty M, the ambient dim n is required."""
    if not M:
        if n is None:
            raise DimensionError("null_space of empty matrix needs ambient dimension")
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    ncols = len(M[0])
    a, pivots = _rref(M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -a[r][f]
        basis.append(v)
    return basis


def primitive_integer_vector(v) -> list[Fraction]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    denoms = [Fraction(x).denominator for x in v]
    mult = lcm(*denoms) if denoms else 1
    ints = [int(Fraction(x) * mult) for x in v]
    g = gcd(*ints) if any(ints) else 1
    if g == 0:
        g = 1
    return [Fraction(x // g) for x in ints]
