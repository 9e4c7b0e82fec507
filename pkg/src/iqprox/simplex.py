"""Exact linear programming over the rationals.

Two-phase primal simplex with Bland's pivot rule (anti-cycling, so
termination is guaranteed).  Variables are free; constraints are `A x <= b`.
Equality constraints are encoded by callers as opposing inequality pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    point: list[Fraction] | None = None
    objective: Fraction | None = None

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


def _pivot(tab, obj, basis, row, col):
    inv = tab[row][col]
    tab[row] = [x / inv for x in tab[row]]
    prow = tab[row]
    for i, trow in enumerate(tab):
        if i != row and trow[col] != 0:
            f = trow[col]
            tab[i] = [x - f * y for x, y in zip(trow, prow)]
    if obj[col] != 0:
        f = obj[col]
        for j in range(len(obj)):
            obj[j] -= f * prow[j]
    basis[row] = col


def _optimize(tab, obj, basis, allowed):
    """Minimize, Bland's rule.  Returns 'optimal' or 'unbounded'."""
    ncols = len(obj) - 1
    while True:
        enter = -1
        for j in range(ncols):
            if allowed[j] and obj[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best = None
        for i, trow in enumerate(tab):
            coeff = trow[enter]
            if coeff > 0:
                ratio = trow[-1] / coeff
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(tab, obj, basis, leave, enter)


def lp_solve(A, b, c, sense: str = "max") -> LpResult:
    """Exact optimum of c.x subject to A x <= b over free x.

    A zero objective turns this into a pure feasibility check.
    """
    m = len(A)
    n = len(c)
    if len(b) != m or any(len(row) != n for row in A):
        raise DimensionError("lp_solve: inconsistent system shape")
    if sense not in ("max", "min"):
        raise ValueError(f"sense must be 'max' or 'min', got {sense!r}")
    # Minimize internally.
    cmin = [Fraction(x) if sense == "min" else -Fraction(x) for x in c]

    if m == 0:
        if all(x == 0 for x in cmin):
            return LpResult("optimal", [ZERO] * n, ZERO)
        return LpResult("unbounded")

    # Standard form: x = xp - xn, slack per row; negate rows with negative rhs
    # and give those rows an artificial variable.
    nstruct = 2 * n + m
    neg = [Fraction(b[i]) < 0 for i in range(m)]
    nart = sum(neg)
    ncols = nstruct + nart
    tab = []
    basis = [0] * m
    art_at = 0
    for i in range(m):
        sgn = -ONE if neg[i] else ONE
        row = [sgn * Fraction(x) for x in A[i]]
        row += [-x for x in row[:n]]
        row += [ZERO] * m
        row[2 * n + i] = sgn
        arts = [ZERO] * nart
        if neg[i]:
            arts[art_at] = ONE
            basis[i] = nstruct + art_at
            art_at += 1
        else:
            basis[i] = 2 * n + i
        tab.append(row + arts + [sgn * Fraction(b[i])])

    allowed = [True] * ncols
    if nart:
        # Phase 1: minimize the artificial sum.
        obj = [ZERO] * (ncols + 1)
        for j in range(nstruct, ncols):
            obj[j] = ONE
        for i in range(m):
            if basis[i] >= nstruct:
                obj = [o - t for o, t in zip(obj, tab[i])]
        _optimize(tab, obj, basis, allowed)
        if -obj[-1] != 0:  # objective value = -obj[-1]
            return LpResult("infeasible")
        # Drive leftover zero-level artificials out of the basis.
        for i in range(m):
            if basis[i] >= nstruct:
                for j in range(nstruct):
                    if tab[i][j] != 0:
                        _pivot(tab, obj, basis, i, j)
                        break
        # Rows still basic in an artificial are redundant; freeze the column.
        for j in range(nstruct, ncols):
            allowed[j] = False

    # Phase 2.
    cost = [ZERO] * (ncols + 1)
    cost[:n] = cmin[:]
    cost[n:2 * n] = [-x for x in cmin]
    obj = cost[:]
    for i in range(m):
        if obj[basis[i]] != 0:
            f = obj[basis[i]]
            obj = [o - f * t for o, t in zip(obj, tab[i])]
    status = _optimize(tab, obj, basis, allowed)
    if status == "unbounded":
        return LpResult("unbounded")
    values = [ZERO] * ncols
    for i in range(m):
        if basis[i] < ncols:
            values[basis[i]] = tab[i][-1]
    x = [values[j] - values[n + j] for j in range(n)]
    objective = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), ZERO)
    return LpResult("optimal", x, objective)


def feasible_point(A, b) -> list[Fraction] | None:
    """A point of {x : A x <= b}, or None when the system is infeasible."""
    n = len(A[0]) if A else 0
    res = lp_solve(A, b, [ZERO] * n, "min")
    return res.point if res.is_optimal else None
