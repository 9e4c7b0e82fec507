import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from iqprox import exact
from iqprox.errors import DimensionError
from iqprox.simplex import feasible_point, lp_solve


def brute_force_max(A, b, c):
    """Oracle: max c.x over all basic feasible points (vertex enumeration).

    Only valid when the LP is bounded, which the callers arrange by
    including box rows.
    """
    n = len(c)
    best = None
    for rows in combinations(range(len(A)), n):
        M = [list(A[i]) for i in rows]
        rhs = [F(b[i]) for i in rows]
        x = exact.solve_linear(M, rhs)
        if x is None:
            continue
        if all(exact.dot(row, x) <= bi for row, bi in zip(A, b)):
            v = exact.dot(c, x)
            if best is None or v > best:
                best = v
    return best


def box(n, r):
    A, b = [], []
    for i in range(n):
        e = [F(0)] * n
        e[i] = F(1)
        A.append(list(e))
        b.append(F(r))
        A.append([-x for x in e])
        b.append(F(r))
    return A, b


def test_simple_max():
    A, b = box(2, 5)
    res = lp_solve(A, b, [F(1), F(2)], "max")
    assert res.is_optimal
    assert res.objective == 15
    assert res.point == [F(5), F(5)]


def test_min_is_negated_max():
    A, b = box(2, 3)
    res = lp_solve(A, b, [F(1), F(0)], "min")
    assert res.objective == -3


def test_infeasible():
    A = [[F(1)], [F(-1)]]
    b = [F(-1), F(0)]  # x <= -1 and x >= 0
    assert lp_solve(A, b, [F(1)], "max").status == "infeasible"
    assert feasible_point(A, b) is None


def test_unbounded():
    res = lp_solve([[F(-1)]], [F(0)], [F(1)], "max")
    assert res.status == "unbounded"


def test_no_constraints_zero_objective():
    res = lp_solve([], [], [F(0), F(0)], "min")
    assert res.is_optimal


def test_bad_sense():
    with pytest.raises(ValueError):
        lp_solve([[F(1)]], [F(1)], [F(1)], "maximize")


def test_shape_mismatch():
    with pytest.raises(DimensionError):
        lp_solve([[1, 2]], [1], [1])


def test_degenerate_vertex():
    # three constraints through one point; Bland's rule must not cycle
    A = [[F(1), F(0)], [F(0), F(1)], [F(1), F(1)], [F(-1), F(0)], [F(0), F(-1)]]
    b = [F(1), F(1), F(2), F(0), F(0)]
    res = lp_solve(A, b, [F(1), F(1)], "max")
    assert res.objective == 2


def test_rational_data():
    A = [[F(2, 3)], [F(-1)]]
    b = [F(1, 2), F(0)]
    res = lp_solve(A, b, [F(1)], "max")
    assert res.objective == F(3, 4)


def test_equality_via_opposing_rows():
    A = [[F(1), F(1)], [F(-1), F(-1)], [F(-1), F(0)], [F(0), F(-1)]]
    b = [F(1), F(-1), F(0), F(0)]
    res = lp_solve(A, b, [F(1), F(0)], "max")
    assert res.objective == 1


def test_random_against_vertex_oracle():
    rng = random.Random(20240817)
    for trial in range(120):
        n = rng.randint(1, 3)
        A, b = box(n, 4)
        for _ in range(rng.randint(0, 4)):
            row = [F(rng.randint(-3, 3)) for _ in range(n)]
            if all(x == 0 for x in row):
                continue
            A.append(row)
            b.append(F(rng.randint(-2, 6)))
        c = [F(rng.randint(-3, 3)) for _ in range(n)]
        res = lp_solve(A, b, c, "max")
        oracle = brute_force_max(A, b, c)
        if oracle is None:
            assert res.status == "infeasible", (trial, A, b)
        else:
            assert res.is_optimal, (trial, A, b)
            assert res.objective == oracle, (trial, A, b, c)
            assert all(exact.dot(row, res.point) <= bi
                       for row, bi in zip(A, b))
