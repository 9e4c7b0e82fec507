import random
from fractions import Fraction as F
from itertools import product

import pytest

from iqprox import exact, polyhedra
from iqprox.errors import DimensionError, UnboundedError
from iqprox.polyhedra import (bounding_box, contains, coordinate_range,
                              enumerate_faces, enumerate_lattice_points,
                              enumerate_vertices, intersect_with_box, is_empty,
                              polyhedron, tight_rows)


def square(r=2):
    return polyhedron([[1, 0], [-1, 0], [0, 1], [0, -1]], [r, r, r, r])


def triangle():
    # x >= 0, y >= 0, x + y <= 2
    return polyhedron([[-1, 0], [0, -1], [1, 1]], [0, 0, 2])


def test_builder_validation():
    with pytest.raises(DimensionError):
        polyhedron([[1, 2]], [1, 2])
    with pytest.raises(DimensionError):
        polyhedron([], [])


def test_contains_and_tight_rows():
    P = triangle()
    assert contains(P, [F(1), F(1)])
    assert not contains(P, [F(2), F(1)])
    assert tight_rows(P, [F(0), F(2)]) == frozenset({0, 2})


def test_coordinate_range():
    P = triangle()
    assert coordinate_range(P, 0) == (F(0), F(2))


def test_coordinate_range_unbounded():
    P = polyhedron([[-1]], [0])
    with pytest.raises(UnboundedError):
        coordinate_range(P, 0)


def test_empty():
    P = polyhedron([[1], [-1]], [-1, 0])
    assert is_empty(P)
    assert bounding_box(P) is None
    assert enumerate_vertices(P) == []
    assert enumerate_lattice_points(P) == []


def test_vertices_triangle():
    verts = enumerate_vertices(triangle())
    pts = [v.point for v in verts]
    assert pts == [(F(0), F(0)), (F(0), F(2)), (F(2), F(0))]


def test_vertices_rational():
    P = polyhedron([[2, 0], [-1, 0], [0, 1], [0, -1]], [1, 0, 1, 0])
    pts = [v.point for v in enumerate_vertices(P)]
    assert (F(1, 2), F(0)) in pts


def test_lattice_points_square():
    pts = enumerate_lattice_points(square(2))
    assert len(pts) == 25
    assert pts[0] == (F(-2), F(-2))
    assert pts == sorted(pts)


def test_lattice_points_match_box_scan():
    rng = random.Random(99)
    for _ in range(30):
        n = rng.randint(1, 3)
        rows, rhs = [], []
        for i in range(n):
            e = [F(0)] * n
            e[i] = F(1)
            rows.append(list(e))
            rhs.append(F(3))
            rows.append([-x for x in e])
            rhs.append(F(3))
        for _ in range(rng.randint(0, 3)):
            row = [F(rng.randint(-2, 2)) for _ in range(n)]
            rows.append(row)
            rhs.append(F(rng.randint(-2, 4)))
        P = polyhedron(rows, rhs, n)
        got = enumerate_lattice_points(P)
        want = [tuple(map(F, p)) for p in product(range(-3, 4), repeat=n)
                if contains(P, list(map(F, p)))]
        assert got == sorted(want)


def test_faces_of_triangle():
    faces = enumerate_faces(triangle())
    dims = sorted(f.dim for f in faces)
    # one 2-face, three edges, three vertices
    assert dims == [0, 0, 0, 1, 1, 1, 2]
    full = [f for f in faces if f.equality_rows == frozenset()]
    assert full[0].dim == 2


def test_faces_detect_implied_equality():
    # x <= 1 and x >= 1 force equality even when not requested
    P = polyhedron([[1], [-1]], [1, -1])
    faces = enumerate_faces(P)
    assert len(faces) == 1
    assert faces[0].dim == 0


def test_intersect_with_box():
    P = square(5)
    Q = intersect_with_box(P, [F(0), F(0)], F(1))
    assert contains(Q, [F(1), F(1)])
    assert not contains(Q, [F(2), F(0)])
    assert exact.max_abs_subdeterminant(Q.A) == exact.max_abs_subdeterminant(P.A)


def test_intersect_with_box_negative_radius():
    with pytest.raises(ValueError):
        intersect_with_box(square(), [F(0), F(0)], F(-1))


def test_vertex_tight_rows_have_full_rank():
    for P in (triangle(), square(3)):
        for v in enumerate_vertices(P):
            rows = [list(P.A[i]) for i in v.tight_rows]
            assert exact.rank(rows) == P.n
