import random
from fractions import Fraction as F

import pytest

from iqprox import exact
from iqprox.cones import (ConicDecomposition, build_cone, caratheodory_decompose,
                          check_two_representations, cone_contains,
                          conic_multipliers, enumerate_generators,
                          in_generated_cone)
from iqprox.errors import (DimensionError, InputError, RepresentationMismatch)
from iqprox.polyhedra import polyhedron


def test_build_cone_partitions_by_sign():
    A = [[1, 0], [0, 1], [1, 1]]
    cone = build_cone(A, [2, -1], [0, 0])
    # row 0: 2 > 0 -> a2;  row 1: -1 < 0 -> a1;  row 2: 1 > 0 -> a2
    assert cone.a1 == ((F(0), F(1)),)
    assert cone.a2 == ((F(1), F(0)), (F(1), F(1)))


def test_build_cone_tie_goes_both_ways():
    cone = build_cone([[1, -1]], [1, 1], [0, 0])
    assert len(cone.a1) == 1 and len(cone.a2) == 1


def test_build_cone_contains_difference():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 3)
        A = [[rng.randint(-2, 2) for _ in range(n)]
             for _ in range(rng.randint(1, 4))]
        xa = [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
        xb = [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
        cone = build_cone(A, xa, xb)
        assert cone_contains(cone, exact.vec_sub(xa, xb))


def test_build_cone_empty_matrix():
    with pytest.raises(DimensionError):
        build_cone([], [1], [0])


def test_generators_halfspace():
    cone = build_cone([[1, -1]], [1, 0], [0, 0])  # {x1 - x2 >= 0}
    gens = enumerate_generators(cone, 1)
    assert set(gens.vectors) == {
        (F(1), F(1)), (F(1), F(0)), (F(0), F(-1)), (F(-1), F(-1))}


def test_generators_orthant():
    A = [[-1, 0], [0, -1]]
    cone = build_cone(A, [1, 1], [0, 0])  # nonnegative orthant
    gens = enumerate_generators(cone, 1)
    assert set(gens.vectors) == {(F(1), F(0)), (F(0), F(1))}


def test_generators_zero_cone():
    A = [[1], [-1]]
    cone = build_cone(A, [0], [0])  # x <= 0 and x >= 0 in both halves
    gens = enumerate_generators(cone, 1)
    assert gens.vectors == ()


def test_generators_need_positive_delta():
    cone = build_cone([[1]], [1], [0])
    with pytest.raises(InputError):
        enumerate_generators(cone, 0)


def test_conic_multipliers_roundtrip():
    cone = build_cone([[1, -1]], [1, 0], [0, 0])
    gens = enumerate_generators(cone, 1)
    target = [F(5, 2), F(1, 3)]
    gamma = conic_multipliers(gens, target)
    assert gamma is not None
    combined = [F(0), F(0)]
    for g, c in zip(gens.vectors, gamma):
        combined = exact.vec_add(combined, exact.vec_scale(c, g))
        assert c >= 0
    assert combined == target


def test_conic_multipliers_outside():
    cone = build_cone([[1, -1]], [1, 0], [0, 0])
    gens = enumerate_generators(cone, 1)
    assert conic_multipliers(gens, [F(0), F(1)]) is None


def test_caratheodory_small():
    cone = build_cone([[1, -1]], [1, 0], [0, 0])
    gens = enumerate_generators(cone, 1)
    dec = caratheodory_decompose([F(3), F(1)], gens)
    assert dec.combine(2) == [F(3), F(1)]
    assert len(dec.generators) <= 2
    assert all(c > 0 for c in dec.coefficients)
    assert exact.rank(list(dec.generators)) == len(dec.generators)


def test_caratheodory_rejects_outsider():
    cone = build_cone([[-1, 0], [0, -1]], [1, 1], [0, 0])
    gens = enumerate_generators(cone, 1)
    with pytest.raises(InputError):
        caratheodory_decompose([F(-1), F(0)], gens)


def test_caratheodory_zero_target():
    cone = build_cone([[1, -1]], [1, 0], [0, 0])
    gens = enumerate_generators(cone, 1)
    dec = caratheodory_decompose([F(0), F(0)], gens)
    assert dec.generators == []


def random_cone(rng):
    n = rng.randint(1, 3)
    m = rng.randint(1, 6)
    A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
    while all(x == 0 for row in A for x in row):
        A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
    xa = [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)]
    xb = [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)]
    delta = max(1, exact.max_abs_subdeterminant(A))
    return build_cone(A, xa, xb), delta, n


def test_generator_membership_equivalence():
    """H-membership of the cone must coincide with conic expressibility."""
    rng = random.Random(31415)
    for _ in range(30):
        cone, delta, n = random_cone(rng)
        gens = enumerate_generators(cone, delta)
        for g in gens:
            assert exact.is_integral_vec(g)
            assert exact.inf_norm(g) <= delta
            assert cone_contains(cone, g)
        for _ in range(25):
            p = [F(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n)]
            assert cone_contains(cone, p) == in_generated_cone(gens, p)


def test_caratheodory_random_recombination():
    rng = random.Random(2718)
    checked = 0
    while checked < 25:
        cone, delta, n = random_cone(rng)
        gens = enumerate_generators(cone, delta)
        if not gens:
            continue
        # build a target inside the cone on purpose
        target = [F(0)] * n
        for g in gens:
            target = exact.vec_add(target,
                                   exact.vec_scale(F(rng.randint(0, 3), rng.randint(1, 2)), g))
        dec = caratheodory_decompose(target, gens)
        assert dec.combine(n) == list(target)
        assert len(dec.generators) <= n
        assert exact.rank(list(dec.generators)) == len(dec.generators)
        checked += 1


def test_check_two_representations():
    P = polyhedron([[-1, 0], [0, -1]], [0, 0])  # nonnegative quadrant
    cone = build_cone(P.A, [2, 1], [0, 0])
    v = (F(1), F(0))
    w = (F(0), F(1))
    pos = ConicDecomposition([v, w], [F(2), F(1)])
    neg = ConicDecomposition([], [])
    assert check_two_representations(P, cone, [0, 0], [2, 1], pos, neg)


def test_check_two_representations_mismatch():
    P = polyhedron([[-1, 0], [0, -1]], [0, 0])
    cone = build_cone(P.A, [2, 1], [0, 0])
    pos = ConicDecomposition([(F(1), F(0))], [F(1)])
    neg = ConicDecomposition([], [])
    with pytest.raises(RepresentationMismatch):
        check_two_representations(P, cone, [0, 0], [2, 1], pos, neg)


def test_check_two_representations_rejects_negative_coeff():
    P = polyhedron([[-1, 0], [0, -1]], [0, 0])
    cone = build_cone(P.A, [2, 1], [0, 0])
    bad = ConicDecomposition([(F(1), F(0))], [F(-1)])
    with pytest.raises(InputError):
        check_two_representations(P, cone, [0, 0], [2, 1], bad, bad)
