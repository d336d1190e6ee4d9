import random
from fractions import Fraction
from itertools import combinations, product
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from latnum.bodies import cross, cube, diamond, hexagon, random_generators, random_symmetric_lattice_polytope, simplex
from latnum.davenport import (ParallelepipedSpec, coefficient_cross_check, davenport_bound_check,
                              equality_characterization, projection_coefficient, tile_bound_check,
                              volume_polynomial)
from latnum.lattice import count
from latnum.polytope import box, hull, coordinate_section, minkowski_sum, parallelepiped, volume

F = Fraction
seeds = st.integers(0, 2 ** 32)
UNIT2 = ParallelepipedSpec.unit_cell(2)


def coeffs(K, P):
    return {J: c for J, c in volume_polynomial(K, P).coefficients.items()}


def test_volume_polynomial_examples():
    assert coeffs(box((0, 0), (1, 1)), UNIT2) == {(): 1, (0,): 1, (1,): 1, (0, 1): 1}
    assert coeffs(cube(2), UNIT2) == {(): 4, (0,): 2, (1,): 2, (0, 1): 1}
    d = volume_polynomial(hexagon(), UNIT2)
    assert d.coefficients == {(): 3, (0,): 2, (1,): 2, (0, 1): 1}
    assert d.total == 8


def test_bound_check_examples():
    c = davenport_bound_check(cube(2), UNIT2)
    assert (c.lhs, c.rhs, c.holds, c.equality) == (9, 9, True, True)
    c = davenport_bound_check(hexagon(), UNIT2)
    assert (c.lhs, c.rhs, c.holds, c.equality) == (7, 8, True, False)
    P2 = ParallelepipedSpec([[2, 0], [0, 2]])
    c = davenport_bound_check(box((0, 0), (1, 1)), P2)
    assert (c.lhs, c.rhs, c.holds, c.equality) == (4, 9, True, False)


def test_equality_characterization_examples():
    assert equality_characterization(cube(2), UNIT2)
    assert not equality_characterization(hexagon(), UNIT2)
    assert not equality_characterization(box((0, 0), (1, 1)), ParallelepipedSpec([[2, 0], [0, 2]]))


def test_tile_bound_examples():
    c = tile_bound_check(box((0, 0), (2, 2)), UNIT2)
    assert (c.lhs, c.rhs, c.equality) == (9, 9, True)
    c = tile_bound_check(simplex(2), UNIT2)
    assert (c.lhs, c.rhs, c.holds, c.equality) == (3, F(7, 2), True, False)
    c = tile_bound_check(hexagon(), UNIT2)
    assert (c.lhs, c.rhs, c.holds, c.equality) == (7, 8, True, False)


def test_coefficient_cross_check_examples():
    assert projection_coefficient(cube(2), [0]) == 2 and coefficient_cross_check(cube(2), [0])
    assert projection_coefficient(hexagon(), [1]) == 2 and coefficient_cross_check(hexagon(), [1])
    assert projection_coefficient(cross(3, 2), [0]) == 2 and coefficient_cross_check(cross(3, 2), [0])


def test_invalid_generators_rejected():
    with pytest.raises(ValueError):
        ParallelepipedSpec([[1, 2], [2, 4]])
    with pytest.raises(ValueError):
        ParallelepipedSpec([[1, 0, 0], [0, 1, 0]])


@settings(max_examples=20)
@given(seeds, st.integers(2, 3))
def test_multilinearity_witness(seed, n):
    rng = random.Random(seed)
    K = random_symmetric_lattice_polytope(rng, n, 3)
    scales = [rng.randint(1, 3) for _ in range(n)]
    P = ParallelepipedSpec([[s * (i == j) for j in range(n)] for i, s in enumerate(scales)])
    d = volume_polynomial(K, P)
    for t in product(range(3), repeat=n):
        gens = [[t[i] * s * (i == j) for j in range(n)] for i, s in enumerate(scales)]
        assert volume(minkowski_sum(K, parallelepiped(gens))) == d.evaluate(t)


@settings(max_examples=30)
@given(seeds, st.integers(2, 4))
def test_decomposition_invariants(seed, n):
    rng = random.Random(seed)
    K = random_symmetric_lattice_polytope(rng, n, 3)
    P = ParallelepipedSpec(random_generators(rng, n, 2))
    d = volume_polynomial(K, P)
    assert all(c >= 0 for c in d.coefficients.values())
    assert d.coefficients[()] == volume(K)
    assert d.coefficients[tuple(range(n))] == P.index
    assert d.total == volume(minkowski_sum(K, P.polytope()))
    chk = davenport_bound_check(K, P, d)
    assert chk.holds and chk.lhs == count(K).total
    assert chk.equality == equality_characterization(K, P)


@settings(max_examples=30)
@given(seeds, st.integers(2, 4))
def test_symmetric_section_lower_bound(seed, n):
    # a symmetric K containing +-e_j has vol_i(K cap L_J) >= 2^i / i!
    rng = random.Random(seed)
    K = random_symmetric_lattice_polytope(rng, n, 3)
    K = hull(list(K.vertices) + list(diamond(n).vertices))
    for i in range(1, n + 1):
        for J in combinations(range(n), i):
            assert volume(coordinate_section(K, J)) >= F(2 ** i, factorial(i))
