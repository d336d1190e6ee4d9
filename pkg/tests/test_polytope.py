import math
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from latnum.bodies import cross, cube, diamond, hexagon, random_symmetric_lattice_polytope, random_unimodular, simplex
from latnum.polytope import (box, coordinate_projection, coordinate_section, facets, hull, is_centrally_symmetric,
                             linear_image, minkowski_sum, polar, translate, triangulate, volume)

F = Fraction
seeds = st.integers(0, 2 ** 32)


def pts(*vs):
    return {tuple(F(x) for x in v) for v in vs}


def shoelace(points):
    c = [sum(p[i] for p in points) / len(points) for i in range(2)]
    ring = sorted(points, key=lambda p: math.atan2(float(p[1] - c[1]), float(p[0] - c[0])))
    return abs(sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(ring, ring[1:] + ring[:1]))) / 2


def cone_volume_3d(p):
    """Sum of pyramids from an interior point over the facets; facet areas by shoelace after a coordinate drop."""
    c = [sum(v[i] for v in p.vertices) / len(p.vertices) for i in range(3)]
    total = F(0)
    for a, b in facets(p).inequalities:
        on = [v for v in p.vertices if sum(x * y for x, y in zip(a, v)) == b]
        k = max(range(3), key=lambda i: abs(a[i]))
        keep = [i for i in range(3) if i != k]
        area = shoelace([tuple(v[i] for i in keep) for v in on])
        h = b - sum(x * y for x, y in zip(a, c))
        total += h * area / abs(a[k]) / 3
    return total


def test_hull_examples():
    assert set(hull([(0, 0), (1, 0), (0, 1), ("1/4", "1/4")]).vertices) == pts((0, 0), (1, 0), (0, 1))
    assert len(hexagon().vertices) == 6
    assert set(hull([(0, 0), (1, 0), (2, 0)]).vertices) == pts((0, 0), (2, 0))


def test_facets_examples():
    assert len(facets(box((0, 0), (1, 1))).inequalities) == 4
    hx = {(tuple(a), b) for a, b in facets(hexagon()).inequalities}
    assert hx == {((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1), ((1, -1), 1), ((-1, 1), 1)}
    sx = {(tuple(a), b) for a, b in facets(simplex(2)).inequalities}
    assert sx == {((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)}
    with pytest.raises(ValueError):
        facets(hull([(0, 0), (1, 1)]))


def test_volume_examples():
    assert volume(cube(2)) == 4
    assert volume(hexagon()) == 3
    assert volume(cross(3, 2)) == F(8, 3)
    assert volume(hull([(0, 0), (3, 4)])) == 5  # a segment, induced measure
    assert volume(hull([(1, 2)])) == 1


def test_minkowski_examples():
    K = hexagon()
    assert minkowski_sum(K, hull([(0, 0)])) == K
    sq = box((0, 0), (1, 1))
    assert minkowski_sum(sq, sq) == box((0, 0), (2, 2))
    # the triangle plus the unit square is a hexagon of area 1/2 + 1 + 1 + 1
    assert volume(minkowski_sum(simplex(2), sq)) == F(7, 2)
    with pytest.raises(ValueError):
        minkowski_sum(sq, cube(3))


def test_polar_examples():
    assert polar(cube(3)) == diamond(3)
    Hp = polar(hexagon())
    assert set(Hp.vertices) == pts((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))
    assert volume(Hp) == 3
    for n, l in [(2, 3), (3, 2), (4, 5)]:
        P = polar(cross(n, l))
        assert P == box([F(-1, l)] + [-1] * (n - 1), [F(1, l)] + [1] * (n - 1))
        assert polar(P) == cross(n, l)
    with pytest.raises(ValueError):
        polar(box((0, 0), (1, 1)))


def test_symmetry_examples():
    assert is_centrally_symmetric(hexagon())
    assert not is_centrally_symmetric(simplex(2))
    assert not is_centrally_symmetric(translate(cube(2), (1, 0)))


def test_section_and_projection_examples():
    assert coordinate_section(cube(3), [0, 1]) == cube(2)
    assert coordinate_section(diamond(3), [0, 1]) == diamond(2)
    assert coordinate_section(hexagon(), [0]) == cube(1)
    assert coordinate_projection(cube(3), [0, 1]) == cube(2)
    assert coordinate_projection(hexagon(), [0]) == cube(1)
    assert coordinate_projection(cross(3, 2), [1, 2]) == diamond(2)


def _random_polygon(rng):
    while True:
        p = hull([(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(rng.randint(3, 8))])
        if p.is_full_dimensional():
            return p


@given(seeds)
def test_volume_against_shoelace(seed):
    rng = random.Random(seed)
    p = _random_polygon(rng)
    assert volume(p) == shoelace(list(p.vertices))


@given(seeds)
def test_volume_against_pyramids_3d(seed):
    rng = random.Random(seed)
    p = random_symmetric_lattice_polytope(rng, 3, 4)
    assert volume(p) == cone_volume_3d(p)


@given(seeds, st.integers(2, 4))
def test_triangulation_is_a_partition(seed, n):
    rng = random.Random(seed)
    p = random_symmetric_lattice_polytope(rng, n, 4)
    tri = triangulate(p)
    for s in tri.simplices:
        assert len(s) == n + 1
        assert hull([p.vertices[i] for i in s]).is_full_dimensional()
    # simplex volumes add up to the volume of the union, so overlaps would show
    assert sum(volume(hull([p.vertices[i] for i in s])) for s in tri.simplices) == volume(p)


@given(seeds, st.integers(2, 4))
def test_bipolarity(seed, n):
    rng = random.Random(seed)
    p = random_symmetric_lattice_polytope(rng, n, 5)
    assert polar(polar(p)) == p


@given(seeds, st.integers(2, 4))
def test_unimodular_and_translation_invariance(seed, n):
    rng = random.Random(seed)
    p = random_symmetric_lattice_polytope(rng, n, 4)
    U = random_unimodular(rng, n)
    assert volume(linear_image(p, U)) == volume(p)
    t = [rng.randint(-3, 3) for _ in range(n)]
    assert volume(minkowski_sum(p, hull([t]))) == volume(p)


@given(seeds, st.integers(2, 4))
def test_section_projection_bounds_on_coordinate_subspaces(seed, n):
    rng = random.Random(seed)
    p = random_symmetric_lattice_polytope(rng, n, 4)
    v = volume(p)
    for i in range(1, n):
        for J in combinations(range(n), i):
            rest = [j for j in range(n) if j not in J]
            prod = volume(coordinate_projection(p, rest)) * volume(coordinate_section(p, J))
            assert v <= prod <= math.comb(n, i) * v


def test_float_input_rejected():
    with pytest.raises(TypeError):
        hull([(0.5, 0)])
