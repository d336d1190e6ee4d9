"""Named test bodies and random symmetric lattice polytopes."""
from __future__ import annotations

import random
from itertools import product

from .exact import bareiss_det
from .polytope import VPolytope, box, hull


def hexagon() -> VPolytope:
    return hull([(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)])


def cube(n: int) -> VPolytope:
    """``[-1, 1]^n``."""
    return box((-1,) * n, (1,) * n)


def cross(n: int, l: int = 1) -> VPolytope:
    """``conv{+-l e_1, +-e_2, ..., +-e_n}``."""
    if n < 1 or l < 1:
        raise ValueError("need n >= 1 and l >= 1")
    pts = []
    for i in range(n):
        for s in (1, -1):
            v = [0] * n
            v[i] = s * (l if i == 0 else 1)
            pts.append(v)
    return hull(pts)


def diamond(n: int = 2) -> VPolytope:
    return cross(n, 1)


def simplex(n: int) -> VPolytope:
    """``conv{0, e_1, ..., e_n}``."""
    pts = [(0,) * n] + [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return hull(pts)


def named(spec: str) -> VPolytope:
    """Parse ``hexagon``, ``cube:n``, ``cross:n:l``, ``diamond:n``, ``simplex:n``."""
    name, *args = spec.lstrip("@").split(":")
    args = [int(a) for a in args]
    try:
        factory = {"hexagon": hexagon, "cube": cube, "cross": cross,
                   "diamond": diamond, "simplex": simplex}[name]
    except KeyError:
        raise ValueError(f"unknown built-in body {spec!r}") from None
    return factory(*args)


BUILTIN_CORPUS = ("hexagon", "cube:2", "cube:3", "cube:4", "diamond:2", "diamond:3", "diamond:4",
                  "cross:2:3", "cross:3:2", "cross:4:2")


def random_symmetric_lattice_polytope(rng: random.Random, dim: int, coord: int = 6,
                                      max_pairs: int | None = None) -> VPolytope:
    """Hull of a few random +-point pairs in ``[-coord, coord]^dim``, full-dimensional."""
    max_pairs = max_pairs or dim + 3
    while True:
        k = rng.randint(dim, max_pairs)
        pts = [tuple(rng.randint(-coord, coord) for _ in range(dim)) for _ in range(k)]
        p = hull(pts + [tuple(-x for x in q) for q in pts])
        if p.is_full_dimensional():
            return p


def random_unimodular(rng: random.Random, dim: int, entry: int = 3, steps: int = 6) -> list[list[int]]:
    """Random GL_n(Z) matrix with entries in ``[-entry, entry]``."""
    while True:
        m = [[int(i == j) for j in range(dim)] for i in range(dim)]
        for _ in range(steps):
            i, j = rng.sample(range(dim), 2)
            c = rng.choice((-1, 1))
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
            if rng.random() < 0.3:
                m[i] = [-a for a in m[i]]
        if max(abs(x) for r in m for x in r) <= entry:
            return m


def random_generators(rng: random.Random, dim: int, entry: int = 2) -> list[list[int]]:
    """Random linearly independent integer vectors (rows)."""
    while True:
        g = [[rng.randint(-entry, entry) for _ in range(dim)] for _ in range(dim)]
        if bareiss_det(g) != 0:
            return g


def lattice_box(lengths, offset) -> VPolytope:
    """``offset + sum_j [0, l_j e_j]``."""
    return hull(tuple(o + e * l for o, e, l in zip(offset, eps, lengths))
                for eps in product((0, 1), repeat=len(lengths)))
