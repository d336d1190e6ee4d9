"""Exact rational polytopes: hulls, facets, volumes, sums, polars, sections.

Coordinates are Fractions.  Index sets ``J`` for sections and projections are
0-based coordinate indices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from . import _dd
from .exact import as_fraction, bareiss_det, nullspace, primitive, rational_det, row_echelon

Point = tuple[Fraction, ...]


def _point(p) -> Point:
    return tuple(as_fraction(x) for x in p)


def _common_denominator(points: Iterable[Sequence[Fraction]]) -> int:
    den = 1
    for p in points:
        for x in p:
            den = math.lcm(den, x.denominator)
    return den


@dataclass(frozen=True)
class HPolytope:
    """Inequalities ``normal . x <= offset`` (normals are primitive integer vectors)."""

    ambient_dim: int
    inequalities: tuple[tuple[tuple[int, ...], Fraction], ...]

    def contains(self, x, strict: bool = False) -> bool:
        x = _point(x)
        for a, b in self.inequalities:
            s = sum(ai * xi for ai, xi in zip(a, x))
            if s > b or (strict and s == b):
                return False
        return True

    def __len__(self):
        return len(self.inequalities)


@dataclass(frozen=True)
class Triangulation:
    """Simplices as tuples of vertex indices into the owning polytope."""

    simplices: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class _FullHRep:
    normals: tuple[tuple[int, ...], ...]
    offsets: tuple[Fraction, ...]
    masks: tuple[int, ...]  # bit i set when point i lies on the facet


def _full_hrep(points: Sequence[Point]) -> _FullHRep:
    """Facets of a full-dimensional point set via double description."""
    den = _common_denominator(points)
    rows = [tuple(x.numerator * (den // x.denominator) for x in p) + (-1,) for p in points]
    rays = _dd.extreme_rays(rows)
    normals, offsets, masks = [], [], []
    for ray, mask in rays:
        a, b = ray[:-1], ray[-1]
        g = 0
        for x in a:
            g = math.gcd(g, x)
        if g == 0:
            raise ValueError("point set is not full-dimensional")
        normals.append(tuple(x // g for x in a))
        offsets.append(Fraction(b, g * den))
        masks.append(mask)
    order = sorted(range(len(normals)), key=lambda i: (normals[i], offsets[i]))
    return _FullHRep(tuple(normals[i] for i in order), tuple(offsets[i] for i in order),
                     tuple(masks[i] for i in order))


def _vertex_indices(n_points: int, masks: Sequence[int]) -> list[int]:
    """Points that are the only point on the meet of their facets."""
    out = []
    full = (1 << n_points) - 1
    for i in range(n_points):
        meet = full
        bit = 1 << i
        for mk in masks:
            if mk & bit:
                meet &= mk
        if meet == bit:
            out.append(i)
    return out


def _affine_frame(points: Sequence[Point]) -> tuple[int, list[int], list[list[Fraction]]]:
    """(affine dimension, pivot coordinates, reduced direction basis)."""
    if len(points) == 1:
        return 0, [], []
    # scaling does not change the direction space, so work in integers and
    # reduce only a spanning subset
    den = _common_denominator(points)
    ints = [[x.numerator * (den // x.denominator) for x in p] for p in points]
    p0 = ints[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in ints[1:]]
    span = _dd._independent_rows(diffs, len(p0))
    red, pivots = row_echelon([diffs[i] for i in span])
    return len(pivots), pivots, red


def _restrict_masks(h: _FullHRep, keep: Sequence[int]) -> _FullHRep:
    """The same facets with incidence masks renumbered to the points in ``keep``."""
    masks = []
    for mk in h.masks:
        masks.append(sum(1 << new for new, old in enumerate(keep) if mk >> old & 1))
    return _FullHRep(h.normals, h.offsets, tuple(masks))


def _hull_indices(points: Sequence[Point]) -> tuple[list[int], _FullHRep | None]:
    """Vertex indices, plus the facet system when the points are full-dimensional."""
    k, pivots, _ = _affine_frame(points)
    if k == 0:
        return [0], None
    proj = [tuple(p[j] for j in pivots) for p in points]
    if k == 1:
        lo = min(range(len(proj)), key=lambda i: proj[i])
        hi = max(range(len(proj)), key=lambda i: proj[i])
        return sorted({lo, hi}), None
    h = _full_hrep(proj)
    idx = _vertex_indices(len(proj), h.masks)
    return idx, (_restrict_masks(h, idx) if k == len(points[0]) else None)


class VPolytope:
    """A rational polytope given by its vertices.

    The vertex list is assumed irredundant; build from arbitrary points with
    :func:`hull`.  Vertices are stored sorted, so equality is set equality.
    """

    def __init__(self, vertices: Iterable[Sequence]):
        vs = sorted({_point(v) for v in vertices})
        if not vs:
            raise ValueError("a polytope needs at least one vertex")
        if any(len(v) != len(vs[0]) for v in vs):
            raise ValueError("vertices of mixed dimension")
        self.vertices: tuple[Point, ...] = tuple(vs)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    def __eq__(self, other):
        return isinstance(other, VPolytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        vs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"VPolytope([{vs}])"

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def _frame(self):
        return _affine_frame(self.vertices)

    @property
    def dim(self) -> int:
        """Dimension of the affine hull."""
        return self._frame[0]

    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    @cached_property
    def _hrep(self) -> _FullHRep:
        if not self.is_full_dimensional():
            raise ValueError(f"polytope is {self.dim}-dimensional in R^{self.ambient_dim}; "
                             "drop coordinates first")
        return _full_hrep(self.vertices)

    @cached_property
    def constraints(self) -> tuple[list[tuple[tuple[int, ...], Fraction]], list[tuple[tuple[int, ...], Fraction]]]:
        """``(equalities, inequalities)`` describing the polytope in its ambient space.

        Works for every dimension; normals are primitive integer vectors.
        """
        if self.is_full_dimensional():
            h = self._hrep
            return [], list(zip(h.normals, h.offsets))
        k, pivots, red = self._frame
        n = self.ambient_dim
        p0 = self.vertices[0]
        eqs = []
        for y in nullspace(red, n):
            a = primitive([int(x * _common_denominator([y])) for x in y])
            eqs.append((a, sum(ai * xi for ai, xi in zip(a, p0))))
        ineqs = []
        if k == 1:
            j = pivots[0]
            vals = [v[j] for v in self.vertices]
            e = tuple(int(i == j) for i in range(n))
            ineqs = [(e, max(vals)), (tuple(-x for x in e), -min(vals))]
        elif k >= 2:
            proj = [tuple(v[j] for j in pivots) for v in self.vertices]
            h = _full_hrep(proj)
            for a, b in zip(h.normals, h.offsets):
                full = [0] * n
                for j, aj in zip(pivots, a):
                    full[j] = aj
                ineqs.append((tuple(full), b))
        return eqs, ineqs


def hull(points: Iterable[Sequence]) -> VPolytope:
    """Convex hull of a finite point set, in any intrinsic dimension."""
    pts = sorted({_point(p) for p in points})
    if not pts:
        raise ValueError("hull of an empty point set")
    idx, h = _hull_indices(pts)
    p = VPolytope(pts[i] for i in idx)
    if h is not None:
        p.__dict__["_hrep"] = h  # pts is sorted, so vertex order matches idx
    return p


def facets(p: VPolytope) -> HPolytope:
    """Irredundant facet inequalities of a full-dimensional polytope."""
    h = p._hrep
    return HPolytope(p.ambient_dim, tuple(zip(h.normals, h.offsets)))


def vertex_facet_incidence(p: VPolytope) -> list[frozenset[int]]:
    """For each facet (in :func:`facets` order) the indices of its vertices."""
    return [frozenset(i for i in range(len(p.vertices)) if mk >> i & 1) for mk in p._hrep.masks]


def _face_facets(face: int, masks: Sequence[int]) -> list[int]:
    """Facets of a face (all as vertex bitmasks): maximal proper meets."""
    cands = {face & mk for mk in masks if face & mk != face and face & mk}
    return [c for c in cands if not any(c != d and c & d == c for d in cands)]


def _pulling(face: int, k: int, masks: Sequence[int]) -> list[tuple[int, ...]]:
    if k == 0:
        return [(face.bit_length() - 1,)]
    apex = (face & -face).bit_length() - 1
    out = []
    for sub in _face_facets(face, masks):
        if sub >> apex & 1:
            continue
        out.extend((apex,) + s for s in _pulling(sub, k - 1, masks))
    return out


def triangulate(p: VPolytope) -> Triangulation:
    k, pivots, _ = p._frame
    if k == 0:
        return Triangulation(((0,),))
    if k == p.ambient_dim:
        return Triangulation(tuple(_pulling((1 << len(p.vertices)) - 1, k, p._hrep.masks)))
    proj = [tuple(v[j] for j in pivots) for v in p.vertices]
    if k == 1:
        lo = min(range(len(proj)), key=lambda i: proj[i])
        hi = max(range(len(proj)), key=lambda i: proj[i])
        return Triangulation(((lo, hi),))
    return Triangulation(tuple(_pulling((1 << len(proj)) - 1, k, _full_hrep(proj).masks)))


def _simplex_volume_sum(points: Sequence[Point], simplices: Iterable[tuple[int, ...]]) -> Fraction:
    den = _common_denominator(points)
    ints = [[int(x * den) for x in p] for p in points]
    d = len(points[0])
    total = 0
    for s in simplices:
        base = ints[s[0]]
        total += abs(bareiss_det([[x - y for x, y in zip(ints[i], base)] for i in s[1:]]))
    return Fraction(total, math.factorial(d) * den ** d)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def volume(p: VPolytope) -> Fraction:
    """Exact volume with respect to Lebesgue measure on the affine hull of ``p``.

    A point has volume 1.  For lower-dimensional polytopes the induced
    Euclidean measure is used; if it is irrational a ValueError is raised.
    """
    k, pivots, red = p._frame
    if k == 0:
        return Fraction(1)
    if k == p.ambient_dim:
        return _simplex_volume_sum(p.vertices, triangulate(p).simplices)
    proj = [tuple(v[j] for j in pivots) for v in p.vertices]
    base = _simplex_volume_sum(proj, triangulate(p).simplices)
    # red has an identity block on the pivot coordinates, so its Gram
    # determinant is the squared ratio of induced to projected measure
    gram = [[sum(a * b for a, b in zip(r, s)) for s in red] for r in red]
    scale = _rational_sqrt(rational_det(gram))
    if scale is None:
        raise ValueError("intrinsic volume is irrational for this affine hull")
    return base * scale


def minkowski_sum(a: VPolytope, b: VPolytope) -> VPolytope:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("Minkowski sum of polytopes in different dimensions")
    return hull(tuple(x + y for x, y in zip(u, v)) for u in a.vertices for v in b.vertices)


def segment_sum(p: VPolytope, z: Sequence) -> VPolytope:
    """``p + [0, z]``."""
    z = _point(z)
    shifted = [tuple(x + y for x, y in zip(v, z)) for v in p.vertices]
    return hull(list(p.vertices) + shifted)


def polar(p: VPolytope) -> VPolytope:
    """Polar body ``{x : x.y <= 1 for all y in p}`` (origin must be interior)."""
    if not p.is_full_dimensional():
        raise ValueError("polar of a lower-dimensional polytope is unbounded")
    h = p._hrep
    if any(b <= 0 for b in h.offsets):
        raise ValueError("origin is not an interior point; the polar is unbounded")
    q = VPolytope(tuple(Fraction(x) / b for x in a) for a, b in zip(h.normals, h.offsets))
    # facets of the polar are the vertices of p; seed them to skip a hull run
    index = {tuple(Fraction(x) / b for x in a): i for i, (a, b) in enumerate(zip(h.normals, h.offsets))}
    order = [index[v] for v in q.vertices]
    normals, offsets, masks = [], [], []
    for j, v in enumerate(p.vertices):
        den = _common_denominator([v])
        a = [int(x * den) for x in v]
        g = 0
        for x in a:
            g = math.gcd(g, x)
        normals.append(tuple(x // g for x in a))
        offsets.append(Fraction(den, g))
        masks.append(sum(1 << pos for pos, f in enumerate(order) if h.masks[f] >> j & 1))
    srt = sorted(range(len(normals)), key=lambda i: (normals[i], offsets[i]))
    q.__dict__["_hrep"] = _FullHRep(tuple(normals[i] for i in srt), tuple(offsets[i] for i in srt),
                                    tuple(masks[i] for i in srt))
    return q


def is_centrally_symmetric(p: VPolytope) -> bool:
    """True iff ``p = -p`` (symmetry about the origin)."""
    vs = set(p.vertices)
    return all(tuple(-x for x in v) in vs for v in vs)


def vertices_from_inequalities(ineqs: Sequence[tuple[Sequence, Fraction]], dim: int) -> list[Point]:
    """Vertices of the bounded polyhedron ``{y : a . y <= b}`` (empty list if infeasible)."""
    rows = []
    for a, b in ineqs:
        a = [as_fraction(x) for x in a]
        b = as_fraction(b)
        den = _common_denominator([a + [b]])
        rows.append(tuple(int(x * den) for x in a) + (-int(b * den),))
    rows.append((0,) * dim + (-1,))
    try:
        rays = _dd.extreme_rays(rows)
    except ValueError:
        raise ValueError("inequality system is unbounded") from None
    out = []
    for ray, _ in rays:
        t = ray[-1]
        if t == 0:
            raise ValueError("inequality system is unbounded")
        out.append(tuple(Fraction(x, t) for x in ray[:-1]))
    return out


def coordinate_section(p: VPolytope, J: Iterable[int]) -> VPolytope:
    """``p`` intersected with span{e_j : j in J}, in the retained coordinates."""
    J = sorted(set(J))
    eqs, ineqs = p.constraints
    rows = [(tuple(a[j] for j in J), b) for a, b in ineqs]
    for a, b in eqs:
        rows.append((tuple(a[j] for j in J), b))
        rows.append((tuple(-a[j] for j in J), -b))
    if not J:
        ok = all(b >= 0 for _, b in rows)
        if not ok:
            raise ValueError("section is empty")
        return VPolytope([()])
    pts = vertices_from_inequalities(rows, len(J))
    if not pts:
        raise ValueError("section is empty")
    return hull(pts)


def coordinate_projection(p: VPolytope, J: Iterable[int]) -> VPolytope:
    """Orthogonal projection onto span{e_j : j in J}, in those coordinates."""
    J = sorted(set(J))
    if not J:
        return VPolytope([()])
    return hull(tuple(v[j] for j in J) for v in p.vertices)


def linear_image(p: VPolytope, m: Sequence[Sequence]) -> VPolytope:
    """Image under ``x -> m x`` (a bijective map keeps the vertex set)."""
    m = [[as_fraction(x) for x in r] for r in m]
    return hull(tuple(sum(a * x for a, x in zip(r, v)) for r in m) for v in p.vertices)


def translate(p: VPolytope, t: Sequence) -> VPolytope:
    t = _point(t)
    return VPolytope(tuple(x + y for x, y in zip(v, t)) for v in p.vertices)


def scale(p: VPolytope, c) -> VPolytope:
    c = as_fraction(c)
    if c == 0:
        return VPolytope([(Fraction(0),) * p.ambient_dim])
    return VPolytope(tuple(c * x for x in v) for v in p.vertices)


def box(lo: Sequence, hi: Sequence) -> VPolytope:
    lo, hi = _point(lo), _point(hi)
    return hull(product(*[(a, b) for a, b in zip(lo, hi)]))


def parallelepiped(generators: Sequence[Sequence], origin: Sequence | None = None) -> VPolytope:
    """``origin + sum_j [0, z_j]``."""
    gens = [_point(z) for z in generators]
    n = len(gens[0]) if gens else len(origin)
    base = _point(origin) if origin is not None else (Fraction(0),) * n
    pts = []
    for eps in product((0, 1), repeat=len(gens)):
        pts.append(tuple(b + sum(e * z[i] for e, z in zip(eps, gens)) for i, b in enumerate(base)))
    return hull(pts)
