"""Lattice point enumeration for rational polytopes.

Counting is a bounding-box sweep: every coordinate but the last is
enumerated, and the admissible range of the last coordinate is read off the
facet inequalities.  Arithmetic is int64 when a magnitude bound proves it
cannot overflow, Python ints otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .exact import IntMatrix, det, hnf, rank
from .polytope import VPolytope, translate, vertices_from_inequalities, volume

_INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class LatticeCount:
    total: int
    interior: int
    boundary: int

    def __post_init__(self):
        if min(self.total, self.interior, self.boundary) < 0 or self.total != self.interior + self.boundary:
            raise ValueError("inconsistent lattice count")


def _integer_rows(eqs, ineqs, strict: bool):
    """Rows (a, B) meaning a.x <= B for integer x; None if some equality is unsatisfiable."""
    rows = []
    for a, b in ineqs:
        b = Fraction(b)
        bound = math.ceil(b) - 1 if strict else math.floor(b)
        rows.append((tuple(a), bound))
    for a, b in eqs:
        b = Fraction(b)
        if b.denominator != 1:
            return None
        rows.append((tuple(a), int(b)))
        rows.append((tuple(-x for x in a), -int(b)))
    return rows


def _box_from_vertices(points) -> tuple[list[int], list[int]]:
    lo = [math.ceil(min(p[i] for p in points)) for i in range(len(points[0]))]
    hi = [math.floor(max(p[i] for p in points)) for i in range(len(points[0]))]
    return lo, hi


def _last_ranges(rows, lo, hi):
    """For every prefix point, the integer range of the last coordinate.

    Returns (prefixes, lower, upper) arrays; empty ranges have upper < lower.
    """
    n = len(lo)
    if any(h < l for l, h in zip(lo, hi)):
        return None
    mag = max((sum(abs(a_i) * max(abs(l), abs(h)) for a_i, l, h in zip(a, lo, hi)) + abs(b)
               for a, b in rows), default=0)
    dtype = np.int64 if mag < _INT64_SAFE else object
    if n == 1:
        prefixes = np.zeros((1, 0), dtype=dtype)
    else:
        axes = [np.array(range(l, h + 1), dtype=dtype) for l, h in zip(lo[:-1], hi[:-1])]
        prefixes = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n - 1).astype(dtype)
    m = prefixes.shape[0]
    lower = np.full(m, lo[-1], dtype=dtype)
    upper = np.full(m, hi[-1], dtype=dtype)
    for a, b in rows:
        rest = np.array(a[:-1], dtype=dtype)
        s = prefixes @ rest if n > 1 else np.zeros(m, dtype=dtype)
        room = b - s
        c = a[-1]
        if c > 0:
            upper = np.minimum(upper, room // c)
        elif c < 0:
            lower = np.maximum(lower, -((-room) // c))
        else:
            bad = room < 0
            upper = np.where(bad, lower - 1, upper)
    return prefixes, lower, upper


def _count(rows, lo, hi) -> int:
    if rows is None:
        return 0
    r = _last_ranges(rows, lo, hi)
    if r is None:
        return 0
    _, lower, upper = r
    return int(np.maximum(upper - lower + 1, 0).sum())


def _points(rows, lo, hi) -> list[tuple[int, ...]]:
    if rows is None:
        return []
    r = _last_ranges(rows, lo, hi)
    if r is None:
        return []
    prefixes, lower, upper = r
    out = []
    for pre, l, u in zip(prefixes.tolist(), lower.tolist(), upper.tolist()):
        for x in range(int(l), int(u) + 1):
            out.append(tuple(int(v) for v in pre) + (x,))
    return out


def count(p: VPolytope) -> LatticeCount:
    """Lattice points of ``p``: total, interior (topological) and boundary."""
    eqs, ineqs = p.constraints
    lo, hi = _box_from_vertices(p.vertices)
    total = _count(_integer_rows(eqs, ineqs, False), lo, hi)
    interior = _count(_integer_rows(eqs, ineqs, True), lo, hi) if not eqs else 0
    return LatticeCount(total, interior, total - interior)


def lattice_points(p: VPolytope, interior: bool = False) -> list[tuple[int, ...]]:
    """All points of Z^n in ``p`` (or in its interior), lexicographically sorted."""
    eqs, ineqs = p.constraints
    if interior and eqs:
        return []
    lo, hi = _box_from_vertices(p.vertices)
    return sorted(_points(_integer_rows(eqs, ineqs, interior), lo, hi))


def _sublattice_rows(p: VPolytope, basis: Sequence[Sequence[int]]):
    """Constraints on coefficient vectors c with c @ basis in p."""
    eqs, ineqs = p.constraints

    def pull(a):
        return tuple(sum(ai * bi for ai, bi in zip(a, row)) for row in basis)

    return [(pull(a), b) for a, b in eqs], [(pull(a), b) for a, b in ineqs]


def count_sublattice(p: VPolytope, basis) -> int:
    """Number of points of the lattice spanned by the rows of ``basis`` inside ``p``."""
    basis = [list(r) for r in (basis.entries if isinstance(basis, IntMatrix) else basis)]
    if rank(basis) != len(basis):
        raise ValueError("sublattice basis is linearly dependent")
    if len(basis[0]) != p.ambient_dim:
        raise ValueError("basis vectors live in the wrong dimension")
    eqs, ineqs = _sublattice_rows(p, basis)
    all_rows = list(ineqs) + [(a, b) for a, b in eqs] + [(tuple(-x for x in a), -b) for a, b in eqs]
    verts = vertices_from_inequalities(all_rows, len(basis))
    if not verts:
        return 0
    lo, hi = _box_from_vertices(verts)
    return _count(_integer_rows(eqs, ineqs, False), lo, hi)


def residue_class_counts(p: VPolytope, basis) -> dict[tuple[int, ...], int]:
    """Lattice points of ``p`` split by residue class modulo a full-rank sublattice.

    Keys are the canonical representatives ``0 <= r_i < h_ii`` read off the
    Hermite normal form of ``basis``.
    """
    basis = basis if isinstance(basis, IntMatrix) else IntMatrix(tuple(map(tuple, basis)))
    if basis.rows != basis.cols or det(basis) == 0:
        raise ValueError("residue classes need a full-rank square basis")
    h, _ = hnf(basis)
    diag = [h[i][i] for i in range(h.rows)]
    out = {}
    for r in product(*(range(d) for d in diag)):
        shifted = translate(p, tuple(-x for x in r))
        out[r] = count_sublattice(shifted, h.entries)
    return out


def lattice_span_dim(p: VPolytope) -> int:
    """Dimension of the affine hull of ``p`` intersected with Z^n (-1 if empty)."""
    pts = lattice_points(p)
    if not pts:
        return -1
    return rank([[x - y for x, y in zip(q, pts[0])] for q in pts[1:]]) if len(pts) > 1 else 0


@dataclass(frozen=True)
class PickResult:
    area: Fraction
    interior: int
    boundary: int
    residual: Fraction


def pick_identity(p: VPolytope) -> PickResult:
    """Area, interior and boundary counts of a lattice polygon and the Pick residual."""
    if p.ambient_dim != 2 or p.dim != 2:
        raise ValueError("Pick's formula needs a 2-dimensional polygon in the plane")
    if not p.is_lattice():
        raise ValueError("Pick's formula needs lattice vertices")
    area = volume(p)
    c = count(p)
    residual = area - (c.interior + Fraction(c.boundary, 2) - 1)
    return PickResult(area, c.interior, c.boundary, residual)
