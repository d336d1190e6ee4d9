"""Minkowski-sum volume polynomials and Davenport-type lattice point bounds.

For a body K and lattice generators z_1..z_n the function
``f(t) = vol(K + sum_j t_j [0, z_j])`` is multilinear in t (mixed volumes
with a repeated segment vanish).  Its coefficients ``c_J`` are recovered by
inclusion-exclusion over the 2^n corner values ``f(1_S)``; each ``c_J`` is the
projection-times-parallelepiped term ``vol(K | L_J^perp) * vol(P_J)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .exact import IntMatrix, as_fraction, det, solve
from .lattice import count
from .polytope import VPolytope, coordinate_projection, minkowski_sum, parallelepiped, segment_sum, volume

Subset = tuple[int, ...]


@dataclass(frozen=True)
class ParallelepipedSpec:
    """``P = sum_j [0, z_j]`` for linearly independent lattice vectors z_j (rows)."""

    generators: IntMatrix

    def __post_init__(self):
        g = self.generators
        if not isinstance(g, IntMatrix):
            g = IntMatrix(tuple(map(tuple, g)))
            object.__setattr__(self, "generators", g)
        if g.rows != g.cols or det(g) == 0:
            raise ValueError("parallelepiped generators must be n independent vectors in Z^n")

    @classmethod
    def unit_cell(cls, n: int) -> "ParallelepipedSpec":
        return cls(IntMatrix.identity(n))

    @property
    def n(self) -> int:
        return self.generators.rows

    @property
    def index(self) -> int:
        return abs(det(self.generators))

    def polytope(self, subset: Iterable[int] | None = None) -> VPolytope:
        idx = range(self.n) if subset is None else sorted(subset)
        gens = [self.generators[j] for j in idx]
        if not gens:
            return VPolytope([(0,) * self.n])
        return parallelepiped(gens)


def _subsets(n: int) -> list[Subset]:
    return [s for i in range(n + 1) for s in combinations(range(n), i)]


@dataclass(frozen=True)
class DavenportDecomposition:
    """Coefficients ``c_J`` keyed by sorted 0-based index tuples."""

    coefficients: dict[Subset, Fraction]
    corner_volumes: dict[Subset, Fraction] = field(repr=False)

    @property
    def total(self) -> Fraction:
        return sum(self.coefficients.values(), Fraction(0))

    def evaluate(self, t: Sequence) -> Fraction:
        """The multilinear polynomial at ``t``: sum over J of c_J * prod t_j."""
        t = [as_fraction(x) for x in t]
        out = Fraction(0)
        for J, c in self.coefficients.items():
            term = c
            for j in J:
                term *= t[j]
            out += term
        return out


def corner_volumes(K: VPolytope, P: ParallelepipedSpec) -> dict[Subset, Fraction]:
    """``vol(K + sum_{j in S} [0, z_j])`` for every subset S."""
    if not K.is_full_dimensional():
        raise ValueError("K must be full-dimensional")
    if K.ambient_dim != P.n:
        raise ValueError("dimension mismatch between K and P")
    bodies: dict[Subset, VPolytope] = {(): K}
    for S in _subsets(P.n)[1:]:
        bodies[S] = segment_sum(bodies[S[:-1]], P.generators[S[-1]])
    return {S: volume(b) for S, b in bodies.items()}


def volume_polynomial(K: VPolytope, P: ParallelepipedSpec) -> DavenportDecomposition:
    """Multilinear coefficients of ``t -> vol(K + sum t_j [0, z_j])``."""
    f = corner_volumes(K, P)
    coeffs = {}
    for J in _subsets(P.n):
        c = Fraction(0)
        for i in range(len(J) + 1):
            sign = -1 if (len(J) - i) % 2 else 1
            for S in combinations(J, i):
                c += sign * f[S]
        coeffs[J] = c
    return DavenportDecomposition(coeffs, f)


def equality_characterization(K: VPolytope, P: ParallelepipedSpec) -> bool:
    """P is a fundamental cell and K is a lattice translate of sum_j [0, l_j z_j]."""
    if P.index != 1:
        return False
    gt = [list(col) for col in zip(*P.generators.entries)]
    # coordinates of each vertex in the generator basis: v = sum_j c_j z_j
    coords = [tuple(solve(gt, v)) for v in K.vertices]
    if any(x.denominator != 1 for c in coords for x in c):
        return False
    n = P.n
    lo = [min(c[j] for c in coords) for j in range(n)]
    hi = [max(c[j] for c in coords) for j in range(n)]
    corners = {tuple(b if e else a for a, b, e in zip(lo, hi, eps)) for eps in product((0, 1), repeat=n)}
    return corners == set(coords)


@dataclass(frozen=True)
class BoundCheck:
    lhs: int
    rhs: Fraction
    holds: bool
    equality: bool
    characterized: bool

    @property
    def consistent(self) -> bool:
        """Equality occurs exactly when the characterization predicate says so."""
        return self.equality == self.characterized


def davenport_bound_check(K: VPolytope, P: ParallelepipedSpec,
                          decomposition: DavenportDecomposition | None = None) -> BoundCheck:
    """Lattice point count of K against the sum of its Davenport terms."""
    dec = decomposition or volume_polynomial(K, P)
    lhs = count(K).total
    rhs = dec.total
    return BoundCheck(lhs, rhs, lhs <= rhs, lhs == rhs, equality_characterization(K, P))


def tile_bound_check(K: VPolytope, P: ParallelepipedSpec) -> BoundCheck:
    """``#(K cap Z^n) <= vol(K + P)`` with P tiling by its own lattice."""
    lhs = count(K).total
    rhs = volume(minkowski_sum(K, P.polytope()))
    return BoundCheck(lhs, rhs, lhs <= rhs, lhs == rhs, equality_characterization(K, P))


def projection_coefficient(K: VPolytope, J: Iterable[int]) -> Fraction:
    """``vol(K | span{e_j : j not in J})`` -- the unit-cell Davenport term for J."""
    J = set(J)
    return volume(coordinate_projection(K, [i for i in range(K.ambient_dim) if i not in J]))


def coefficient_cross_check(K: VPolytope, J: Iterable[int],
                            decomposition: DavenportDecomposition | None = None) -> bool:
    """Inclusion-exclusion coefficient equals the coordinate projection volume."""
    J = tuple(sorted(set(J)))
    dec = decomposition or volume_polynomial(K, ParallelepipedSpec.unit_cell(K.ambient_dim))
    return dec.coefficients[J] == projection_coefficient(K, J)
