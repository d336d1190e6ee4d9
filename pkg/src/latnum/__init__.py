"""Exact geometry-of-numbers toolkit: lattice point counts, volumes, polars,
Davenport decompositions and small-dimensional class searches."""
from .exact import IntMatrix, PiScaled, ball_volume, det, hnf, lattice_index
from .polytope import (HPolytope, Triangulation, VPolytope, coordinate_projection, coordinate_section,
                       facets, hull, is_centrally_symmetric, minkowski_sum, polar, triangulate, volume)
from .lattice import LatticeCount, count, count_sublattice, lattice_points, lattice_span_dim, pick_identity
from .davenport import (DavenportDecomposition, ParallelepipedSpec, coefficient_cross_check,
                        davenport_bound_check, equality_characterization, tile_bound_check, volume_polynomial)

__version__ = "0.1.0"
