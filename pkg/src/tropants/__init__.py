"""Exact tropical hypersurface toolkit.

Lifting functions on lattice points become weighted balanced polyhedral
complexes (corner loci of piecewise-linear maxima); the toolkit inverts
that construction, decomposes maximal complexes into pair-of-pants
pieces, computes the homology and numeric invariants of the compactified
base, and numerically verifies amoeba dequantization at curve scale.
"""

from .hull import DegenerateInput
from .lattice import (
    AffineUnimodularMap,
    LatticePolytope,
    dilated_simplex,
    interior_lattice_points,
    lattice_points,
    normalized_volume,
    primitive_and_weight,
    smith_invariants,
)
from .subdivision import (
    LiftingFunction,
    RegularSubdivision,
    build_maximal_lifting,
    is_unimodular,
    legendre,
    lower_hull_subdivision,
    underlying_convex,
)
from .tropical import (
    RegionGraph,
    StratifiedComplex,
    TropicalCell,
    TropicalComplex,
    check_balanced,
    corner_locus,
    extract_region_graph,
    face_complex,
    phi_delta,
    primitive_complex,
    reconstruct_lifting,
    stratify,
    vertex_edge_weights,
)
from .pants import (
    CuttingLocus,
    InvariantReport,
    PrimitivePiece,
    base_homology,
    boundary_strata_count,
    cutting_locus,
    hypersurface_invariants,
    normalize_piece,
    primitive_pieces,
)
from .puiseux import PuiseuxSeries
from .dequant import (
    AmoebaGrid,
    TropicalizedPoly,
    in_tube,
    kapranov_tropicalize,
    phase_limit_experiment,
    puiseux_lift,
    puiseux_val,
    sample_amoeba_curve,
    t_plus,
)
from .patchwork import (
    SignMembrane,
    build_membrane,
    membrane_base_class,
    single_negative_signs,
    verify_sphere,
)

__version__ = "0.1.0"
