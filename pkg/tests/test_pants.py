"""Cutting locus, primitive pieces, homology, numeric invariants."""

import random
from fractions import Fraction

import pytest

from helpers import random_unimodular_matrix, random_unimodular_polygon_lifting
from tropants import (
    LiftingFunction,
    base_homology,
    boundary_strata_count,
    build_maximal_lifting,
    corner_locus,
    cutting_locus,
    hypersurface_invariants,
    interior_lattice_points,
    normalize_piece,
    normalized_volume,
    primitive_complex,
    primitive_pieces,
    stratify,
)
from tropants.pants import _barycenter


def test_cutting_locus_sigma_empty():
    assert len(cutting_locus(primitive_complex(1))) == 0
    assert len(cutting_locus(primitive_complex(2))) == 0


def test_cutting_locus_d2_midpoints():
    cplx = corner_locus(build_maximal_lifting(1, 2))
    locus = cutting_locus(cplx)
    assert len(locus) == 3
    assert locus.dimension == 0
    bounded_edges = [
        c for c in cplx.cells if c.dim == 1 and c.bounded
    ]
    expected = sorted(_barycenter(c) for c in bounded_edges)
    got = sorted(s[0] for s in locus.simplices)
    assert got == expected


def test_cutting_locus_flags_3d():
    cplx = corner_locus(build_maximal_lifting(2, 2))
    locus = cutting_locus(cplx)
    assert locus.dimension == 1
    lengths = {len(t) for t in locus.towers}
    assert lengths == {1, 2}
    for tower in locus.towers:
        dims = [cplx.cells[i].dim for i in tower]
        assert dims == sorted(dims)
        assert all(cplx.cells[i].bounded for i in tower)


def test_cutting_locus_dimension_bound():
    for (n, d) in [(1, 3), (2, 2), (2, 3)]:
        cplx = corner_locus(build_maximal_lifting(n, d))
        assert cutting_locus(cplx).dimension <= n - 1


def test_cutting_locus_requires_maximal():
    sq = corner_locus(
        LiftingFunction([(0, 0), (1, 0), (0, 1), (1, 1)], [0, 0, 0, 0])
    )
    with pytest.raises(ValueError, match="maximal"):
        cutting_locus(sq)


@pytest.mark.parametrize(
    "n,d", [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (2, 4)]
)
def test_primitive_piece_census(n, d):
    lift = build_maximal_lifting(n, d)
    cplx = corner_locus(lift)
    pieces = primitive_pieces(cplx)
    assert len(pieces) == d ** (n + 1)
    assert len(pieces) == normalized_volume(lift.polytope)
    assert len(pieces) == len(cplx.cells_of_dim(0))
    # fragments partition the (cell, incident vertex) pairs
    pairs = sum(len(p.fragments) for p in pieces)
    expected = sum(
        1
        for c in cplx.cells
        for v in cplx.cells_of_dim(0)
        if set(cplx.cells[v].dual) >= set(c.dual)
    )
    assert pairs == expected


def test_normalize_identity_on_primitive():
    for n in (1, 2):
        sigma = primitive_complex(n)
        piece = primitive_pieces(sigma)[0]
        norm = normalize_piece(sigma, piece)
        dim = n + 1
        eye = tuple(
            tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)
        )
        assert norm.simplex_map.matrix == eye
        assert norm.simplex_map.translation == (0,) * dim
        assert norm.translate == tuple(Fraction(0) for _ in range(dim))


def test_normalize_shifted_simplex_translation():
    cplx = corner_locus(LiftingFunction([(1, 0), (2, 0), (1, 1)], [0, 0, 0]))
    norm = normalize_piece(cplx, primitive_pieces(cplx)[0])
    assert norm.simplex_map.matrix == ((1, 0), (0, 1))
    assert norm.simplex_map.translation == (-1, 0)


def test_normalize_every_piece_of_maximal_complexes():
    for (n, d) in [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3)]:
        cplx = corner_locus(build_maximal_lifting(n, d))
        for piece in primitive_pieces(cplx):
            norm = normalize_piece(cplx, piece)
            assert norm.simplex_map.special


def test_normalize_random_unimodular_image():
    rng = random.Random(9)
    base = [(0, 0), (1, 0), (0, 1)]
    for _ in range(12):
        u = random_unimodular_matrix(2, rng)
        shift = (rng.randrange(-3, 4), rng.randrange(-3, 4))
        pts = [
            tuple(
                sum(u[r][c] * p[c] for c in range(2)) + shift[r]
                for r in range(2)
            )
            for p in base
        ]
        cplx = corner_locus(LiftingFunction(pts, [0, 0, 0]))
        piece = primitive_pieces(cplx)[0]
        norm = normalize_piece(cplx, piece)
        # the simplex map must take the dual simplex exactly onto the
        # standard one
        images = sorted(norm.simplex_map.apply(p) for p in pts)
        assert images == [(0, 0), (0, 1), (1, 0)]


def test_normalize_rejects_non_unimodular():
    sq = corner_locus(
        LiftingFunction([(0, 0), (1, 0), (0, 1), (1, 1)], [0, 0, 0, 0])
    )
    vid = sq.cells_of_dim(0)[0]
    from tropants.pants import PrimitivePiece

    piece = PrimitivePiece(vertex=vid, fragments=tuple(range(len(sq.cells))))
    with pytest.raises(ValueError, match="not unimodular"):
        normalize_piece(sq, piece)


@pytest.mark.parametrize(
    "n,d,rank_top",
    [(1, 1, 0), (1, 2, 0), (1, 3, 1), (1, 4, 3), (1, 5, 6), (2, 2, 0), (2, 3, 0)],
)
def test_base_homology_rank(n, d, rank_top):
    hom = base_homology(stratify(build_maximal_lifting(n, d)))
    assert hom[0] == (1, ())
    assert hom[n][0] == rank_top
    for k, (betti, torsion) in hom.items():
        assert torsion == ()
        if 0 < k < n:
            assert betti == 0


def test_base_homology_matches_interior_points_random_polygons():
    rng = random.Random(4242)
    for _ in range(20):
        lift = random_unimodular_polygon_lifting(rng)
        hom = base_homology(stratify(lift))
        expected = len(interior_lattice_points(lift.polytope))
        assert hom[1][0] == expected, (lift.points, hom)
        assert hom[0] == (1, ())
        assert hom[1][1] == ()


def test_boundary_strata_counts():
    assert boundary_strata_count(1, 0) == 3
    assert boundary_strata_count(2, 0) == 6
    assert boundary_strata_count(2, 1) == 4
    for n in range(1, 5):
        import math

        for j in range(n):
            assert boundary_strata_count(n, j) == math.comb(n + 2, j + 2)
    with pytest.raises(ValueError):
        boundary_strata_count(2, 2)
    with pytest.raises(ValueError):
        boundary_strata_count(2, -1)


def test_hypersurface_invariants():
    rep = hypersurface_invariants(2, 4)
    assert (rep.p_g, rep.chi, rep.sigma) == (1, 24, -16)
    rep = hypersurface_invariants(2, 5)
    assert (rep.p_g, rep.chi, rep.sigma) == (4, 55, -35)
    rep = hypersurface_invariants(2, 1)
    assert (rep.p_g, rep.chi, rep.sigma) == (0, 3, 1)
    for d in range(1, 9):
        rep = hypersurface_invariants(2, d)
        assert rep.sigma == 4 * (rep.p_g + 1) - rep.chi
    assert hypersurface_invariants(1, 3).p_g == 1
    assert hypersurface_invariants(3, 2).chi is None
