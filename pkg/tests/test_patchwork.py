"""Sign membranes: closedness, Euler counts, base classes."""

import itertools
from fractions import Fraction

import pytest

from tropants import (
    LiftingFunction,
    build_maximal_lifting,
    corner_locus,
    interior_lattice_points,
    lower_hull_subdivision,
    membrane_base_class,
    build_membrane,
    single_negative_signs,
    verify_sphere,
)


def test_single_negative_signs_examples():
    sub = lower_hull_subdivision(build_maximal_lifting(1, 3))
    signs = single_negative_signs(sub, (1, 1))
    assert len(signs) == 10
    assert sum(1 for s in signs.values() if s < 0) == 1
    sub2 = lower_hull_subdivision(build_maximal_lifting(2, 4))
    signs2 = single_negative_signs(sub2, (1, 1, 1))
    assert len(signs2) == 35
    assert signs2[(1, 1, 1)] == -1
    with pytest.raises(ValueError, match="not a vertex"):
        single_negative_signs(sub, (7, 7))


def test_membrane_all_positive_empty():
    sub = lower_hull_subdivision(build_maximal_lifting(1, 2))
    membrane = build_membrane(sub, {p: 1 for p in sub.lifting.points})
    assert len(membrane) == 0
    with pytest.raises(ValueError, match="empty"):
        verify_sphere(membrane)


def test_membrane_requires_unimodular():
    sub = lower_hull_subdivision(
        LiftingFunction([(0, 0), (1, 0), (0, 1), (1, 1)], [0, 0, 0, 0])
    )
    with pytest.raises(ValueError, match="unimodular"):
        build_membrane(sub, {p: 1 for p in sub.lifting.points})


def test_membrane_facet_count_equals_mixed_cells():
    sub = lower_hull_subdivision(build_maximal_lifting(1, 3))
    signs = single_negative_signs(sub, (1, 1))
    membrane = build_membrane(sub, signs)
    pts = sub.lifting.points
    mixed = [
        c
        for c in sub.cells
        if len({signs[pts[i]] for i in c.points}) == 2
    ]
    assert len(membrane) == len(mixed)


def test_membrane_interior_closed_polygon():
    sub = lower_hull_subdivision(build_maximal_lifting(1, 3))
    membrane = build_membrane(sub, single_negative_signs(sub, (1, 1)))
    report = verify_sphere(membrane)
    assert report == {"closed": True, "connected": True, "euler": 0}


def test_membrane_boundary_vertex_not_closed():
    sub = lower_hull_subdivision(build_maximal_lifting(1, 3))
    membrane = build_membrane(sub, single_negative_signs(sub, (0, 0)))
    report = verify_sphere(membrane)
    assert not report["closed"]


def test_membrane_surface_sphere():
    sub = lower_hull_subdivision(build_maximal_lifting(2, 4))
    membrane = build_membrane(sub, single_negative_signs(sub, (1, 1, 1)))
    report = verify_sphere(membrane)
    assert report == {"closed": True, "connected": True, "euler": 2}


def test_membrane_closed_at_every_interior_vertex():
    for (n, d) in [(1, 3), (1, 4), (2, 4)]:
        lift = build_maximal_lifting(n, d)
        sub = lower_hull_subdivision(lift)
        for j in interior_lattice_points(lift.polytope):
            membrane = build_membrane(sub, single_negative_signs(sub, j))
            report = verify_sphere(membrane)
            assert report["closed"] and report["connected"]
            assert report["euler"] == (2 if n == 2 else 0)


def test_membrane_separates_by_sign():
    # an edge of a mixed simplex is crossed iff its endpoint signs differ
    sub = lower_hull_subdivision(build_maximal_lifting(1, 4))
    signs = single_negative_signs(sub, (1, 2))
    membrane = build_membrane(sub, signs)
    pts = sub.lifting.points
    for piece in membrane.pieces:
        cell = sub.cells[piece.cell_index]
        mids = set(piece.midpoints)
        for a, b in itertools.combinations(cell.points, 2):
            mid = tuple(Fraction(x + y, 2) for x, y in zip(pts[a], pts[b]))
            crossed = mid in mids
            assert crossed == (signs[pts[a]] != signs[pts[b]])


def test_base_class_cycle_and_pairing():
    lift = build_maximal_lifting(1, 3)
    sub = lower_hull_subdivision(lift)
    cplx = corner_locus(lift)
    membrane = build_membrane(sub, single_negative_signs(sub, (1, 1)))
    cycle = membrane_base_class(membrane, cplx)
    assert cycle.boundary_vanishes()
    assert set(cycle.coefficients.values()) <= {1, -1}
    assert cycle.pairing((1, 1)) != 0
    # the cycle consists of the bounded hexagon around the interior point
    assert all(cplx.cells[i].bounded for i in cycle.coefficients)


def test_base_class_surface():
    lift = build_maximal_lifting(2, 4)
    sub = lower_hull_subdivision(lift)
    cplx = corner_locus(lift)
    membrane = build_membrane(sub, single_negative_signs(sub, (1, 1, 1)))
    cycle = membrane_base_class(membrane, cplx)
    assert cycle.boundary_vanishes()
    assert cycle.pairing((1, 1, 1)) != 0


def test_base_class_rejects_boundary_or_multi():
    lift = build_maximal_lifting(1, 3)
    sub = lower_hull_subdivision(lift)
    cplx = corner_locus(lift)
    boundary = build_membrane(sub, single_negative_signs(sub, (0, 0)))
    with pytest.raises(ValueError, match="interior"):
        membrane_base_class(boundary, cplx)
    two = {
        p: (-1 if p in ((1, 1), (0, 0)) else 1) for p in lift.points
    }
    multi = build_membrane(sub, two)
    with pytest.raises(ValueError, match="single negative"):
        membrane_base_class(multi, cplx)


def test_base_classes_independent():
    lift = build_maximal_lifting(1, 4)
    sub = lower_hull_subdivision(lift)
    cplx = corner_locus(lift)
    interior = interior_lattice_points(lift.polytope)
    assert len(interior) == 3
    matrix = []
    for j in interior:
        membrane = build_membrane(sub, single_negative_signs(sub, j))
        cycle = membrane_base_class(membrane, cplx)
        matrix.append([cycle.pairing(k) for k in interior])
    # pairing matrix has full rank (here: plus-minus identity)
    from tropants.hull import det

    assert abs(det(matrix)) == 1
