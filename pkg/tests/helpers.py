"""Shared generators for the test suite: seeded random liftings, polygons,
and unimodular maps."""

from __future__ import annotations

import random
from fractions import Fraction

from tropants import LatticePolytope, LiftingFunction, lattice_points
from tropants.subdivision import is_unimodular, lower_hull_subdivision


def random_unimodular_matrix(n, rng, shears=8):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(shears):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.randrange(-2, 3)
        for k in range(n):
            m[i][k] += c * m[j][k]
    return tuple(tuple(r) for r in m)


def random_lifting(rng, n, max_extra=10, box=3, denominators=(1, 2, 3)):
    """Random lifting whose support affinely spans R^(n+1)."""
    dim = n + 1
    base = [(0,) * dim] + [
        tuple(box if j == i else 0 for j in range(dim)) for i in range(dim)
    ]
    extra = {
        tuple(rng.randrange(0, box + 1) for _ in range(dim))
        for _ in range(rng.randrange(1, max_extra))
    }
    pts = sorted(set(base) | extra)
    vals = [
        Fraction(rng.randrange(-6 * box, 6 * box + 1), rng.choice(denominators))
        for _ in pts
    ]
    return LiftingFunction(pts, vals)


def random_unimodular_polygon_lifting(rng, max_span=5):
    """A lattice polygon with a maximal (fine, unimodular) lifting."""
    while True:
        seeds = {
            (rng.randrange(0, max_span), rng.randrange(0, max_span))
            for _ in range(rng.randrange(3, 7))
        }
        poly = LatticePolytope(sorted(seeds))
        if poly.affine_dim != 2:
            continue
        pts = sorted(lattice_points(poly))
        for _ in range(20):
            vals = [
                Fraction(4 * (p[0] * p[0] + p[1] * p[1]))
                + Fraction(rng.randrange(0, 8), 2)
                for p in pts
            ]
            lifting = LiftingFunction(pts, vals)
            ok, _ = is_unimodular(lower_hull_subdivision(lifting))
            if ok:
                return lifting
