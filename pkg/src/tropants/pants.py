"""Cutting a maximal complex into primitive pieces; homology and numeric
invariants of the compactified base."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .hull import det, dot
from .lattice import (
    AffineUnimodularMap,
    dilated_simplex,
    interior_lattice_points,
    smith_invariants,
)
from .subdivision import is_unimodular
from .tropical import StratifiedComplex, TropicalComplex

__all__ = [
    "CuttingLocus",
    "InvariantReport",
    "NormalizedPiece",
    "PrimitivePiece",
    "base_homology",
    "boundary_strata_count",
    "cutting_locus",
    "hypersurface_invariants",
    "normalize_piece",
    "primitive_pieces",
]


def _require_maximal(cplx):
    if cplx.subdivision is None:
        raise ValueError("complex carries no dual subdivision data")
    ok, _ = is_unimodular(cplx.subdivision)
    if not ok:
        raise ValueError("operation requires a maximal complex")


@dataclass(frozen=True)
class CuttingLocus:
    """Simplicial complex on barycenters of bounded positive-dim cells.

    Each simplex records the tower of nested cells that produced it; its
    vertices are their barycenters.
    """

    simplices: tuple  # tuples of barycenters, one per tower
    towers: tuple  # tuples of cell indices, increasing dimension

    @property
    def dimension(self):
        return max((len(t) - 1 for t in self.towers), default=-1)

    def __len__(self):
        return len(self.simplices)


def _barycenter(cell):
    n = len(cell.vertices[0])
    acc = [Fraction(0)] * n
    for v in cell.vertices:
        for i in range(n):
            acc[i] += v[i]
    return tuple(a / len(cell.vertices) for a in acc)


def cutting_locus(cplx):
    """Simplices on barycenters of towers of bounded positive-dim cells."""
    _require_maximal(cplx)
    bounded = [
        i
        for i, c in enumerate(cplx.cells)
        if c.dim >= 1 and c.bounded
    ]
    # F < F' iff dual(F) strictly contains dual(F'): F lies in boundary F'.
    duals = {i: set(cplx.cells[i].dual) for i in bounded}
    children = {
        i: [j for j in bounded if duals[j] < duals[i]] for i in bounded
    }

    towers = []

    def grow(chain):
        towers.append(tuple(chain))
        for j in children[chain[-1]]:
            grow(chain + [j])

    for i in bounded:
        grow([i])
    towers.sort()
    simplices = tuple(
        tuple(_barycenter(cplx.cells[i]) for i in tower) for tower in towers
    )
    return CuttingLocus(simplices=simplices, towers=tuple(towers))


@dataclass(frozen=True)
class PrimitivePiece:
    """All cell germs retracting onto one vertex of the complex."""

    vertex: int  # index of the owning 0-cell
    fragments: tuple  # indices of cells contributing a germ at the vertex

    def __len__(self):
        return len(self.fragments)


def primitive_pieces(cplx):
    """One piece per vertex: the star fragments cut off by the locus."""
    _require_maximal(cplx)
    pieces = []
    for vid in cplx.cells_of_dim(0):
        owner = set(cplx.cells[vid].dual)
        fragments = tuple(
            i
            for i, c in enumerate(cplx.cells)
            if set(c.dual) <= owner
        )
        pieces.append(PrimitivePiece(vertex=vid, fragments=fragments))
    return pieces


@dataclass(frozen=True)
class NormalizedPiece:
    """Normalization data of a primitive piece.

    simplex_map is the lattice map taking the owning vertex's dual simplex
    to the standard simplex.  rotation (the transpose of its inverse
    rotation part) carries the local complex so that every cell germ of
    the piece lands inside the primitive complex translated by translate.
    """

    piece: PrimitivePiece
    simplex_map: AffineUnimodularMap
    rotation: tuple
    translate: tuple


def normalize_piece(cplx, piece):
    """Map a primitive piece onto an open set of the primitive complex.

    Verifies exactly that each cell germ at the owning vertex maps into
    the corresponding cone of the primitive complex.
    """
    if cplx.subdivision is None:
        raise ValueError("complex carries no dual subdivision data")
    pts = cplx.lifting.points
    vcell = cplx.cells[piece.vertex]
    members = list(vcell.dual)
    N = cplx.dim
    if len(members) != N + 1:
        raise ValueError("dual cell not unimodular")
    corners = [pts[i] for i in members]
    m_cols = [tuple(a - b for a, b in zip(p, corners[0])) for p in corners[1:]]
    mat = [[m_cols[j][i] for j in range(N)] for i in range(N)]  # columns
    d = det(mat)
    if abs(d) != 1:
        raise ValueError("dual cell not unimodular")
    if d == -1:
        if N == 1:
            corners = [corners[1], corners[0]]
        else:
            corners[1], corners[2] = corners[2], corners[1]
        m_cols = [
            tuple(a - b for a, b in zip(p, corners[0])) for p in corners[1:]
        ]
        mat = [[m_cols[j][i] for j in range(N)] for i in range(N)]
    inv = AffineUnimodularMap(tuple(tuple(r) for r in mat), (0,) * N).inverse()
    simplex_map = AffineUnimodularMap(
        inv.matrix, tuple(-x for x in inv.apply(corners[0])[: N])
    )
    # Adjoint of the inverse rotation: transpose of mat.
    rotation = tuple(tuple(mat[j][i] for j in range(N)) for i in range(N))
    a = vcell.vertices[0]  # gradient of the owning maximal cell
    translate = tuple(
        sum(rotation[i][k] * a[k] for k in range(N)) for i in range(N)
    )

    # Standard simplex vertex images: corner 0 -> origin, corner i -> e_i.
    std = [(0,) * N] + [
        tuple(1 if j == i else 0 for j in range(N)) for i in range(N)
    ]
    image_of = {}
    for pos, c in enumerate(corners):
        image_of[pts.index(c)] = std[pos]
    member_set = set(members)

    def in_model_cone(subset, w):
        """Is direction w inside the primitive-complex cone of subset?"""
        tie = [image_of[i] for i in subset]
        rest = [image_of[i] for i in member_set - set(subset)]
        p0 = tie[0]
        for p in tie[1:]:
            if dot(tuple(x - y for x, y in zip(p, p0)), w) != 0:
                return False
        for u in rest:
            for p in tie:
                if dot(tuple(x - y for x, y in zip(p, u)), w) < 0:
                    return False
        return True

    for fid in piece.fragments:
        cell = cplx.cells[fid]
        if cell.dim == 0:
            continue
        subset = cell.dual
        # The germ cone at the vertex is generated by these directions.
        dirs = []
        for v in cell.vertices:
            diff = tuple(x - y for x, y in zip(v, a))
            if any(diff):
                scale = math.lcm(*[f.denominator for f in diff])
                dirs.append(tuple(int(f * scale) for f in diff))
        dirs.extend(cell.rays)
        for w in dirs:
            rw = tuple(
                sum(rotation[i][k] * w[k] for k in range(N)) for i in range(N)
            )
            if not in_model_cone(subset, rw):
                raise RuntimeError(
                    "piece germ escapes the primitive complex"
                )  # pragma: no cover
    return NormalizedPiece(
        piece=piece,
        simplex_map=simplex_map,
        rotation=rotation,
        translate=translate,
    )


def _order_complex_chains(strat):
    """Ascending chains of the closure poset, grouped by length."""
    elements = strat.elements
    n = len(elements)
    preds = [[] for _ in range(n)]
    for b in range(n):
        for a in range(n):
            if a != b and strat.less(a, b):
                preds[b].append(a)
    chains_by_dim = {}
    stack = [(b,) for b in range(n)]
    while stack:
        chain = stack.pop()
        chains_by_dim.setdefault(len(chain) - 1, []).append(chain)
        for a in preds[chain[0]]:
            stack.append((a,) + chain)
    for k in chains_by_dim:
        chains_by_dim[k].sort()
    return chains_by_dim


def base_homology(strat):
    """Integral homology of the compactified complex, degree -> (betti,
    torsion divisors), computed on the order complex of its face poset."""
    if not isinstance(strat, StratifiedComplex):
        raise TypeError("base_homology expects a StratifiedComplex")
    chains = _order_complex_chains(strat)
    top = max(chains) if chains else -1
    index = {
        k: {c: i for i, c in enumerate(chains[k])} for k in chains
    }
    ranks = {}
    torsion = {}
    for k in range(1, top + 1):
        rows = []
        for c in chains[k]:
            entries = {}
            for i in range(len(c)):
                face = c[:i] + c[i + 1 :]
                entries[index[k - 1][face]] = (-1) ** i
            rows.append(entries)
        nrows = len(chains[k - 1])
        matrix = [[0] * len(chains[k]) for _ in range(nrows)]
        for col, entries in enumerate(rows):
            for r, val in entries.items():
                matrix[r][col] = val
        divisors = smith_invariants(matrix)
        ranks[k] = len(divisors)
        torsion[k - 1] = [d for d in divisors if d > 1]
    out = {}
    for k in range(0, top + 1):
        betti = len(chains.get(k, [])) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        out[k] = (betti, tuple(torsion.get(k, ())))
    return out


def boundary_strata_count(n, j):
    """Number of components of the depth-j boundary stratum of the
    n-dimensional pair-of-pants: C(n+2, j+2)."""
    if not 0 <= j <= n - 1:
        raise ValueError(f"stratum depth {j} out of range for dimension {n}")
    return math.comb(n + 2, j + 2)


@dataclass(frozen=True)
class InvariantReport:
    n: int
    d: int
    p_g: int
    chi: int | None = None
    sigma: int | None = None


def hypersurface_invariants(n, d):
    """Geometric genus by lattice-point count; Euler characteristic and
    signature from the degree for surfaces (n = 2), cross-checked."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    p_g = len(interior_lattice_points(dilated_simplex(n, d)))
    if n != 2:
        return InvariantReport(n=n, d=d, p_g=p_g)
    closed_form = (d - 1) * (d - 2) * (d - 3) // 6
    if p_g != closed_form:
        raise AssertionError(
            f"interior-point count {p_g} disagrees with formula {closed_form}"
        )  # pragma: no cover
    chi = d**3 - 4 * d**2 + 6 * d
    sigma = (4 * d - d**3) // 3
    assert (4 * d - d**3) % 3 == 0
    assert sigma == 4 * (p_g + 1) - chi
    return InvariantReport(n=n, d=d, p_g=p_g, chi=chi, sigma=sigma)
