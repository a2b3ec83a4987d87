"""Exact lattice geometry: polytopes, volumes, lattice points, Smith form.

Everything here is integer/rational arithmetic; no floats.  Points are
plain tuples of ints, covectors are tuples of ints acting by dot product.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .hull import (
    DegenerateInput,
    affine_basis,
    affine_rank,
    convex_hull_facets,
    det,
    dot,
    lower_facets,
    matrix_rank,
    vector_gcd,
)

__all__ = [
    "AffineUnimodularMap",
    "LatticePolytope",
    "dilated_simplex",
    "interior_lattice_points",
    "lattice_points",
    "normalized_volume",
    "primitive_and_weight",
    "primitive_vector",
    "saturated_direction_basis",
    "smith_invariants",
    "smith_normal_form",
]


def primitive_and_weight(covector):
    """Split an integer covector into (primitive part, positive weight)."""
    c = tuple(covector)
    g = vector_gcd(c)
    if g == 0:
        raise ValueError("degenerate covector")
    return tuple(a // g for a in c), g


def primitive_vector(v):
    return primitive_and_weight(v)[0]


@dataclass(frozen=True)
class AffineUnimodularMap:
    """x -> matrix @ x + translation with integer matrix of determinant +-1."""

    matrix: tuple
    translation: tuple

    def __post_init__(self):
        d = det(self.matrix)
        if d not in (1, -1):
            raise ValueError(f"matrix determinant {d}, expected +-1")

    @property
    def determinant(self):
        return det(self.matrix)

    @property
    def special(self):
        return self.determinant == 1

    def apply(self, point):
        return tuple(
            dot(row, point) + t for row, t in zip(self.matrix, self.translation)
        )

    def inverse(self):
        n = len(self.matrix)
        d = self.determinant
        adj = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = [
                    [self.matrix[r][c] for c in range(n) if c != i]
                    for r in range(n)
                    if r != j
                ]
                row.append((-1) ** (i + j) * det(minor) * d)
            adj.append(tuple(row))
        inv = AffineUnimodularMap(tuple(adj), (0,) * n)
        return AffineUnimodularMap(
            tuple(adj), tuple(-x for x in inv.apply(self.translation))
        )

    def compose(self, other):
        """self after other."""
        n = len(self.matrix)
        mat = tuple(
            tuple(
                sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n))
                for j in range(n)
            )
            for i in range(n)
        )
        return AffineUnimodularMap(mat, self.apply(other.translation))

    @classmethod
    def identity(cls, dim):
        return cls(
            tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)),
            (0,) * dim,
        )


class LatticePolytope:
    """Bounded convex lattice polytope with exact facet and face data."""

    def __init__(self, points):
        pts = sorted({tuple(int(c) for c in p) for p in points})
        if not pts:
            raise ValueError("empty vertex set")
        self.dim = len(pts[0])
        self._points = pts
        rank = affine_rank(pts)
        self.affine_dim = rank - 1
        if rank == self.dim + 1:
            facets = convex_hull_facets(pts)
            vertex_idx = []
            for i, p in enumerate(pts):
                active = [f[0] for f in facets if i in f[2]]
                if matrix_rank(active) == self.dim:
                    vertex_idx.append(i)
            self.vertices = tuple(pts[i] for i in vertex_idx)
            old_to_new = {o: n for n, o in enumerate(vertex_idx)}
            self.facets = tuple(
                (normal, offset, tuple(old_to_new[i] for i in on if i in old_to_new))
                for normal, offset, on in facets
            )
        else:
            # Lower-dimensional: vertices found inside the affine span.
            self.vertices = tuple(_extreme_points_lowdim(pts))
            self.facets = ()
        self._faces = None

    def __repr__(self):
        return f"LatticePolytope(dim={self.dim}, vertices={len(self.vertices)})"

    def __eq__(self, other):
        return (
            isinstance(other, LatticePolytope) and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash(self.vertices)

    @property
    def full_dimensional(self):
        return self.affine_dim == self.dim

    def contains(self, point, strict=False):
        if not self.full_dimensional:
            raise ValueError("containment test requires a full-dimensional polytope")
        for normal, offset, _ in self.facets:
            val = dot(normal, point)
            if val > offset or (strict and val == offset):
                return False
        return True

    def face_lattice(self):
        """dimension -> list of faces, each a sorted tuple of vertices."""
        if self._faces is not None:
            return self._faces
        if not self.full_dimensional:
            raise ValueError("face lattice requires a full-dimensional polytope")
        sets = {frozenset(on) for _, _, on in self.facets}
        closure = set(sets)
        frontier = set(sets)
        while frontier:
            new = set()
            for a in frontier:
                for b in sets:
                    c = a & b
                    if c and c not in closure:
                        new.add(c)
            closure |= new
            frontier = new
        closure.add(frozenset(range(len(self.vertices))))
        faces = {}
        for s in closure:
            pts = tuple(sorted(self.vertices[i] for i in s))
            d = affine_rank(pts) - 1
            faces.setdefault(d, []).append(pts)
        for d in faces:
            faces[d].sort()
        self._faces = faces
        return faces

    def proper_faces(self):
        """All proper faces (dim < ambient), as (dim, vertex tuple) pairs."""
        lat = self.face_lattice()
        return [
            (d, f) for d in sorted(lat) if d < self.dim for f in lat[d]
        ]


def _extreme_points_lowdim(pts):
    basis = saturated_direction_basis(pts)
    origin = pts[0]
    coords = [_lattice_coordinates(p, origin, basis) for p in pts]
    if not basis:
        return [origin]
    if len(basis) == 1:
        lo = min(coords)
        hi = max(coords)
        out = sorted({pts[coords.index(lo)], pts[coords.index(hi)]})
        return out
    sub = LatticePolytope(coords)
    keep = set(sub.vertices)
    return sorted(p for p, c in zip(pts, coords) if tuple(c) in keep)


def lattice_points(polytope):
    """All lattice points of a full-dimensional LatticePolytope."""
    P = polytope
    if not P.full_dimensional:
        raise ValueError("lattice point enumeration requires full dimension")
    los = [min(v[i] for v in P.vertices) for i in range(P.dim)]
    his = [max(v[i] for v in P.vertices) for i in range(P.dim)]
    out = []
    for p in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(los, his))):
        if P.contains(p):
            out.append(p)
    return out


def interior_lattice_points(polytope):
    """Lattice points strictly inside every facet of the polytope."""
    P = polytope
    if not P.full_dimensional:
        return []
    los = [min(v[i] for v in P.vertices) for i in range(P.dim)]
    his = [max(v[i] for v in P.vertices) for i in range(P.dim)]
    out = []
    for p in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(los, his))):
        if P.contains(p, strict=True):
            out.append(p)
    return out


def dilated_simplex(n, d):
    """The degree-d simplex {x >= 0, sum x <= d} in R^(n+1)."""
    if n < 1 or d < 1:
        raise ValueError("dimension and degree must both be >= 1")
    dim = n + 1
    verts = [(0,) * dim]
    for i in range(dim):
        v = [0] * dim
        v[i] = d
        verts.append(tuple(v))
    return LatticePolytope(verts)


def _triangulate_vertices(vertices, seed=0):
    """Triangulate conv(vertices) into simplices via a generic lifting."""
    dim = len(vertices[0])
    if len(vertices) == dim + 1:
        return [tuple(range(len(vertices)))]
    rng = random.Random(seed)
    for attempt in range(64):
        heights = [rng.randrange(-(2**30), 2**30) for _ in vertices]
        lifted = [tuple(v) + (h,) for v, h in zip(vertices, heights)]
        try:
            cells = lower_facets(lifted)
        except DegenerateInput:
            continue
        if all(len(on) == dim + 1 for _, _, on in cells):
            return [on for _, _, on in cells]
    raise RuntimeError("failed to find a generic lifting")  # pragma: no cover


def normalized_volume(polytope):
    """(dim)!-normalized volume; 0 for polytopes that do not span."""
    P = polytope
    if not P.vertices:
        raise ValueError("empty vertex set")
    if not P.full_dimensional:
        return 0
    total = 0
    for cell in _triangulate_vertices(P.vertices):
        p0 = P.vertices[cell[0]]
        edges = [
            tuple(a - b for a, b in zip(P.vertices[i], p0)) for i in cell[1:]
        ]
        total += abs(det(edges))
    return total


def intrinsic_normalized_volume(points):
    """Normalized volume of conv(points) inside its own saturated lattice."""
    pts = [tuple(p) for p in points]
    basis = saturated_direction_basis(pts)
    if not basis:
        return 0
    origin = pts[0]
    coords = [_lattice_coordinates(p, origin, basis) for p in pts]
    return normalized_volume(LatticePolytope(coords))


def _lattice_coordinates(point, origin, basis):
    """Integer coordinates of point-origin in the given lattice basis."""
    diff = [a - b for a, b in zip(point, origin)]
    if not basis:
        if any(diff):
            raise ValueError("point outside lattice span")
        return ()
    k = len(basis)
    n = len(diff)
    # Solve basis^T . xi = diff exactly over the rationals.
    rows = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(diff[i])] for i in range(n)]
    xi = _solve_exact(rows, k)
    out = []
    for x in xi:
        if x.denominator != 1:
            raise ValueError("point not in the saturated lattice")
        out.append(int(x))
    return tuple(out)


def _solve_exact(rows, ncols):
    """Least-structure exact solve of an overdetermined consistent system."""
    m = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][-1] != 0:
            raise ValueError("inconsistent linear system")
    sol = [Fraction(0)] * ncols
    for row_i, c in enumerate(pivots):
        sol[c] = m[row_i][-1]
    return sol


def saturated_direction_basis(points):
    """Integer basis of (linear span of point differences) intersect Z^n.

    The result is saturated: every lattice point of the span is an integer
    combination of the basis vectors.
    """
    pts = [tuple(p) for p in points]
    p0 = pts[0]
    gens = [tuple(a - b for a, b in zip(p, p0)) for p in pts[1:]]
    gens = [g for g in gens if any(g)]
    if not gens:
        return []
    d, _, _, _, vinv = smith_normal_form(gens)
    r = sum(1 for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i] != 0)
    return [tuple(vinv[i]) for i in range(r)]


def smith_normal_form(matrix):
    """Full Smith normal form with transforms, for small dense matrices.

    Returns (d, u, v, uinv, vinv) with u @ m @ v = d, all integer, u and v
    unimodular.  Rows of vinv[:rank] form a saturated basis of the row span.
    """
    m = [list(r) for r in matrix]
    nr = len(m)
    nc = len(m[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    uinv = [row[:] for row in u]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]
    vinv = [row[:] for row in v]

    def row_op(i, j, q):  # row_i -= q * row_j
        m[i] = [a - q * b for a, b in zip(m[i], m[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]
        for k in range(nr):
            uinv[k][j] += q * uinv[k][i]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in m:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]
        vinv[j] = [a + q * b for a, b in zip(vinv[j], vinv[i])]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]
        for k in range(nr):
            uinv[k][i], uinv[k][j] = uinv[k][j], uinv[k][i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best[0]):
                    best = (abs(m[i][j]), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        done = False
        while not done:
            done = True
            for i in range(t + 1, nr):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    row_op(i, t, q)
                    if m[i][t] != 0:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, nc):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    col_op(j, t, q)
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        done = False
        if m[t][t] < 0:
            m[t] = [-a for a in m[t]]
            u[t] = [-a for a in u[t]]
            for k in range(nr):
                uinv[k][t] = -uinv[k][t]
        t += 1

    # Divisibility fixup along the diagonal.
    changed = True
    r = t
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = m[i][i], m[i + 1][i + 1]
            if b % a != 0:
                g = gcd(a, b)
                lc = a // g * b
                m[i][i], m[i + 1][i + 1] = g, lc
                # Fix transforms by redoing the 2x2 block exactly.
                # (a 0; 0 b) = (1 0; s 1)...; cheaper: fold into u/v lazily.
                _fix_block(u, uinv, v, vinv, i, a, b, g)
                changed = True
    return m, u, v, uinv, vinv


def _fix_block(u, uinv, v, vinv, i, a, b, g):
    """Update transforms for diag(a, b) -> diag(g, lcm) at rows/cols i, i+1."""
    # With x*a + y*b = g:  (1 1; y*b/g -x*a/g... ) standard construction:
    # L = (1, 1; -b/g * y ... ) -- use the explicit 2x2 unimodular pair.
    x, y = _bezout(a, b)
    # L @ diag(a,b) @ R = diag(g, lcm) with
    # L = [[x, y], [-b//g, a//g]],  R = [[1, -y*b//g], [1, x*a//g]]
    L = [[x, y], [-(b // g), a // g]]
    R = [[1, -(y * b) // g], [1, (x * a) // g]]
    _apply_left_2x2(u, i, L)
    _apply_right_2x2_inv(uinv, i, L)
    _apply_right_2x2(v, i, R)
    _apply_left_2x2_inv(vinv, i, R)


def _bezout(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


def _apply_left_2x2(mat, i, L):
    ri, rj = mat[i][:], mat[i + 1][:]
    mat[i] = [L[0][0] * a + L[0][1] * b for a, b in zip(ri, rj)]
    mat[i + 1] = [L[1][0] * a + L[1][1] * b for a, b in zip(ri, rj)]


def _apply_right_2x2(mat, i, R):
    for row in mat:
        a, b = row[i], row[i + 1]
        row[i] = a * R[0][0] + b * R[1][0]
        row[i + 1] = a * R[0][1] + b * R[1][1]


def _inv_2x2(M):
    d = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    assert d in (1, -1)
    return [[M[1][1] * d, -M[0][1] * d], [-M[1][0] * d, M[0][0] * d]]


def _apply_right_2x2_inv(mat, i, L):
    _apply_right_2x2(mat, i, _inv_2x2(L))


def _apply_left_2x2_inv(mat, i, R):
    _apply_left_2x2(mat, i, _inv_2x2(R))


class _SparseInt:
    """Mutable sparse integer matrix supporting elementary operations."""

    def __init__(self, matrix):
        self.rows = {}
        self.cols = {}
        self.units = {}  # insertion-ordered set of (i, j) with |value| == 1
        for i, row in enumerate(matrix):
            for j, val in enumerate(row):
                if val:
                    self.set(i, j, int(val))

    def set(self, i, j, val):
        row = self.rows.setdefault(i, {})
        old = row.get(j)
        if val == 0:
            if old is not None:
                del row[j]
                if not row:
                    del self.rows[i]
                col = self.cols[j]
                col.discard(i)
                if not col:
                    del self.cols[j]
                self.units.pop((i, j), None)
            return
        row[j] = val
        self.cols.setdefault(j, set()).add(i)
        if abs(val) == 1:
            self.units[(i, j)] = None
        else:
            self.units.pop((i, j), None)

    def add(self, i, j, delta):
        if delta:
            self.set(i, j, self.rows.get(i, {}).get(j, 0) + delta)

    def add_row(self, dst, src, factor):
        """row_dst += factor * row_src."""
        if factor == 0:
            return
        for j, val in list(self.rows.get(src, {}).items()):
            self.add(dst, j, factor * val)

    def swap_rows(self, a, b):
        ra = self.rows.pop(a, {})
        rb = self.rows.pop(b, {})
        for j in set(ra) | set(rb):
            for rid in (a, b):
                self.units.pop((rid, j), None)
                self.cols.get(j, set()).discard(rid)
            if j in self.cols and not self.cols[j]:
                del self.cols[j]
        for rid, r in ((a, rb), (b, ra)):
            for j, val in r.items():
                self.set(rid, j, val)

    def swap_cols(self, a, b):
        touched = set(self.cols.get(a, ())) | set(self.cols.get(b, ()))
        moves = []
        for i in touched:
            row = self.rows.get(i, {})
            moves.append((i, row.get(a), row.get(b)))
        for i, va, vb in moves:
            self.set(i, a, 0)
            self.set(i, b, 0)
        for i, va, vb in moves:
            if vb is not None:
                self.set(i, a, vb)
            if va is not None:
                self.set(i, b, va)

    def pick_pivot(self):
        while self.units:
            (i, j), _ = self.units.popitem()
            val = self.rows.get(i, {}).get(j)
            if val is not None and abs(val) == 1:
                self.units[(i, j)] = None
                return i, j
        best = None
        for i, row in self.rows.items():
            for j, val in row.items():
                if best is None or abs(val) < best[0]:
                    best = (abs(val), i, j)
        return (best[1], best[2]) if best else None


def smith_invariants(matrix):
    """Elementary divisors d1 | d2 | ... of an integer matrix.

    Sparse gcd elimination; handles the boundary matrices of desk-scale
    cell complexes as well as toy dense inputs.
    """
    m = _SparseInt(matrix)
    divisors = []
    while m.rows:
        pi, pj = m.pick_pivot()
        while True:
            piv = m.rows[pi][pj]
            bad = next(
                (
                    i
                    for i in m.cols[pj]
                    if i != pi and m.rows[i][pj] % piv != 0
                ),
                None,
            )
            if bad is not None:
                m.add_row(bad, pi, -(m.rows[bad][pj] // piv))
                m.swap_rows(pi, bad)
                continue
            for i in [i for i in m.cols[pj] if i != pi]:
                m.add_row(i, pi, -(m.rows[i][pj] // piv))
            badj = next(
                (
                    j
                    for j, val in m.rows[pi].items()
                    if j != pj and val % piv != 0
                ),
                None,
            )
            if badj is None:
                break
            # Column pj is clear, so col_badj -= q * col_pj only touches the
            # pivot row; swapping the columns then shrinks |pivot|.
            q = m.rows[pi][badj] // piv
            m.add(pi, badj, -q * piv)
            m.swap_cols(pj, badj)
        piv = m.rows[pi][pj]
        for j in [j for j in m.rows[pi] if j != pj]:
            # Only the pivot row has support in column pj, so this is the
            # column operation col_j -= (val / piv) * col_pj.
            m.set(pi, j, 0)
        divisors.append(abs(piv))
        m.set(pi, pj, 0)
    changed = True
    while changed:
        changed = False
        divisors.sort()
        for i in range(len(divisors) - 1):
            a, b = divisors[i], divisors[i + 1]
            if b % a != 0:
                g = gcd(a, b)
                divisors[i], divisors[i + 1] = g, a // g * b
                changed = True
    return divisors
