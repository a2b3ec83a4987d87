"""Exact convex hull machinery for small integer point sets.

Beneath-beyond facet enumeration over plain Python integers.  Facets keep
the full set of input points lying on their hyperplane, so degenerate
inputs (ties, points interior to faces) come out exactly rather than being
perturbed away.  Intended scale: a few dozen points in dimension <= 6.
"""

from __future__ import annotations

from math import gcd


class DegenerateInput(ValueError):
    """Points do not affinely span the required dimension."""


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vector_gcd(v):
    g = 0
    for a in v:
        g = gcd(g, abs(a))
    return g


def det(rows):
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def matrix_rank(rows):
    """Rank of an integer matrix, by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    cols = len(m[0])
    rank = 0
    row = 0
    for col in range(cols):
        piv = None
        for i in range(row, len(m)):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        for i in range(row + 1, len(m)):
            if m[i][col] != 0:
                a, b = m[row][col], m[i][col]
                m[i] = [a * x - b * y for x, y in zip(m[i], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def affine_rank(points):
    """Affine rank (= affine dimension + 1) of a point collection."""
    pts = list(points)
    if not pts:
        return 0
    p0 = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in pts[1:]]
    return 1 + matrix_rank(diffs)


def affine_basis(points, indices=None):
    """Greedy maximal affinely independent subset, as indices."""
    pts = list(points)
    if indices is None:
        indices = range(len(pts))
    chosen = []
    vecs = []
    for i in indices:
        if not chosen:
            chosen.append(i)
            continue
        cand = tuple(a - b for a, b in zip(pts[i], pts[chosen[0]]))
        if matrix_rank(vecs + [cand]) > len(vecs):
            vecs.append(cand)
            chosen.append(i)
    return chosen


def hyperplane_through(points):
    """Primitive (normal, offset) of the hyperplane through dim-many
    affinely independent points in Z^dim.  normal . x == offset on them."""
    dim = len(points[0])
    p0 = points[0]
    vecs = [tuple(a - b for a, b in zip(p, p0)) for p in points[1:]]
    normal = []
    for j in range(dim):
        minor = [[v[k] for k in range(dim) if k != j] for v in vecs]
        normal.append((-1) ** j * det(minor))
    if not any(normal):
        raise DegenerateInput("points are affinely dependent")
    g = vector_gcd(normal)
    normal = tuple(a // g for a in normal)
    return normal, dot(normal, p0)


def _canonical(normal, offset):
    g = gcd(vector_gcd(normal), abs(offset))
    if g > 1:
        normal = tuple(a // g for a in normal)
        offset //= g
    return normal, offset


def convex_hull_facets(points):
    """Facets of the convex hull of full-dimensional integer points.

    Returns a list of (normal, offset, on) triples with ``normal . x <=
    offset`` valid for every input point, ``normal`` primitive-up-to-offset
    outward, and ``on`` the sorted tuple of indices of *all* input points
    satisfying equality.  Raises DegenerateInput if the points do not span.
    """
    pts = [tuple(p) for p in points]
    dim = len(pts[0])
    basis = affine_basis(pts)
    if len(basis) < dim + 1:
        raise DegenerateInput(
            f"points span affine dimension {len(basis) - 1}, need {dim}"
        )

    # Interior reference: the (scaled) centroid of the starting simplex.
    ref_sum = tuple(sum(pts[i][j] for i in basis) for j in range(dim))
    ref_scale = dim + 1

    def oriented(subset_pts):
        normal, offset = hyperplane_through(subset_pts)
        side = dot(normal, ref_sum) - ref_scale * offset
        if side > 0:
            normal = tuple(-a for a in normal)
            offset = -offset
        elif side == 0:
            raise DegenerateInput("reference point on candidate hyperplane")
        return _canonical(normal, offset)

    processed = list(basis)
    facets = {}  # (normal, offset) -> set of point indices on the facet

    for omit in range(dim + 1):
        sub = [pts[basis[k]] for k in range(dim + 1) if k != omit]
        key = oriented(sub)
        normal, offset = key
        facets[key] = {i for i in processed if dot(normal, pts[i]) == offset}

    for idx in range(len(pts)):
        if idx in basis:
            continue
        p = pts[idx]
        visible = []
        for key in facets:
            normal, offset = key
            if dot(normal, p) > offset:
                visible.append(key)
        if not visible:
            for key, on in facets.items():
                normal, offset = key
                if dot(normal, p) == offset:
                    on.add(idx)
            processed.append(idx)
            continue

        kept = {k: v for k, v in facets.items() if k not in visible}
        new_keys = set()
        for fkey in visible:
            f_on = facets[fkey]
            for gkey, g_on in kept.items():
                shared = f_on & g_on
                if len(shared) < dim - 1:
                    continue
                shared_pts = [pts[i] for i in sorted(shared)]
                if affine_rank(shared_pts) != dim - 1:
                    continue
                ridge_basis = affine_basis(shared_pts)
                cone_pts = [shared_pts[i] for i in ridge_basis] + [p]
                if affine_rank(cone_pts) != dim:
                    continue  # p lies in the ridge's affine span
                key = oriented(cone_pts)
                if key in kept or key in new_keys:
                    continue
                normal, offset = key
                # Exact safety net: a genuine new facet supports everything.
                if any(dot(normal, pts[i]) > offset for i in processed):
                    raise AssertionError("non-supporting candidate facet")
                new_keys.add(key)
        processed.append(idx)
        for key in visible:
            del facets[key]
        for key in new_keys:
            normal, offset = key
            facets[key] = {
                i for i in processed if dot(normal, pts[i]) == offset
            }
        for key, on in facets.items():
            normal, offset = key
            if key not in new_keys and dot(normal, p) == offset:
                on.add(idx)

    return [
        (normal, offset, tuple(sorted(on)))
        for (normal, offset), on in sorted(facets.items())
    ]


def lower_facets(points):
    """Lower facets (outward normal with negative last coordinate) of the
    hull of integer points, for lifted-point computations.

    Also handles the degenerate-but-legal case of all points lying on a
    single non-vertical hyperplane, which yields one big "facet".
    Returns triples like convex_hull_facets.
    """
    pts = [tuple(p) for p in points]
    dim = len(pts[0])
    rank = affine_rank(pts)
    if rank == dim:
        base = affine_basis(pts)
        normal, offset = hyperplane_through([pts[i] for i in base])
        if normal[-1] == 0:
            raise DegenerateInput("point set is vertically degenerate")
        if normal[-1] > 0:
            normal = tuple(-a for a in normal)
            offset = -offset
        return [(normal, offset, tuple(range(len(pts))))]
    facets = convex_hull_facets(pts)
    return [f for f in facets if f[0][-1] < 0]
