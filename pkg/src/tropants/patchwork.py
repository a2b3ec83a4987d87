"""Combinatorial patchworking in the positive orthant.

Signs on the vertices of a unimodular triangulation determine a PL
membrane (one piece per mixed-sign simplex, spanned by midpoints of
sign-changing edges).  For a single negative sign at an interior lattice
point the membrane closes up into a sphere whose image in the tropical
complex is a degree-n cycle pairing nonzero with that point's homology
generator.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .hull import det, dot
from .tropical import incidence_number, oriented_covector

__all__ = [
    "MembraneCycle",
    "MembranePiece",
    "SignMembrane",
    "build_membrane",
    "membrane_base_class",
    "single_negative_signs",
    "verify_sphere",
]


def _triangulation_vertices(sub):
    out = set()
    for cell in sub.cells:
        out.update(cell.points)
    return out


def single_negative_signs(sub, point):
    """Sign distribution -1 at one triangulation vertex, +1 elsewhere."""
    p = tuple(point)
    verts = _triangulation_vertices(sub)
    pts = sub.lifting.points
    if p not in {pts[i] for i in verts}:
        raise ValueError(f"{p} is not a vertex of the triangulation")
    return {pts[i]: (-1 if pts[i] == p else 1) for i in sorted(verts)}


@dataclass(frozen=True)
class MembranePiece:
    """The membrane inside one mixed simplex: hull of the midpoints of its
    sign-changing edges."""

    cell_index: int
    midpoints: tuple  # sorted tuples of Fractions


@dataclass
class SignMembrane:
    subdivision: object
    signs: dict
    pieces: tuple
    mixed_faces: dict  # face dim -> set of frozensets of A-indices
    adjacency: tuple  # piece index pairs sharing a ridge

    def __len__(self):
        return len(self.pieces)


def _midpoint(p, q):
    return tuple(Fraction(a + b, 2) for a, b in zip(p, q))


def build_membrane(sub, signs):
    """PL membrane separating the signs inside each mixed simplex."""
    from .subdivision import is_unimodular

    ok, bad = is_unimodular(sub)
    if not ok:
        raise ValueError(
            f"membrane needs a unimodular triangulation; cell {bad.points} fails"
        )
    pts = sub.lifting.points
    sigma = {tuple(p): s for p, s in signs.items()}
    for i in _triangulation_vertices(sub):
        if pts[i] not in sigma:
            raise ValueError(f"sign missing at vertex {pts[i]}")
    pieces = []
    mixed_faces = {}
    for ci, cell in enumerate(sub.cells):
        members = cell.points
        cell_signs = [sigma[pts[i]] for i in members]
        if len(set(cell_signs)) < 2:
            continue
        mids = []
        for a, b in itertools.combinations(range(len(members)), 2):
            if cell_signs[a] * cell_signs[b] < 0:
                mids.append(_midpoint(pts[members[a]], pts[members[b]]))
        pieces.append(
            MembranePiece(cell_index=ci, midpoints=tuple(sorted(mids)))
        )
        for size in range(2, len(members) + 1):
            for sub_idx in itertools.combinations(range(len(members)), size):
                if len({cell_signs[i] for i in sub_idx}) == 2:
                    key = frozenset(members[i] for i in sub_idx)
                    mixed_faces.setdefault(size - 1, set()).add(key)
    ridge_owner = {}
    adjacency = set()
    N = sub.lifting.dim
    for pi, piece in enumerate(pieces):
        members = sub.cells[piece.cell_index].points
        cell_signs = {i: sigma[pts[i]] for i in members}
        for facet in itertools.combinations(members, N):
            if len({cell_signs[i] for i in facet}) == 2:
                key = frozenset(facet)
                if key in ridge_owner:
                    adjacency.add((ridge_owner[key], pi))
                else:
                    ridge_owner[key] = pi
    return SignMembrane(
        subdivision=sub,
        signs=sigma,
        pieces=tuple(pieces),
        mixed_faces=mixed_faces,
        adjacency=tuple(sorted(adjacency)),
    )


def verify_sphere(membrane):
    """Combinatorial sphere evidence: closedness, connectivity, Euler.

    closed: every ridge (mixed codimension-1 face of the triangulation)
    lies in exactly two pieces.  euler counts membrane faces of every
    dimension: a mixed k-face of the triangulation carries a (k-1)-cell.
    """
    if not membrane.pieces:
        raise ValueError("membrane is empty")
    sub = membrane.subdivision
    N = sub.lifting.dim
    ridge_count = {}
    pts = sub.lifting.points
    for piece in membrane.pieces:
        members = sub.cells[piece.cell_index].points
        for facet in itertools.combinations(members, N):
            if len({membrane.signs[pts[i]] for i in facet}) == 2:
                key = frozenset(facet)
                ridge_count[key] = ridge_count.get(key, 0) + 1
    closed = all(c == 2 for c in ridge_count.values())
    seen = set()
    stack = [0]
    adj = {}
    for a, b in membrane.adjacency:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    while stack:
        i = stack.pop()
        if i in seen:
            continue
        seen.add(i)
        stack.extend(adj.get(i, ()))
    connected = len(seen) == len(membrane.pieces)
    euler = 0
    for k, faces in membrane.mixed_faces.items():
        euler += (-1) ** (k - 1) * len(faces)
    return {"closed": closed, "connected": connected, "euler": euler}


@dataclass
class MembraneCycle:
    """A degree-n cellular cycle: coefficients on n-cells of the complex,
    relative to the cells' reference orientations."""

    complex: object
    coefficients: dict  # cell index -> +-1
    negative_point: tuple

    def boundary_vanishes(self):
        cplx = self.complex
        n = cplx.n
        for gid in cplx.cells_of_dim(n - 1):
            total = 0
            for fid in cplx.coboundary(gid):
                if fid in self.coefficients:
                    total += self.coefficients[fid] * incidence_number(
                        cplx, fid, gid
                    )
            if total != 0:
                return False
        return True

    def pairing(self, interior_point):
        """Intersection degree of the cycle with a ray from the bounded
        complement region of the given interior lattice point."""
        return _ray_degree(self.complex, self.coefficients, interior_point)


def _region_interior_point(cplx, lattice_point):
    pts = cplx.lifting.points
    idx = pts.index(tuple(lattice_point))
    owners = [
        c.gradient
        for c in cplx.subdivision.cells
        if idx in c.points
    ]
    if not owners:
        raise ValueError(f"{lattice_point} is not a vertex of the subdivision")
    n = cplx.dim
    return tuple(
        sum(g[i] for g in owners) / Fraction(len(owners)) for i in range(n)
    )


def _ray_degree(cplx, coefficients, lattice_point, seed=0):
    base = _region_interior_point(cplx, lattice_point)
    rng = random.Random(seed)
    N = cplx.dim
    for _ in range(64):
        direction = tuple(rng.randrange(-97, 98) for _ in range(N))
        if not any(direction):
            continue
        total = 0
        degenerate = False
        for fid, coeff in coefficients.items():
            cell = cplx.cells[fid]
            cov = oriented_covector(cplx, fid)
            covec, rhs0 = cell.equalities[0]
            scale = Fraction(cov[next(i for i, c in enumerate(covec) if c)],
                             covec[next(i for i, c in enumerate(covec) if c)])
            rhs = rhs0 * scale
            denom = dot(cov, direction)
            num = rhs - dot(cov, base)
            if denom == 0:
                if num == 0:
                    degenerate = True
                    break
                continue
            s = Fraction(num, denom)
            if s <= 0:
                continue
            point = tuple(b + s * d for b, d in zip(base, direction))
            strict = cell.contains(point, strict=True)
            if not strict:
                if cell.contains(point, strict=False):
                    degenerate = True
                    break
                continue
            total += coeff * (1 if denom > 0 else -1)
        if not degenerate:
            return total
    raise RuntimeError("no transverse ray found")  # pragma: no cover


def membrane_base_class(membrane, cplx):
    """The degree-n cycle swept by a single-negative membrane.

    Requires the membrane's triangulation to be the one dual to the
    complex and the sign distribution to be single-negative at an interior
    lattice point.  The returned cycle is verified to have vanishing
    cellular boundary.
    """
    sub = membrane.subdivision
    if cplx.subdivision is None or cplx.lifting.points != sub.lifting.points \
            or cplx.lifting.values != sub.lifting.values:
        raise ValueError("membrane and complex come from different liftings")
    negatives = [p for p, s in membrane.signs.items() if s < 0]
    if len(negatives) != 1:
        raise ValueError("base class needs a single negative sign")
    j = negatives[0]
    delta = cplx.lifting.polytope
    for normal, offset, _ in delta.facets:
        if dot(normal, j) == offset:
            raise ValueError("negative sign must sit at an interior point")
    pts = cplx.lifting.points
    jidx = pts.index(j)
    coefficients = {}
    for key, fdim in cplx._faces.items():
        if fdim != 1 or jidx not in key:
            continue
        members = sorted(key)
        fid = cplx.dual_cell_index(members)
        other = next(i for i in members if i != jidx)
        outward = tuple(a - b for a, b in zip(pts[other], j))
        cov = oriented_covector(cplx, fid)
        if cov == outward:
            coefficients[fid] = 1
        elif cov == tuple(-c for c in outward):
            coefficients[fid] = -1
        else:
            raise AssertionError("edge covector mismatch")  # pragma: no cover
    cycle = MembraneCycle(
        complex=cplx, coefficients=coefficients, negative_point=j
    )
    if not cycle.boundary_vanishes():
        raise AssertionError("membrane chain failed the cycle check")
    return cycle
