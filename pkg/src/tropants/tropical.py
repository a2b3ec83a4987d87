"""Weighted balanced polyhedral complexes dual to regular subdivisions.

A lifting function v on A induces the convex PL function
L(y) = max_x (x.y - v(x)); its corner locus is an (n=dim-1)-dimensional
weighted complex in R^dim.  Cells are represented through the faces of the
dual subdivision, with exact rational V- and H-descriptions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .hull import (
    DegenerateInput,
    affine_basis,
    affine_rank,
    convex_hull_facets,
    det,
    dot,
    matrix_rank,
    vector_gcd,
)
from .lattice import (
    _solve_exact,
    lattice_points,
    primitive_vector,
    saturated_direction_basis,
)
from .subdivision import (
    LiftingFunction,
    RegularSubdivision,
    is_unimodular,
    lower_hull_subdivision,
)

__all__ = [
    "RegionGraph",
    "StratifiedComplex",
    "TropicalCell",
    "TropicalComplex",
    "Wall",
    "check_balanced",
    "corner_locus",
    "extract_region_graph",
    "face_complex",
    "incidence_number",
    "phi_delta",
    "primitive_complex",
    "reconstruct_lifting",
    "stratify",
    "vertex_edge_data",
    "vertex_edge_weights",
]


@dataclass(frozen=True)
class TropicalCell:
    """One cell of the corner locus.

    vertices/rays give the exact V-description (rays are primitive integer
    recession generators; empty iff bounded).  equalities are pairs
    (covector, rhs) with covector . y == rhs on the cell; inequalities are
    pairs with covector . y >= rhs, strict on the relative interior.
    weight is set on n-cells only.
    """

    dim: int
    dual: tuple
    vertices: tuple
    rays: tuple
    bounded: bool
    weight: int | None
    equalities: tuple
    inequalities: tuple

    def key(self):
        """Geometric identity, independent of dual indexing."""
        return (self.dim, self.vertices, self.rays, self.weight)

    def relint_point(self):
        n = len(self.vertices[0])
        acc = [Fraction(0)] * n
        for v in self.vertices:
            for i in range(n):
                acc[i] += v[i]
        acc = [a / len(self.vertices) for a in acc]
        for r in self.rays:
            for i in range(n):
                acc[i] += r[i]
        return tuple(acc)

    def covector(self):
        """Primitive normal covector of an n-cell (sign unspecified)."""
        if len(self.equalities) != 1:
            raise ValueError("covector is defined for n-cells only")
        return primitive_vector(self.equalities[0][0])

    def contains(self, point, strict=False):
        for c, rhs in self.equalities:
            if dot(c, point) != rhs:
                return False
        for c, rhs in self.inequalities:
            val = dot(c, point)
            if val < rhs or (strict and val == rhs):
                return False
        return True


class TropicalComplex:
    """Cells of the corner locus plus their incidence structure."""

    def __init__(self, dim, cells, boundary, lifting=None, subdivision=None,
                 face_chart=None):
        self.dim = dim
        self.n = dim - 1
        self.cells = tuple(cells)
        self.boundary = tuple(tuple(b) for b in boundary)
        self.lifting = lifting
        self.subdivision = subdivision
        self.face_chart = face_chart

    def __repr__(self):
        per_dim = {}
        for c in self.cells:
            per_dim[c.dim] = per_dim.get(c.dim, 0) + 1
        return f"TropicalComplex(dim={self.dim}, cells={per_dim})"

    def cells_of_dim(self, k):
        return [i for i, c in enumerate(self.cells) if c.dim == k]

    def coboundary(self, idx):
        return [i for i, b in enumerate(self.boundary) if idx in b]

    def cell_keys(self):
        return sorted(c.key() for c in self.cells)

    def same_cells(self, other):
        return self.cell_keys() == other.cell_keys()

    def dual_cell_index(self, point_indices):
        target = tuple(sorted(point_indices))
        for i, c in enumerate(self.cells):
            if c.dual == target:
                return i
        raise KeyError(f"no cell dual to {target}")


def _cell_faces(points_of_cell, indices):
    """All faces of one maximal cell as (dim, frozenset of A-indices)."""
    dim = len(points_of_cell[0])
    out = []
    if len(indices) == dim + 1 and affine_rank(points_of_cell) == dim + 1:
        for size in range(1, dim + 2):
            for sub in itertools.combinations(range(dim + 1), size):
                out.append((size - 1, frozenset(indices[i] for i in sub)))
        return out
    facets = convex_hull_facets(points_of_cell)
    sets = {frozenset(on) for _, _, on in facets}
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
    closure.add(frozenset(range(len(indices))))
    for s in closure:
        pts = [points_of_cell[i] for i in s]
        out.append((affine_rank(pts) - 1, frozenset(indices[i] for i in s)))
    return out


def _subdivision_faces(sub):
    """Face poset of the subdivision: frozenset(A-indices) -> dimension."""
    pts = sub.lifting.points
    faces = {}
    for cell in sub.cells:
        coords = [pts[i] for i in cell.points]
        for fdim, key in _cell_faces(coords, cell.points):
            faces[key] = fdim
    return faces


def _delta_facet_data(lifting):
    """Facets of the Newton polytope with their A-point incidences."""
    delta = lifting.polytope
    out = []
    for normal, offset, _ in delta.facets:
        on = frozenset(
            i for i, p in enumerate(lifting.points) if dot(normal, p) == offset
        )
        out.append((primitive_vector(normal), normal, offset, on))
    return out


def corner_locus(lifting):
    """The weighted tropical complex dual to the lower-hull subdivision."""
    sub = lower_hull_subdivision(lifting)
    return complex_from_subdivision(sub)


def complex_from_subdivision(sub):
    lifting = sub.lifting
    pts = lifting.points
    vals = lifting.values
    N = lifting.dim
    faces = _subdivision_faces(sub)
    facet_data = _delta_facet_data(lifting)
    cell_point_sets = [frozenset(c.points) for c in sub.cells]

    entries = []  # (sort key, face key, TropicalCell)
    for key, fdim in faces.items():
        if fdim < 1:
            continue
        k = N - fdim
        owners = [
            sub.cells[i] for i, s in enumerate(cell_point_sets) if key <= s
        ]
        vertices = tuple(sorted({c.gradient for c in owners}))
        rays = tuple(
            sorted({prim for prim, _, _, on in facet_data if key <= on})
        )
        members = sorted(key)
        base = members[0]
        basis_local = affine_basis([pts[i] for i in members])
        equalities = []
        b0 = members[basis_local[0]]
        for li in basis_local[1:]:
            i = members[li]
            cov = tuple(a - b for a, b in zip(pts[i], pts[b0]))
            equalities.append((cov, vals[i] - vals[b0]))
        inequalities = []
        seen = set()
        for u in range(len(pts)):
            if u in key:
                continue
            cov = tuple(a - b for a, b in zip(pts[b0], pts[u]))
            rhs = vals[b0] - vals[u]
            if (cov, rhs) not in seen:
                seen.add((cov, rhs))
                inequalities.append((cov, rhs))
        weight = None
        if fdim == 1:
            direction = next(
                tuple(a - b for a, b in zip(pts[i], pts[b0]))
                for i in members
                if pts[i] != pts[b0]
            )
            params = [(dot(pts[i], direction), i) for i in members]
            lo = min(params)[1]
            hi = max(params)[1]
            weight = vector_gcd(
                tuple(a - b for a, b in zip(pts[hi], pts[lo]))
            )
        cell = TropicalCell(
            dim=k,
            dual=tuple(members),
            vertices=vertices,
            rays=rays,
            bounded=not rays,
            weight=weight,
            equalities=tuple(equalities),
            inequalities=tuple(inequalities),
        )
        entries.append(((k, tuple(members)), key, cell))

    entries.sort(key=lambda e: e[0])
    index_of = {key: i for i, (_, key, _) in enumerate(entries)}
    boundary = []
    for _, key, cell in entries:
        fdim = faces[key]
        bnd = [
            index_of[other]
            for other, odim in faces.items()
            if odim == fdim + 1 and key < other
        ]
        boundary.append(tuple(sorted(bnd)))
    cplx = TropicalComplex(
        N,
        [c for _, _, c in entries],
        boundary,
        lifting=lifting,
        subdivision=sub,
    )
    cplx._faces = faces
    return cplx


def primitive_complex(n):
    """Corner locus of max(0, y_1, ..., y_{n+1}): the local model."""
    dim = n + 1
    points = [(0,) * dim] + [
        tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)
    ]
    return corner_locus(LiftingFunction(points, [0] * (dim + 1)))


def _quotient_pair_basis(equalities):
    """Saturated integer basis of the rank-2 covector annihilator."""
    covs = [c for c, _ in equalities]
    zero = tuple(0 for _ in covs[0])
    basis = saturated_direction_basis([zero] + covs)
    if len(basis) != 2:
        raise ValueError("cell does not have codimension 2")
    return basis


def _in_covector_basis(cov, basis):
    """Integer coordinates of cov in a saturated rank-2 covector basis."""
    n = len(cov)
    rows = [
        [Fraction(basis[0][i]), Fraction(basis[1][i]), Fraction(cov[i])]
        for i in range(n)
    ]
    a, b = _solve_exact(rows, 2)
    assert a.denominator == 1 and b.denominator == 1
    return int(a), int(b)


def check_balanced(cplx, _require_weights=True):
    """Exact balancing around every (n-1)-cell.

    Returns (True, None) or (False, index of the first failing cell).
    """
    n = cplx.n
    ncells = cplx.cells_of_dim(n)
    if _require_weights:
        for i in ncells:
            if cplx.cells[i].weight is None:
                raise ValueError("missing weights on n-cells")
    if n == 0:
        return True, None
    for gid in cplx.cells_of_dim(n - 1):
        g = cplx.cells[gid]
        adjacent = [i for i in cplx.coboundary(gid) if cplx.cells[i].dim == n]
        if not adjacent:
            continue
        phi = _quotient_pair_basis(g.equalities)
        x_g = g.relint_point()
        total = [0] * cplx.dim
        for fid in adjacent:
            f = cplx.cells[fid]
            cov = f.covector()
            a, b = _in_covector_basis(cov, phi)
            d = tuple(x - y for x, y in zip(f.relint_point(), x_g))
            d1 = dot(phi[0], d)
            d2 = dot(phi[1], d)
            t = b * d1 - a * d2
            assert t != 0, "wall tangent to its own covector"
            sign = 1 if t > 0 else -1
            w = f.weight
            total = [
                acc + sign * w * c for acc, c in zip(total, cov)
            ]
        if any(total):
            return False, gid
    return True, None


@dataclass(frozen=True)
class Wall:
    """Oriented wall of the region graph: crossing region_from ->
    region_to adds covector . y - offset to the supporting function."""

    region_from: int
    region_to: int
    covector: tuple
    offset: Fraction


@dataclass
class RegionGraph:
    """Connected components of the complement, with co-oriented walls."""

    regions: tuple  # one marker per region (lattice points when known)
    walls: tuple
    reference: int = 0

    def __post_init__(self):
        for w in self.walls:
            if not any(w.covector):
                raise ValueError("wall with zero covector")


def extract_region_graph(cplx):
    """Region adjacency of R^dim minus the complex, via duality."""
    if cplx.subdivision is None or getattr(cplx, "_faces", None) is None:
        raise ValueError("complex carries no dual subdivision data")
    lifting = cplx.lifting
    pts = lifting.points
    vertices = sorted(
        next(iter(key)) for key, d in cplx._faces.items() if d == 0
    )
    region_of = {i: r for r, i in enumerate(vertices)}
    walls = []
    for cell in cplx.cells:
        if cell.dim != cplx.n:
            continue
        members = cell.dual
        direction = next(
            tuple(a - b for a, b in zip(pts[i], pts[members[0]]))
            for i in members
            if pts[i] != pts[members[0]]
        )
        params = sorted((dot(pts[i], direction), i) for i in members)
        p, q = params[0][1], params[-1][1]
        cov = tuple(a - b for a, b in zip(pts[q], pts[p]))
        offset = lifting.values[q] - lifting.values[p]
        walls.append(Wall(region_of[p], region_of[q], cov, offset))
    return RegionGraph(
        regions=tuple(pts[i] for i in vertices),
        walls=tuple(walls),
        reference=0,
    )


def reconstruct_lifting(graph):
    """Recover a lifting function from a region graph.

    Breadth-first propagation of affine supporting functions from the
    reference region; any inconsistency around a cycle (or a disconnected
    graph) raises.
    """
    nreg = len(graph.regions)
    dim = len(graph.walls[0].covector) if graph.walls else None
    if dim is None:
        raise ValueError("region graph has no walls")
    fail = ValueError("unbalanced or non-realizable region graph")
    grads = {graph.reference: (0,) * dim}
    consts = {graph.reference: Fraction(0)}
    queue = [graph.reference]
    adjacency = {}
    for w in graph.walls:
        adjacency.setdefault(w.region_from, []).append(
            (w.region_to, w.covector, w.offset)
        )
        adjacency.setdefault(w.region_to, []).append(
            (w.region_from, tuple(-c for c in w.covector), -w.offset)
        )
    while queue:
        i = queue.pop()
        for j, cov, off in adjacency.get(i, ()):
            g = tuple(a + c for a, c in zip(grads[i], cov))
            c = consts[i] - off
            if j in grads:
                if grads[j] != g or consts[j] != c:
                    raise fail
            else:
                grads[j] = g
                consts[j] = c
                queue.append(j)
    if len(grads) != nreg:
        raise fail
    points = [grads[i] for i in range(nreg)]
    if len(set(points)) != len(points):
        raise fail
    values = [-consts[i] for i in range(nreg)]
    return LiftingFunction(points, values)


def _delta_face_info(lifting, face_vertices):
    """(dim, A-point indices, origin, basis) of a face of the polytope."""
    delta = lifting.polytope
    verts = set(tuple(v) for v in face_vertices)
    active = [
        (normal, offset)
        for normal, offset, on in delta.facets
        if verts <= {delta.vertices[i] for i in on}
    ]
    members = [
        i
        for i, p in enumerate(lifting.points)
        if all(dot(nn, p) == off for nn, off in active)
    ]
    fdim = affine_rank(sorted(verts)) - 1
    if fdim == delta.dim and verts != set(delta.vertices):
        raise ValueError("not a face of the Newton polytope")
    origin = min(verts)
    basis = saturated_direction_basis(sorted(verts))
    return fdim, members, origin, basis


def _face_coordinates(point, origin, basis):
    from .lattice import _lattice_coordinates

    return _lattice_coordinates(point, origin, basis)


def face_complex(lifting, face_vertices):
    """Corner locus of the lifting restricted to a proper face, computed in
    that face's own lattice coordinates."""
    fdim, members, origin, basis = _delta_face_info(lifting, face_vertices)
    if fdim == 0:
        raise ValueError("a vertex has a degenerate dual complex")
    if fdim >= lifting.dim:
        raise ValueError("face must be proper")
    sub_points = [
        _face_coordinates(lifting.points[i], origin, basis) for i in members
    ]
    sub = LiftingFunction(sub_points, [lifting.values[i] for i in members])
    cplx = corner_locus(sub)
    cplx.face_chart = (origin, tuple(basis), tuple(sorted(members)))
    return cplx


@dataclass
class StratifiedComplex:
    """Combinatorial closure of a maximal complex inside its polytope.

    Elements are pairs (face of the polytope, positive-dimensional face of
    the subdivision contained in it); the element for (F, G) is the cell of
    the face complex of F dual to G.  Labels: k = cell dimension,
    l + 1 = dimension of the open polytope face containing the cell.
    """

    lifting: LiftingFunction
    subdivision: RegularSubdivision
    faces: tuple  # (face dim, face vertex tuple, frozenset of A-indices)
    elements: tuple  # (face index, subdivision face key, k, l)

    def labels(self):
        return [(k, l) for _, _, k, l in self.elements]

    def label_census(self):
        census = {}
        for _, _, k, l in self.elements:
            census[(k, l)] = census.get((k, l), 0) + 1
        return census

    def less(self, a, b):
        """Is element a in the combinatorial boundary of element b?"""
        fa, ga, ka, la = self.elements[a]
        fb, gb, kb, lb = self.elements[b]
        if (fa, ga) == (fb, gb):
            return False
        verts_a = set(self.faces[fa][1])
        verts_b = set(self.faces[fb][1])
        return verts_a <= verts_b and ga >= gb


def stratify(lifting):
    """Closure cells of a maximal complex, labeled by boundary type."""
    sub = lower_hull_subdivision(lifting)
    ok, _ = is_unimodular(sub)
    if not ok:
        raise ValueError("stratification requires maximal complex")
    cplx = complex_from_subdivision(sub)
    delta = lifting.polytope
    N = lifting.dim
    lat = delta.face_lattice()
    faces = []
    for fdim in sorted(lat):
        if fdim < 1:
            continue
        for fverts in lat[fdim]:
            if fdim == N:
                members = frozenset(range(len(lifting.points)))
            else:
                _, m, _, _ = _delta_face_info(lifting, fverts)
                members = frozenset(m)
            faces.append((fdim, tuple(sorted(fverts)), members))
    elements = []
    for fi, (fdim, _, members) in enumerate(faces):
        for key, gdim in cplx._faces.items():
            if gdim < 1 or not key <= members:
                continue
            elements.append((fi, key, fdim - gdim, fdim - 1))
    elements.sort(key=lambda e: (e[2], e[0], tuple(sorted(e[1]))))
    return StratifiedComplex(
        lifting=lifting,
        subdivision=sub,
        faces=tuple(faces),
        elements=tuple(elements),
    )


def phi_delta(x, delta):
    """Moment-map reparametrization of R^dim onto the polytope interior.

    Float computation; the max exponent is factored out before summing so
    large inputs cannot overflow.  Weights are floored at 1e-15, which
    keeps the output strictly interior at float precision while staying
    inside the 1e-12 arithmetic guard.
    """
    if not delta.full_dimensional:
        raise ValueError("polytope must be full-dimensional")
    pts = lattice_points(delta)
    exps = [2.0 * sum(float(j[i]) * float(x[i]) for i in range(delta.dim)) for j in pts]
    m = max(exps)
    weights = [max(math.exp(e - m), 1e-15) for e in exps]
    total = sum(weights)
    return tuple(
        sum(w * j[i] for w, j in zip(weights, pts)) / total
        for i in range(delta.dim)
    )


def vertex_edge_data(cplx, vertex):
    """(weight, outgoing primitive direction) per edge at a vertex.

    Weights are the intrinsic normalized volumes of the dual facets; their
    weighted direction sum vanishes exactly on balanced complexes.
    """
    from .lattice import intrinsic_normalized_volume

    if cplx.subdivision is None:
        raise ValueError("complex carries no dual subdivision data")
    target = tuple(Fraction(c) for c in vertex)
    vid = next(
        (
            i
            for i, c in enumerate(cplx.cells)
            if c.dim == 0 and c.vertices == (target,)
        ),
        None,
    )
    if vid is None:
        raise ValueError(f"no vertex at {vertex}")
    vcell = cplx.cells[vid]
    pts = cplx.lifting.points
    N = cplx.dim
    if len(vcell.dual) != N + 1:
        raise ValueError("non-generic vertex")
    out = []
    for eid in cplx.coboundary(vid):
        ecell = cplx.cells[eid]
        w = intrinsic_normalized_volume([pts[i] for i in ecell.dual])
        others = [v for v in ecell.vertices if v != target]
        if others:
            diff = tuple(a - b for a, b in zip(others[0], target))
            scale = math.lcm(*[f.denominator for f in diff])
            direction = primitive_vector(tuple(int(f * scale) for f in diff))
        else:
            direction = ecell.rays[0]
        out.append((w, direction))
    return out


def vertex_edge_weights(cplx, vertex):
    """Edge weights at a generic vertex (see vertex_edge_data)."""
    return [w for w, _ in vertex_edge_data(cplx, vertex)]


def _direction_basis(cell):
    """Greedy rational basis of a cell's direction space, as int vectors."""
    dirs = []
    v0 = cell.vertices[0]
    for v in cell.vertices[1:]:
        diff = tuple(a - b for a, b in zip(v, v0))
        scale = math.lcm(*[f.denominator for f in diff])
        dirs.append(tuple(int(f * scale) for f in diff))
    dirs.extend(cell.rays)
    basis = []
    for d in dirs:
        if matrix_rank(basis + [list(d)]) > len(basis):
            basis.append(list(d))
    if len(basis) != cell.dim:
        raise ValueError("cell generators do not span its dimension")
    return [tuple(b) for b in basis]


def _coords_in_basis(vec, basis):
    n = len(vec)
    k = len(basis)
    rows = [
        [Fraction(basis[j][i]) for j in range(k)] + [Fraction(vec[i])]
        for i in range(n)
    ]
    return _solve_exact(rows, k)


def _fraction_det_sign(rows):
    scale = math.lcm(*[f.denominator for row in rows for f in row])
    m = [[int(f * scale) for f in row] for row in rows]
    d = det(m)
    return (d > 0) - (d < 0)


def incidence_number(cplx, fid, gid):
    """Cellular incidence [F:G] = +-1 for G a facet of F, with respect to
    the cells' reference orientations (their greedy direction bases)."""
    f = cplx.cells[fid]
    g = cplx.cells[gid]
    if g.dim != f.dim - 1 or gid not in cplx.boundary[fid]:
        raise ValueError("cells are not incident")
    basis_f = _direction_basis(f)
    if g.dim == 0:
        basis_g = []
    else:
        basis_g = _direction_basis(g)
    w = tuple(a - b for a, b in zip(f.relint_point(), g.relint_point()))
    vectors = [tuple(-x for x in w)] + [
        tuple(Fraction(x) for x in b) for b in basis_g
    ]
    cols = [_coords_in_basis(v, basis_f) for v in vectors]
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(cols))]
    s = _fraction_det_sign(rows)
    assert s != 0
    return s


def oriented_covector(cplx, fid):
    """The primitive covector of an n-cell whose sign matches the cell's
    reference orientation (basis, covector) being positively oriented."""
    f = cplx.cells[fid]
    cov = f.covector()
    basis = _direction_basis(f)
    rows = [list(b) for b in basis] + [list(cov)]
    d = det(rows)
    assert d != 0
    return cov if d > 0 else tuple(-c for c in cov)
