"""Regular subdivisions induced by lifting functions on lattice points.

The central construction: lift each point x of a finite set A to height
v(x), take the lower convex hull, and project its facets back down.  Ties
are kept, so non-generic liftings produce non-simplicial cells exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .hull import DegenerateInput, affine_rank, dot, lower_facets
from .lattice import LatticePolytope, dilated_simplex, lattice_points

__all__ = [
    "Cell",
    "LiftingFunction",
    "RegularSubdivision",
    "build_maximal_lifting",
    "is_unimodular",
    "legendre",
    "lower_hull_subdivision",
    "underlying_convex",
]


class LiftingFunction:
    """A finite set of lattice points with rational values."""

    def __init__(self, points, values):
        pts = [tuple(int(c) for c in p) for p in points]
        vals = [Fraction(v) for v in values]
        if len(pts) != len(vals):
            raise ValueError("points and values differ in length")
        if not pts:
            raise ValueError("empty point set")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise ValueError("points of mixed dimension")
        self.points = tuple(pts)
        self.values = tuple(vals)
        self.dim = dims.pop()
        self._polytope = None

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        return (
            isinstance(other, LiftingFunction)
            and sorted(zip(self.points, self.values))
            == sorted(zip(other.points, other.values))
        )

    def __repr__(self):
        return f"LiftingFunction({len(self.points)} points in Z^{self.dim})"

    def value_at(self, point):
        return self.values[self.points.index(tuple(point))]

    @property
    def polytope(self):
        """Newton polytope: the convex hull of the support."""
        if self._polytope is None:
            self._polytope = LatticePolytope(self.points)
        return self._polytope

    def shifted(self, gradient, constant=0):
        """New lifting v(x) + gradient . x + constant (affine change)."""
        grad = tuple(Fraction(g) for g in gradient)
        return LiftingFunction(
            self.points,
            [
                v + dot(grad, p) + Fraction(constant)
                for p, v in zip(self.points, self.values)
            ],
        )


def legendre(lifting, y):
    """Value and argmax set of max_x (x . y - v(x)) at a rational point."""
    yq = tuple(Fraction(c) for c in y)
    best = None
    argmax = []
    for i, (p, v) in enumerate(zip(lifting.points, lifting.values)):
        val = dot(p, yq) - v
        if best is None or val > best:
            best = val
            argmax = [i]
        elif val == best:
            argmax.append(i)
    return best, tuple(argmax)


@dataclass(frozen=True)
class Cell:
    """Maximal cell: its points (indices into A) and supporting function.

    The affine function h(x) = gradient . x + offset satisfies h <= v on A
    with equality exactly on the cell's points.
    """

    points: tuple
    gradient: tuple
    offset: Fraction

    def support_at(self, x):
        return dot(self.gradient, x) + self.offset


class RegularSubdivision:
    """The subdivision D_v: maximal cells of the projected lower hull."""

    def __init__(self, lifting, cells):
        self.lifting = lifting
        self.cells = tuple(sorted(cells, key=lambda c: c.points))
        self.parent = lifting.polytope
        self._adjacency = None

    def __len__(self):
        return len(self.cells)

    def __repr__(self):
        return f"RegularSubdivision({len(self.cells)} cells in R^{self.lifting.dim})"

    def cell_points(self, cell):
        return tuple(self.lifting.points[i] for i in cell.points)

    @property
    def facet_adjacency(self):
        """Pairs (i, j) of cells meeting in a common facet."""
        if self._adjacency is None:
            out = []
            pts = self.lifting.points
            n = self.lifting.dim
            for i in range(len(self.cells)):
                for j in range(i + 1, len(self.cells)):
                    shared = set(self.cells[i].points) & set(self.cells[j].points)
                    if len(shared) < n:
                        continue
                    if affine_rank([pts[k] for k in shared]) == n:
                        out.append((i, j))
            self._adjacency = tuple(out)
        return self._adjacency


def lower_hull_subdivision(lifting):
    """Regular subdivision of conv(A) from the lower hull of lifted points."""
    pts = lifting.points
    n = lifting.dim
    if affine_rank(pts) != n + 1:
        raise DegenerateInput(
            "lifting points do not affinely span the ambient space"
        )
    scale = lcm(*[v.denominator for v in lifting.values])
    lifted = [
        p + (int(v * scale),) for p, v in zip(pts, lifting.values)
    ]
    cells = []
    for normal, offset, on in lower_facets(lifted):
        g, last = normal[:-1], normal[-1]
        gradient = tuple(Fraction(-gi, last * scale) for gi in g)
        const = Fraction(offset, last * scale)
        cells.append(Cell(points=tuple(sorted(on)), gradient=gradient, offset=const))
    return RegularSubdivision(lifting, cells)


def underlying_convex(lifting):
    """The largest convex function below v, restricted back to A."""
    sub = lower_hull_subdivision(lifting)
    values = []
    for p in lifting.points:
        values.append(max(c.support_at(p) for c in sub.cells))
    return LiftingFunction(lifting.points, values)


def is_unimodular(subdivision):
    """(flag, certificate): every maximal cell a normalized-volume-1 simplex.

    The certificate is the first offending Cell, or None.
    """
    from .hull import det

    n = subdivision.lifting.dim
    for cell in subdivision.cells:
        if len(cell.points) != n + 1:
            return False, cell
        pts = subdivision.cell_points(cell)
        edges = [tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]]
        if abs(det(edges)) != 1:
            return False, cell
    return True, None


def _segment_sum_squares(x):
    """Sum of squares of all contiguous coordinate-window sums.

    Restricted to the lattice points of a dilated simplex this lifting
    induces the alcove (staircase) triangulation, which is unimodular with
    d^(n+1) maximal cells.
    """
    n = len(x)
    total = 0
    for i in range(n):
        s = 0
        for j in range(i, n):
            s += x[j]
            total += s * s
    return total


def build_maximal_lifting(n, d):
    """A lifting on the degree-d simplex certified to be maximal.

    Unimodularity of the induced subdivision is verified at build time;
    failure would be an internal error, never a silent non-maximal result.
    """
    pts = sorted(lattice_points(dilated_simplex(n, d)))
    lifting = LiftingFunction(pts, [_segment_sum_squares(p) for p in pts])
    ok, bad = is_unimodular(lower_hull_subdivision(lifting))
    if not ok:
        raise RuntimeError(
            f"maximal lifting candidate failed unimodularity at cell {bad.points}"
        )
    return lifting
