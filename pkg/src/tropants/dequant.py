"""Maslov semiring arithmetic, amoeba sampling, and non-Archimedean limits.

The only floating-point corner of the toolkit: t-deformed addition, grid
sampling of curve amoebas with root solving, Hausdorff comparisons against
the exact complex, and the valuation/phase limits of Puiseux families.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .puiseux import PuiseuxSeries
from .subdivision import LiftingFunction
from .tropical import corner_locus

__all__ = [
    "AmoebaGrid",
    "AmoebaSample",
    "TropicalizedPoly",
    "directed_hausdorff_to_complex",
    "in_tube",
    "kapranov_tropicalize",
    "phase_limit_experiment",
    "puiseux_lift",
    "puiseux_val",
    "renormalized_point",
    "sample_amoeba_curve",
    "t_plus",
    "t_sum",
    "univariate_breakpoints",
]


def _check_t(t):
    if t != math.inf and not t > 1:
        raise ValueError("deformation parameter must satisfy t > 1 (or inf)")


def t_plus(x, y, t):
    """Deformed addition log_t(t^x + t^y); idempotent max at t = inf.

    Computed as max + log_t(1 + t^-|x-y|) for stability.
    """
    _check_t(t)
    if t == math.inf:
        return max(x, y)
    m = max(x, y)
    d = min(x, y) - m
    return m + math.log1p(t**d) / math.log(t)


def t_sum(values, t):
    """Left fold of t_plus over a nonempty sequence."""
    vals = list(values)
    if not vals:
        raise ValueError("empty sum")
    acc = vals[0]
    for v in vals[1:]:
        acc = t_plus(acc, v, t)
    return acc


@dataclass(frozen=True)
class TropicalizedPoly:
    """Monomial exponents with tropical coefficients.

    The induced function is x -> max_j (c_j + j . x).  provenance records
    whether the coefficients came from direct data or from valuations.
    """

    monomials: tuple  # ((exponent tuple, coefficient), ...)
    provenance: str = "direct"

    def __post_init__(self):
        exps = [e for e, _ in self.monomials]
        if len(set(exps)) != len(exps):
            raise ValueError("duplicate monomial exponents")

    def values_at(self, x):
        return [
            float(c) + sum(float(j[i]) * x[i] for i in range(len(j)))
            for j, c in self.monomials
        ]


def in_tube(x, poly, t, n_competitors=None):
    """Membership in the deformed neighborhood of the tropical zero set.

    True iff every monomial is t-dominated by the others:
    c_k + k.x <= max_{j != k}(c_j + j.x) + log_t(N).
    """
    _check_t(t)
    if len(poly.monomials) < 2:
        raise ValueError("tube undefined for a single monomial")
    n = n_competitors if n_competitors is not None else len(poly.monomials) - 1
    slack = 0.0 if t == math.inf else math.log(n) / math.log(t)
    vals = poly.values_at(x)
    for k, vk in enumerate(vals):
        best_other = max(v for j, v in enumerate(vals) if j != k)
        if vk > best_other + slack:
            return False
    return True


@dataclass(frozen=True)
class AmoebaGrid:
    """Sampling window: rho = log_t|z1| range and angular resolution."""

    rho_min: float = -3.0
    rho_max: float = 3.0
    rho_steps: int = 61
    angle_steps: int = 16

    @property
    def pitch(self):
        return (self.rho_max - self.rho_min) / (self.rho_steps - 1)

    def rho_values(self):
        return [
            self.rho_min + i * self.pitch for i in range(self.rho_steps)
        ]

    def angle_values(self):
        return [
            2.0 * math.pi * (k + 0.37) / self.angle_steps
            for k in range(self.angle_steps)
        ]


@dataclass
class AmoebaSample:
    points: list  # (log_t|z1|, log_t|z2|)
    dropped: int
    tropical: TropicalizedPoly
    t: float
    grid: AmoebaGrid


RESIDUAL_TOL = 1e-9


def sample_amoeba_curve(lifting, coeffs, t, grid=None):
    """Amoeba samples of sum_j a_j t^(-v(j)) z^j = 0 for a curve (n = 1).

    Slices the grid in log_t|z1| and the argument of z1, solves the
    resulting univariate polynomial in z2, and keeps roots whose relative
    residual is below 1e-9.  Every kept point lies in the tube of the
    tropical polynomial with c_j = -v(j) + log_t|a_j|.
    """
    _check_t(t)
    if lifting.dim != 2:
        raise ValueError("amoeba sampling is restricted to curves (n = 1)")
    if grid is None:
        grid = AmoebaGrid()
    amap = {}
    for p in lifting.points:
        a = complex(coeffs[p])
        if a == 0:
            raise ValueError(f"zero coefficient at {p}")
        amap[p] = a
    logt = math.log(t)
    trop = TropicalizedPoly(
        tuple(
            (p, -float(v) + math.log(abs(amap[p])) / logt)
            for p, v in zip(lifting.points, lifting.values)
        ),
        provenance="patchworking",
    )
    scaled = {
        p: amap[p] * t ** (-float(v))
        for p, v in zip(lifting.points, lifting.values)
    }
    max_j2 = max(p[1] for p in lifting.points)
    points = []
    dropped = 0
    for rho in grid.rho_values():
        r1 = t**rho
        for theta in grid.angle_values():
            z1 = r1 * cmath.exp(1j * theta)
            poly = [0j] * (max_j2 + 1)
            for (j1, j2), a in scaled.items():
                poly[max_j2 - j2] += a * z1**j1
            roots = np.roots(poly)
            for z2 in roots:
                z2 = complex(z2)
                if z2 == 0:
                    dropped += 1
                    continue
                total = 0j
                scale = 0.0
                for (j1, j2), a in scaled.items():
                    term = a * z1**j1 * z2**j2
                    total += term
                    scale += abs(term)
                if scale == 0.0 or abs(total) > RESIDUAL_TOL * scale:
                    dropped += 1
                    continue
                points.append((rho, math.log(abs(z2)) / logt))
    return AmoebaSample(
        points=points, dropped=dropped, tropical=trop, t=t, grid=grid
    )


def _dist_point_segment(p, a, b):
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    denom = dx * dx + dy * dy
    if denom == 0:
        return math.hypot(px - ax, py - ay)
    s = ((px - ax) * dx + (py - ay) * dy) / denom
    s = min(1.0, max(0.0, s))
    return math.hypot(px - ax - s * dx, py - ay - s * dy)


def _dist_point_ray(p, a, d):
    ax, ay = a
    dx, dy = d
    px, py = p
    denom = dx * dx + dy * dy
    s = max(0.0, ((px - ax) * dx + (py - ay) * dy) / denom)
    return math.hypot(px - ax - s * dx, py - ay - s * dy)


def _cell_distance(p, cell):
    verts = [(float(v[0]), float(v[1])) for v in cell.vertices]
    if cell.dim == 0:
        return math.hypot(p[0] - verts[0][0], p[1] - verts[0][1])
    if cell.rays:
        best = math.inf
        for v in verts:
            for r in cell.rays:
                best = min(best, _dist_point_ray(p, v, (float(r[0]), float(r[1]))))
        if len(verts) > 1:
            best = min(best, _dist_point_segment(p, verts[0], verts[1]))
        return best
    return _dist_point_segment(p, verts[0], verts[-1])


def directed_hausdorff_to_complex(points, cplx):
    """max over sample points of the distance to the 1-complex (n = 1)."""
    if cplx.dim != 2:
        raise ValueError("distance helper is for planar complexes")
    cells = [c for c in cplx.cells if c.dim <= 1]
    worst = 0.0
    for p in points:
        d = min(_cell_distance(p, c) for c in cells)
        worst = max(worst, d)
    return worst


def puiseux_val(series):
    """Valuation of a nonzero series: minus its lowest exponent."""
    if not isinstance(series, PuiseuxSeries):
        raise TypeError("expected a PuiseuxSeries")
    return series.val


def puiseux_lift(series):
    """(valuation, argument of the leading coefficient)."""
    if not isinstance(series, PuiseuxSeries):
        raise TypeError("expected a PuiseuxSeries")
    return series.lift()


def kapranov_tropicalize(monomials):
    """Tropicalization of a polynomial with Puiseux coefficients.

    monomials: iterable of (exponent tuple, PuiseuxSeries).  The tropical
    coefficient of exponent j is val(a_j); the returned complex is the
    corner locus of max_j (val(a_j) + j . x), realized via the lifting
    v(j) = -val(a_j).
    """
    items = [(tuple(int(c) for c in j), a) for j, a in monomials]
    if not items:
        raise ValueError("empty polynomial")
    for j, a in items:
        if a.is_zero:
            raise ValueError(f"zero coefficient at exponent {j}")
    trop = TropicalizedPoly(
        tuple((j, a.val) for j, a in items), provenance="valuation"
    )
    lifting = LiftingFunction(
        [j for j, _ in items], [-a.val for _, a in items]
    )
    return trop, corner_locus(lifting)


def univariate_breakpoints(cplx):
    """Vertices of a 1-dimensional tropical complex with multiplicities."""
    if cplx.dim != 1:
        raise ValueError("breakpoints are defined for univariate input")
    out = []
    for c in cplx.cells:
        if c.dim == 0:
            out.extend([c.vertices[0][0]] * (c.weight or 1))
    return sorted(out)


def renormalized_point(z, t):
    """H_t: rescale the modulus to |z|^(1/ln t), keeping the argument.

    Satisfies Log_t = Log o H_t exactly.
    """
    r = abs(z)
    if r == 0:
        raise ValueError("torus points have nonzero coordinates")
    return r ** (1.0 / math.log(t)) * z / r


def _w_image(series):
    v, phase = series.lift()
    return cmath.exp(float(v)) * cmath.exp(1j * phase)


def phase_limit_experiment(coefficients, t_values, sample_count=12, seed=0):
    """Convergence of renormalized line solutions to their valuation limits.

    coefficients: Puiseux series (a1, a2, a0) of the line
    a1 z1 + a2 z2 + a0 = 0.  For seeded parameter series s the exact
    solution (z1, z2) = (s, -(a0 + a1 s)/a2) is compared, coordinatewise
    in C*, against the H_t image of the numeric solution at each t.
    Returns [(t, max pointwise distance)] in the given t order.
    """
    import random

    a1, a2, a0 = coefficients
    rng = random.Random(seed)
    samples = []
    attempts = 0
    while len(samples) < sample_count and attempts < 20 * sample_count:
        attempts += 1
        exp = Fraction(rng.randrange(-4, 5), rng.choice([1, 2]))
        modulus = 0.5 + 1.5 * rng.random()
        phase = 2.0 * math.pi * rng.random()
        s = PuiseuxSeries.monomial(cmath.rect(modulus, phase), exp)
        if rng.random() < 0.5:
            s = s + PuiseuxSeries.monomial(
                cmath.rect(0.25 + rng.random(), 2.0 * math.pi * rng.random()),
                exp + Fraction(rng.randrange(1, 4), 2),
            )
        z1 = s
        z2 = -(a0 + a1 * s) / a2
        if z1.is_zero or z2.is_zero:
            continue
        samples.append((z1, z2))
    rows = []
    for t in t_values:
        _check_t(t)
        worst = 0.0
        for z1, z2 in samples:
            w1, w2 = _w_image(z1), _w_image(z2)
            z1n = z1.numeric(t)
            z2n = -(a0.numeric(t) + a1.numeric(t) * z1n) / a2.numeric(t)
            h1 = renormalized_point(z1n, t)
            h2 = renormalized_point(z2n, t)
            worst = max(worst, abs(h1 - w1), abs(h2 - w2))
        rows.append((t, worst))
    return rows
