"""Deterministic SVG rendering of planar complexes, samples, membranes.

Coordinates are formatted to 1e-6 so identical inputs produce identical
bytes.  Rays are clipped exactly at the viewport rectangle.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["render_svg"]

_W = 480
_H = 480


def _fmt(x):
    return f"{x:.6f}"


def _project(point, projection):
    if projection is None:
        return float(point[0]), float(point[1])
    u, v = projection
    return (
        float(sum(a * float(b) for a, b in zip(u, point))),
        float(sum(a * float(b) for a, b in zip(v, point))),
    )


class _Canvas:
    def __init__(self, viewport):
        self.x0, self.y0, self.x1, self.y1 = viewport

    def to_px(self, p):
        x, y = p
        px = (x - self.x0) / (self.x1 - self.x0) * _W
        py = (self.y1 - y) / (self.y1 - self.y0) * _H
        return px, py

    def clip_ray(self, origin, direction):
        """Endpoint where origin + t * direction leaves the viewport."""
        ox, oy = origin
        dx, dy = direction
        ts = []
        if dx > 0:
            ts.append((self.x1 - ox) / dx)
        elif dx < 0:
            ts.append((self.x0 - ox) / dx)
        if dy > 0:
            ts.append((self.y1 - oy) / dy)
        elif dy < 0:
            ts.append((self.y0 - oy) / dy)
        t = min([t for t in ts if t > 0], default=1.0)
        return ox + t * dx, oy + t * dy


def _line(canvas, a, b, color, width, out):
    ax, ay = canvas.to_px(a)
    bx, by = canvas.to_px(b)
    out.append(
        f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}" '
        f'stroke="{color}" stroke-width="{width}"/>'
    )


def render_svg(
    cplx,
    viewport=(-4.0, -4.0, 4.0, 4.0),
    samples=None,
    membrane=None,
    highlight=None,
    projection=None,
    seed=None,
):
    """SVG document for a planar tropical complex.

    cplx may be None when only samples/membranes are drawn.  For ambient
    dimension > 2 an explicit projection (pair of float vectors) is
    required.  highlight is a set of cell indices drawn emphasized;
    weights >= 2 are annotated at edge midpoints.
    """
    if cplx is not None and cplx.dim != 2 and projection is None:
        raise ValueError(
            "rendering needs ambient dimension 2 or an explicit projection"
        )
    canvas = _Canvas(tuple(float(v) for v in viewport))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
    ]
    if seed is not None:
        out.append(f"<!-- seed={seed} -->")
    out.append(f'<rect width="{_W}" height="{_H}" fill="white"/>')
    highlight = highlight or set()
    if cplx is not None:
        for idx, cell in enumerate(cplx.cells):
            if cell.dim != 1:
                continue
            color = "#d62728" if idx in highlight else "#000000"
            width = 3 if idx in highlight else 2
            verts = [_project(v, projection) for v in cell.vertices]
            if cell.rays:
                for v in verts:
                    for r in cell.rays:
                        end = canvas.clip_ray(v, _project(r, projection))
                        _line(canvas, v, end, color, width, out)
                if len(verts) == 2:
                    _line(canvas, verts[0], verts[1], color, width, out)
            else:
                _line(canvas, verts[0], verts[-1], color, width, out)
            if cell.weight is not None and cell.weight >= 2:
                mx = sum(v[0] for v in verts) / len(verts)
                my = sum(v[1] for v in verts) / len(verts)
                px, py = canvas.to_px((mx, my))
                out.append(
                    f'<text x="{_fmt(px + 4)}" y="{_fmt(py - 4)}" '
                    f'font-size="12">{cell.weight}</text>'
                )
        for cell in cplx.cells:
            if cell.dim != 0:
                continue
            px, py = canvas.to_px(_project(cell.vertices[0], projection))
            out.append(
                f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="3" fill="#000000"/>'
            )
    if membrane is not None:
        for piece in membrane.pieces:
            pts = [_project(m, projection) for m in piece.midpoints]
            if len(pts) >= 2:
                _line(canvas, pts[0], pts[-1], "#1f77b4", 2, out)
            else:
                px, py = canvas.to_px(pts[0])
                out.append(
                    f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="2" '
                    f'fill="#1f77b4"/>'
                )
    if samples is not None:
        for p in samples:
            px, py = canvas.to_px((float(p[0]), float(p[1])))
            out.append(
                f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="1.5" '
                f'fill="#2ca02c" fill-opacity="0.6"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
