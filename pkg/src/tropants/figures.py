"""Matplotlib figure output for the reporting paths.

Figures accompany the delimited outputs of the CLI; everything renders
through the Agg backend so headless runs produce identical files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["amoeba_figure", "complex_figure", "membrane_figure"]


def _draw_complex(ax, cplx, window, color="black", lw=1.6):
    x0, y0, x1, y1 = window
    reach = 2.0 * max(x1 - x0, y1 - y0)
    for cell in cplx.cells:
        if cell.dim != 1:
            continue
        verts = [(float(v[0]), float(v[1])) for v in cell.vertices]
        if cell.rays:
            for vx, vy in verts:
                for r in cell.rays:
                    ax.plot(
                        [vx, vx + reach * float(r[0])],
                        [vy, vy + reach * float(r[1])],
                        color=color,
                        lw=lw,
                    )
            if len(verts) == 2:
                ax.plot(*zip(*verts), color=color, lw=lw)
        else:
            ax.plot(*zip(*verts), color=color, lw=lw)
        if cell.weight is not None and cell.weight >= 2:
            mx = sum(v[0] for v in verts) / len(verts)
            my = sum(v[1] for v in verts) / len(verts)
            ax.annotate(str(cell.weight), (mx, my), fontsize=9)
    for cell in cplx.cells:
        if cell.dim == 0:
            v = cell.vertices[0]
            ax.plot([float(v[0])], [float(v[1])], "ko", ms=4)


def amoeba_figure(sample, cplx, path, title=None):
    """Scatter of amoeba samples over the exact complex; saved to path."""
    grid = sample.grid
    window = (grid.rho_min, grid.rho_max, grid.rho_min, grid.rho_max)
    fig, ax = plt.subplots(figsize=(5, 5))
    if sample.points:
        xs, ys = zip(*sample.points)
        ax.scatter(xs, ys, s=4, color="#2ca02c", alpha=0.5, label="samples")
    if cplx is not None:
        _draw_complex(ax, cplx, window)
    ax.set_xlim(window[0], window[1])
    ax.set_ylim(window[2], window[3])
    ax.set_xlabel("log_t |z1|")
    ax.set_ylabel("log_t |z2|")
    ax.set_title(title or f"amoeba samples, t={sample.t:g}")
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def complex_figure(cplx, path, window=(-4, -4, 4, 4), title=None):
    """The planar complex on its own."""
    fig, ax = plt.subplots(figsize=(5, 5))
    _draw_complex(ax, cplx, window)
    ax.set_xlim(window[0], window[2])
    ax.set_ylim(window[1], window[3])
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def membrane_figure(membrane, path, title=None):
    """Membrane pieces over the triangulation edges (planar input)."""
    sub = membrane.subdivision
    pts = sub.lifting.points
    fig, ax = plt.subplots(figsize=(5, 5))
    import itertools

    for cell in sub.cells:
        for a, b in itertools.combinations(cell.points, 2):
            ax.plot(
                [pts[a][0], pts[b][0]],
                [pts[a][1], pts[b][1]],
                color="0.8",
                lw=0.8,
                zorder=1,
            )
    for p, s in membrane.signs.items():
        ax.plot([p[0]], [p[1]], "o", color="#d62728" if s < 0 else "0.3", ms=4)
    for piece in membrane.pieces:
        mids = [(float(m[0]), float(m[1])) for m in piece.midpoints]
        if len(mids) >= 2:
            ax.plot(*zip(*mids), color="#1f77b4", lw=2.0, zorder=2)
        else:
            ax.plot([mids[0][0]], [mids[0][1]], "o", color="#1f77b4", ms=3)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
