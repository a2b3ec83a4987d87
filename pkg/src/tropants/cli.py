"""Command-line front end.

Subcommands cover the whole pipeline: lifting -> subdivision/complex,
balance checking, region-graph reconstruction, pants decomposition,
homology, numeric invariants, amoeba sampling (CSV + figures), Kapranov
tropicalization, patchworking, and SVG rendering.  Outputs are
deterministic given --seed, which is recorded in every output header.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import jsonio
from .dequant import (
    AmoebaGrid,
    in_tube,
    kapranov_tropicalize,
    sample_amoeba_curve,
    univariate_breakpoints,
)
from .hull import DegenerateInput
from .pants import (
    base_homology,
    hypersurface_invariants,
    normalize_piece,
    primitive_pieces,
)
from .patchwork import build_membrane, single_negative_signs, verify_sphere
from .subdivision import lower_hull_subdivision
from .svg import render_svg
from .tropical import (
    check_balanced,
    corner_locus,
    reconstruct_lifting,
    stratify,
)

__all__ = ["JobConfig", "main", "run"]


@dataclass
class JobConfig:
    command: str
    input: str | None = None
    output: str | None = None
    t_values: tuple = (100.0,)
    grid: tuple = (61, 16)
    seed: int = 0
    viewport: tuple = (-4.0, -4.0, 4.0, 4.0)
    options: dict = field(default_factory=dict)


def _read_json(path):
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SystemExit(
            f"error: malformed JSON in {path}: line {exc.lineno} column "
            f"{exc.colno}: {exc.msg}"
        )


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit_json(config, doc):
    _write(config.output, jsonio.dumps(doc))


def _suffixed(path, tag):
    p = Path(path)
    return str(p.with_name(f"{p.stem}_{tag}{p.suffix}"))


def _cmd_tropicalize(config):
    lifting = jsonio.lifting_from_json(_read_json(config.input))
    cplx = corner_locus(lifting)
    _emit_json(config, jsonio.complex_to_json(cplx, seed=config.seed))
    return 0


def _cmd_subdivide(config):
    lifting = jsonio.lifting_from_json(_read_json(config.input))
    sub = lower_hull_subdivision(lifting)
    _emit_json(config, jsonio.subdivision_to_json(sub, seed=config.seed))
    return 0


def _cmd_check_balance(config):
    cplx = jsonio.complex_from_json(_read_json(config.input))
    ok, cert = check_balanced(cplx)
    if ok:
        print("balanced")
        return 0
    cell = cplx.cells[cert]
    print(
        f"not balanced: failing {cell.dim}-cell id={cert} "
        f"vertices={[tuple(map(str, v)) for v in cell.vertices]}"
    )
    return 1


def _cmd_reconstruct(config):
    graph = jsonio.region_graph_from_json(_read_json(config.input))
    lifting = reconstruct_lifting(graph)
    _emit_json(config, jsonio.lifting_to_json(lifting, seed=config.seed))
    return 0


def _cmd_decompose(config):
    lifting = jsonio.lifting_from_json(_read_json(config.input))
    cplx = corner_locus(lifting)
    pieces = primitive_pieces(cplx)
    rows = []
    for piece in pieces:
        norm = normalize_piece(cplx, piece)
        vcell = cplx.cells[piece.vertex]
        rows.append(
            {
                "vertex": [jsonio.frac(x) for x in vcell.vertices[0]],
                "dual_simplex": list(vcell.dual),
                "fragments": len(piece.fragments),
                "matrix": [list(r) for r in norm.simplex_map.matrix],
                "translation": list(norm.simplex_map.translation),
                "translate": [jsonio.frac(x) for x in norm.translate],
            }
        )
        print(
            f"piece at {tuple(map(str, vcell.vertices[0]))}: "
            f"dual={vcell.dual} matrix={norm.simplex_map.matrix} "
            f"translate={tuple(map(str, norm.translate))}"
        )
    print(f"{len(pieces)} pieces")
    if config.output:
        _emit_json(
            config, {"pieces": rows, "count": len(rows), "seed": config.seed}
        )
    return 0


def _cmd_homology(config):
    lifting = jsonio.lifting_from_json(_read_json(config.input))
    hom = base_homology(stratify(lifting))
    doc = {
        "betti": {str(k): b for k, (b, _) in hom.items()},
        "torsion": {str(k): list(t) for k, (_, t) in hom.items()},
        "seed": config.seed,
    }
    for k in sorted(hom):
        b, t = hom[k]
        print(f"H_{k}: rank {b}" + (f", torsion {list(t)}" if t else ""))
    if config.output:
        _emit_json(config, doc)
    return 0


def _cmd_invariants(config):
    n, d = config.options["n"], config.options["d"]
    rep = hypersurface_invariants(n, d)
    doc = {"n": rep.n, "d": rep.d, "p_g": rep.p_g, "chi": rep.chi,
           "sigma": rep.sigma, "seed": config.seed}
    _write(config.output, jsonio.dumps(doc))
    return 0


def _load_curve_job(doc):
    lifting = jsonio.lifting_from_json(doc["lifting"])
    coeffs = {
        tuple(c["point"]): complex(c["re"], c.get("im", 0.0))
        for c in doc["coefficients"]
    }
    return lifting, coeffs


def _cmd_amoeba_sample(config):
    doc = _read_json(config.input)
    lifting, coeffs = _load_curve_job(doc)
    x0, y0, x1, y1 = config.viewport
    rho_steps, angle_steps = config.grid
    grid = AmoebaGrid(
        rho_min=x0, rho_max=x1, rho_steps=rho_steps, angle_steps=angle_steps
    )
    cplx = corner_locus(lifting)
    many = len(config.t_values) > 1
    for t in config.t_values:
        sample = sample_amoeba_curve(lifting, coeffs, t, grid)
        lines = [
            f"# seed={config.seed} t={t:g} grid={rho_steps}x{angle_steps} "
            f"rho=[{x0:g},{x1:g}] dropped={sample.dropped}",
            "log_t_z1,log_t_z2,in_tube",
        ]
        for p in sample.points:
            flag = int(in_tube(p, sample.tropical, t))
            lines.append(f"{p[0]:.12g},{p[1]:.12g},{flag}")
        out = config.output
        if out and many:
            out = _suffixed(out, f"t{t:g}")
        _write(out, "\n".join(lines) + "\n")
        fig = config.options.get("figure")
        if fig:
            from .figures import amoeba_figure

            path = _suffixed(fig, f"t{t:g}") if many else fig
            amoeba_figure(sample, cplx, path)
        svg_path = config.options.get("svg")
        if svg_path:
            path = _suffixed(svg_path, f"t{t:g}") if many else svg_path
            _write(
                path,
                render_svg(
                    cplx,
                    viewport=config.viewport,
                    samples=sample.points,
                    seed=config.seed,
                ),
            )
    return 0


def _cmd_kapranov(config):
    doc = _read_json(config.input)
    monomials = [
        (tuple(m["exponent"]), jsonio.puiseux_from_json(m["series"]))
        for m in doc["monomials"]
    ]
    trop, cplx = kapranov_tropicalize(monomials)
    if cplx.dim == 1:
        bps = univariate_breakpoints(cplx)
        print("breakpoints:", " ".join(jsonio.frac(b) for b in bps))
    out = jsonio.complex_to_json(cplx, seed=config.seed)
    out["tropical_coefficients"] = [
        {"exponent": list(j), "coefficient": jsonio.frac(c)}
        for j, c in trop.monomials
    ]
    _emit_json(config, out)
    return 0


def _cmd_patchwork(config):
    lifting = jsonio.lifting_from_json(_read_json(config.input))
    sub = lower_hull_subdivision(lifting)
    negative = config.options["negative"]
    signs = single_negative_signs(sub, negative)
    membrane = build_membrane(sub, signs)
    report = verify_sphere(membrane) if membrane.pieces else {
        "closed": False, "connected": False, "euler": 0,
    }
    print(
        f"membrane: {len(membrane)} pieces, closed={report['closed']}, "
        f"connected={report['connected']}, euler={report['euler']}"
    )
    _emit_json(
        config, jsonio.membrane_to_json(membrane, report, seed=config.seed)
    )
    svg_path = config.options.get("svg")
    if svg_path and lifting.dim == 2:
        _write(
            svg_path,
            render_svg(
                None,
                viewport=config.viewport,
                membrane=membrane,
                seed=config.seed,
            ),
        )
    fig = config.options.get("figure")
    if fig and lifting.dim == 2:
        from .figures import membrane_figure

        membrane_figure(membrane, fig)
    return 0


def _read_samples_csv(path):
    pts = []
    for line in Path(path).read_text().splitlines():
        if not line or line.startswith("#") or line.startswith("log"):
            continue
        parts = line.split(",")
        pts.append((float(parts[0]), float(parts[1])))
    return pts


def _cmd_render_svg(config):
    cplx = None
    if config.input:
        cplx = jsonio.complex_from_json(_read_json(config.input))
    samples = None
    if config.options.get("samples"):
        samples = _read_samples_csv(config.options["samples"])
    membrane = None
    if config.options.get("membrane"):
        mdoc = _read_json(config.options["membrane"])
        from types import SimpleNamespace

        membrane = SimpleNamespace(
            pieces=[
                SimpleNamespace(
                    midpoints=[
                        tuple(Fraction(x) for x in m)
                        for m in piece["midpoints"]
                    ]
                )
                for piece in mdoc["pieces"]
            ]
        )
    highlight = set(config.options.get("highlight") or ())
    _write(
        config.output,
        render_svg(
            cplx,
            viewport=config.viewport,
            samples=samples,
            membrane=membrane,
            highlight=highlight,
            seed=config.seed,
        ),
    )
    return 0


_COMMANDS = {
    "tropicalize": _cmd_tropicalize,
    "subdivide": _cmd_subdivide,
    "check-balance": _cmd_check_balance,
    "reconstruct": _cmd_reconstruct,
    "decompose": _cmd_decompose,
    "homology": _cmd_homology,
    "invariants": _cmd_invariants,
    "amoeba-sample": _cmd_amoeba_sample,
    "kapranov": _cmd_kapranov,
    "patchwork": _cmd_patchwork,
    "render-svg": _cmd_render_svg,
}


def run(config):
    """Execute one JobConfig; returns the process exit status."""
    try:
        return _COMMANDS[config.command](config)
    except (ValueError, DegenerateInput, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _parse_viewport(text):
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("viewport needs x0,y0,x1,y1")
    return tuple(parts)


def _parse_grid(text):
    a, _, b = text.partition("x")
    return int(a), int(b)


def _parse_ts(text):
    return tuple(float(x) for x in text.split(","))


def _parse_point(text):
    return tuple(int(x) for x in text.split(","))


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="tropants",
        description="exact tropical complexes, pants decompositions, amoebas",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        p.add_argument("--input", help="input JSON path")
        if output:
            p.add_argument("--output", help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0)

    for name in ("tropicalize", "subdivide", "reconstruct"):
        common(sub.add_parser(name))
    common(sub.add_parser("check-balance"), output=False)
    common(sub.add_parser("decompose"))
    common(sub.add_parser("homology"))

    p = sub.add_parser("invariants")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--output")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("amoeba-sample")
    common(p)
    p.add_argument("--t", type=_parse_ts, default=(100.0,))
    p.add_argument("--grid", type=_parse_grid, default=(61, 16))
    p.add_argument("--viewport", type=_parse_viewport,
                   default=(-3.0, -3.0, 3.0, 3.0))
    p.add_argument("--figure", help="matplotlib PNG path")
    p.add_argument("--svg", help="SVG overlay path")

    common(sub.add_parser("kapranov"))

    p = sub.add_parser("patchwork")
    common(p)
    p.add_argument("--negative", type=_parse_point, required=True,
                   help="lattice point carrying the negative sign")
    p.add_argument("--svg")
    p.add_argument("--figure")
    p.add_argument("--viewport", type=_parse_viewport,
                   default=(-1.0, -1.0, 5.0, 5.0))

    p = sub.add_parser("render-svg")
    common(p)
    p.add_argument("--samples", help="CSV of sample points")
    p.add_argument("--membrane", help="membrane JSON")
    p.add_argument("--highlight", type=lambda s: [int(x) for x in s.split(",")],
                   help="cell ids to emphasize")
    p.add_argument("--viewport", type=_parse_viewport,
                   default=(-4.0, -4.0, 4.0, 4.0))

    args = parser.parse_args(argv)
    options = {}
    for key in ("figure", "svg", "samples", "membrane", "highlight", "negative"):
        if hasattr(args, key):
            options[key] = getattr(args, key)
    if args.command == "invariants":
        options["n"] = args.n
        options["d"] = args.d
    config = JobConfig(
        command=args.command,
        input=getattr(args, "input", None),
        output=getattr(args, "output", None),
        t_values=getattr(args, "t", (100.0,)),
        grid=getattr(args, "grid", (61, 16)),
        seed=args.seed,
        viewport=getattr(args, "viewport", (-4.0, -4.0, 4.0, 4.0)),
        options=options,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
