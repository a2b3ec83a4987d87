"""Canonical JSON round trips, SVG goldens, CLI subcommands."""

import json
import math
from pathlib import Path

import pytest

from tropants import (
    LiftingFunction,
    PuiseuxSeries,
    build_maximal_lifting,
    corner_locus,
    extract_region_graph,
    lower_hull_subdivision,
    build_membrane,
    membrane_base_class,
    single_negative_signs,
)
from tropants.cli import main
from tropants.jsonio import (
    complex_from_json,
    complex_to_json,
    dumps,
    lifting_from_json,
    lifting_to_json,
    membrane_to_json,
    puiseux_from_json,
    puiseux_to_json,
    region_graph_from_json,
    region_graph_to_json,
    subdivision_to_json,
)
from tropants.svg import render_svg

GOLDEN = Path(__file__).parent / "golden"


def roundtrip_bytes(doc):
    text = dumps(doc)
    again = dumps(json.loads(text))
    assert again == text
    return text


def test_lifting_json_roundtrip():
    lift = build_maximal_lifting(1, 2)
    doc = lifting_to_json(lift)
    text = roundtrip_bytes(doc)
    back = lifting_from_json(json.loads(text))
    assert back == lift


def test_complex_json_roundtrip():
    cplx = corner_locus(build_maximal_lifting(1, 3))
    doc = complex_to_json(cplx)
    text = roundtrip_bytes(doc)
    back = complex_from_json(json.loads(text))
    assert back.same_cells(cplx)
    assert back.boundary == cplx.boundary
    from tropants import check_balanced

    assert check_balanced(back)[0]


def test_subdivision_json_shape():
    sub = lower_hull_subdivision(build_maximal_lifting(1, 2))
    doc = subdivision_to_json(sub)
    roundtrip_bytes(doc)
    assert all(isinstance(c["points"], list) for c in doc["cells"])


def test_region_graph_json_roundtrip():
    graph = extract_region_graph(corner_locus(build_maximal_lifting(1, 2)))
    text = roundtrip_bytes(region_graph_to_json(graph))
    back = region_graph_from_json(json.loads(text))
    assert back.regions == graph.regions
    assert back.walls == graph.walls


def test_puiseux_json_roundtrip():
    series = PuiseuxSeries([(-1, 2 + 3j), (0, -1)], truncation=5)
    text = roundtrip_bytes(puiseux_to_json(series))
    back = puiseux_from_json(json.loads(text))
    assert back == series


def test_membrane_json():
    sub = lower_hull_subdivision(build_maximal_lifting(1, 3))
    membrane = build_membrane(sub, single_negative_signs(sub, (1, 1)))
    roundtrip_bytes(membrane_to_json(membrane, {"closed": True}))


def _d3_highlight_svg():
    lift = build_maximal_lifting(1, 3)
    cplx = corner_locus(lift)
    sub = lower_hull_subdivision(lift)
    membrane = build_membrane(sub, single_negative_signs(sub, (1, 1)))
    cycle = membrane_base_class(membrane, cplx)
    return render_svg(
        cplx,
        viewport=(-2.0, -2.0, 14.0, 14.0),
        highlight=set(cycle.coefficients),
        seed=0,
    )


def test_svg_golden_d3_cycle():
    text = _d3_highlight_svg()
    assert text == _d3_highlight_svg()  # deterministic
    golden = (GOLDEN / "d3_cycle.svg").read_text()
    assert text == golden


def test_svg_golden_amoeba_overlay():
    from tropants import AmoebaGrid, sample_amoeba_curve

    lift = LiftingFunction([(0, 0), (1, 0), (0, 1), (1, 1)], [0, 0, 0, 0])
    coeffs = {(0, 0): -1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    sample = sample_amoeba_curve(
        lift, coeffs, 100, AmoebaGrid(-2.0, 2.0, 15, 6)
    )
    cplx = corner_locus(lift)
    text = render_svg(
        cplx, viewport=(-3.0, -3.0, 3.0, 3.0), samples=sample.points, seed=0
    )
    golden = (GOLDEN / "amoeba_overlay.svg").read_text()
    assert text == golden


def test_svg_rejects_high_dimension_without_projection():
    cplx = corner_locus(build_maximal_lifting(2, 1))
    with pytest.raises(ValueError, match="projection"):
        render_svg(cplx)
    out = render_svg(cplx, projection=((1.0, 0.0, 0.0), (0.0, 1.0, 0.0)))
    assert out.startswith("<svg")


def _write_lifting(tmp_path, name, lift):
    path = tmp_path / name
    path.write_text(dumps(lifting_to_json(lift)))
    return str(path)


def test_cli_invariants(tmp_path, capsys):
    out = tmp_path / "inv.json"
    assert main(["invariants", "2", "4", "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["p_g"] == 1 and doc["chi"] == 24 and doc["sigma"] == -16
    assert "seed" in doc


def test_cli_tropicalize_balance_roundtrip(tmp_path, capsys):
    lift_path = _write_lifting(tmp_path, "lift.json", build_maximal_lifting(1, 3))
    cx = tmp_path / "cx.json"
    assert main(["tropicalize", "--input", lift_path, "--output", str(cx)]) == 0
    assert main(["check-balance", "--input", str(cx)]) == 0
    assert "balanced" in capsys.readouterr().out
    # byte-identical re-emission
    text = cx.read_text()
    assert dumps(json.loads(text)) == text

    # tamper one weight and expect a nonzero exit with a certificate
    doc = json.loads(text)
    for cell in doc["cells"]:
        if cell["dim"] == 1:
            cell["weight"] = 5
            break
    bad = tmp_path / "bad.json"
    bad.write_text(dumps(doc))
    assert main(["check-balance", "--input", str(bad)]) == 1
    assert "not balanced" in capsys.readouterr().out


def test_cli_decompose_census(tmp_path, capsys):
    lift_path = _write_lifting(tmp_path, "lift.json", build_maximal_lifting(1, 3))
    out = tmp_path / "pieces.json"
    assert main(["decompose", "--input", lift_path, "--output", str(out)]) == 0
    assert "9 pieces" in capsys.readouterr().out
    assert json.loads(out.read_text())["count"] == 9


def test_cli_subdivide_reconstruct_homology(tmp_path, capsys):
    lift = build_maximal_lifting(1, 3)
    lift_path = _write_lifting(tmp_path, "lift.json", lift)
    sub_path = tmp_path / "sub.json"
    assert main(["subdivide", "--input", lift_path, "--output", str(sub_path)]) == 0
    graph = extract_region_graph(corner_locus(lift))
    graph_path = tmp_path / "graph.json"
    graph_path.write_text(dumps(region_graph_to_json(graph)))
    rec_path = tmp_path / "rec.json"
    assert main(["reconstruct", "--input", str(graph_path), "--output", str(rec_path)]) == 0
    rec = lifting_from_json(json.loads(rec_path.read_text()))
    assert corner_locus(rec).same_cells(corner_locus(lift))
    assert main(["homology", "--input", lift_path]) == 0
    out = capsys.readouterr().out
    assert "H_1: rank 1" in out


def test_cli_amoeba_sample(tmp_path):
    lift = LiftingFunction([(0, 0), (1, 0), (0, 1)], [0, 0, 0])
    job = {
        "lifting": lifting_to_json(lift),
        "coefficients": [
            {"point": [0, 0], "re": 1.0, "im": 0.0},
            {"point": [1, 0], "re": 1.0, "im": 0.0},
            {"point": [0, 1], "re": 1.0, "im": 0.0},
        ],
    }
    job_path = tmp_path / "job.json"
    job_path.write_text(dumps(job))
    out = tmp_path / "amoeba.csv"
    fig = tmp_path / "amoeba.png"
    assert (
        main(
            [
                "amoeba-sample",
                "--input", str(job_path),
                "--output", str(out),
                "--t", "10,1000",
                "--grid", "11x4",
                "--viewport", "-2,-2,2,2",
                "--figure", str(fig),
            ]
        )
        == 0
    )
    first = tmp_path / "amoeba_t10.csv"
    second = tmp_path / "amoeba_t1000.csv"
    assert first.exists() and second.exists()
    header, columns, *rows = first.read_text().splitlines()
    assert header.startswith("# seed=0 t=10")
    assert columns == "log_t_z1,log_t_z2,in_tube"
    assert rows and all(r.endswith(",1") for r in rows)
    assert (tmp_path / "amoeba_t10.png").stat().st_size > 0


def test_cli_kapranov(tmp_path, capsys):
    poly = {
        "monomials": [
            {"exponent": [2], "series": {"terms": [{"exp": "0/1", "re": 1.0, "im": 0.0}], "trunc": None}},
            {"exponent": [1], "series": {"terms": [{"exp": "-1/1", "re": 1.0, "im": 0.0}], "trunc": None}},
            {"exponent": [0], "series": {"terms": [{"exp": "0/1", "re": 1.0, "im": 0.0}], "trunc": None}},
        ]
    }
    path = tmp_path / "poly.json"
    path.write_text(dumps(poly))
    out = tmp_path / "kap.json"
    assert main(["kapranov", "--input", str(path), "--output", str(out)]) == 0
    assert "breakpoints: -1/1 1/1" in capsys.readouterr().out


def test_cli_patchwork_and_render(tmp_path, capsys):
    lift_path = _write_lifting(tmp_path, "lift.json", build_maximal_lifting(1, 3))
    mem = tmp_path / "mem.json"
    svg = tmp_path / "mem.svg"
    assert (
        main(
            [
                "patchwork",
                "--input", lift_path,
                "--negative", "1,1",
                "--output", str(mem),
                "--svg", str(svg),
            ]
        )
        == 0
    )
    assert "closed=True" in capsys.readouterr().out
    doc = json.loads(mem.read_text())
    assert doc["report"]["euler"] == 0
    assert svg.read_text().startswith("<svg")

    cx = tmp_path / "cx.json"
    main(["tropicalize", "--input", lift_path, "--output", str(cx)])
    out_svg = tmp_path / "out.svg"
    assert (
        main(
            [
                "render-svg",
                "--input", str(cx),
                "--output", str(out_svg),
                "--membrane", str(mem),
                "--viewport", "-2,-2,14,14",
            ]
        )
        == 0
    )
    assert out_svg.read_text().startswith("<svg")


def test_cli_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ nope")
    with pytest.raises(SystemExit) as err:
        main(["tropicalize", "--input", str(bad)])
    assert "line 1" in str(err.value)


def test_cli_domain_error_exit(tmp_path, capsys):
    lift = LiftingFunction([(0, 0), (1, 1), (2, 2), (0, 1)], [0, 0, 0, 0])
    # fine; now a genuinely degenerate one
    bad = LiftingFunction([(0, 0), (1, 1), (2, 2)], [0, 0, 0])
    path = _write_lifting(tmp_path, "degenerate.json", bad)
    assert main(["tropicalize", "--input", path]) == 1
    assert "error:" in capsys.readouterr().err
