"""Canonical JSON encoding of the toolkit's objects.

Rationals are strings "p/q" with q > 0 and gcd(p, q) = 1; lattice points
and covectors are arrays of integers; keys are sorted.  Every document
emitted here re-reads and re-emits byte-identically.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .puiseux import PuiseuxSeries
from .subdivision import Cell, LiftingFunction, RegularSubdivision
from .tropical import RegionGraph, TropicalCell, TropicalComplex, Wall

__all__ = [
    "complex_from_json",
    "complex_to_json",
    "dumps",
    "frac",
    "lifting_from_json",
    "lifting_to_json",
    "membrane_to_json",
    "parse_frac",
    "puiseux_from_json",
    "puiseux_to_json",
    "region_graph_from_json",
    "region_graph_to_json",
    "subdivision_to_json",
]


def frac(x):
    q = Fraction(x)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(s):
    return Fraction(s)


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def lifting_to_json(lifting, seed=None):
    doc = {
        "ambient_dim": lifting.dim,
        "points": [list(p) for p in lifting.points],
        "values": [frac(v) for v in lifting.values],
    }
    if seed is not None:
        doc["seed"] = seed
    return doc


def lifting_from_json(doc):
    lifting = LiftingFunction(
        [tuple(p) for p in doc["points"]],
        [parse_frac(v) for v in doc["values"]],
    )
    if lifting.dim != doc["ambient_dim"]:
        raise ValueError("ambient_dim disagrees with the points")
    return lifting


def subdivision_to_json(sub, seed=None):
    doc = {
        "ambient_dim": sub.lifting.dim,
        "points": [list(p) for p in sub.lifting.points],
        "values": [frac(v) for v in sub.lifting.values],
        "cells": [
            {
                "points": list(c.points),
                "gradient": [frac(g) for g in c.gradient],
                "offset": frac(c.offset),
            }
            for c in sub.cells
        ],
        "adjacency": [list(p) for p in sub.facet_adjacency],
    }
    if seed is not None:
        doc["seed"] = seed
    return doc


def _constraint_to_json(c):
    covector, rhs = c
    return {"covector": list(covector), "rhs": frac(rhs)}


def _constraint_from_json(doc):
    return tuple(doc["covector"]), parse_frac(doc["rhs"])


def complex_to_json(cplx, seed=None):
    cells = []
    for i, c in enumerate(cplx.cells):
        cells.append(
            {
                "id": i,
                "dim": c.dim,
                "dual": list(c.dual) if c.dual else [],
                "vertices": [[frac(x) for x in v] for v in c.vertices],
                "rays": [list(r) for r in c.rays],
                "bounded": c.bounded,
                "weight": c.weight,
                "equalities": [_constraint_to_json(e) for e in c.equalities],
                "inequalities": [
                    _constraint_to_json(e) for e in c.inequalities
                ],
                "boundary": list(cplx.boundary[i]),
            }
        )
    doc = {"ambient_dim": cplx.dim, "cells": cells}
    if seed is not None:
        doc["seed"] = seed
    return doc


def complex_from_json(doc):
    cells = []
    boundary = []
    for c in sorted(doc["cells"], key=lambda c: c["id"]):
        cells.append(
            TropicalCell(
                dim=c["dim"],
                dual=tuple(c["dual"]),
                vertices=tuple(
                    tuple(parse_frac(x) for x in v) for v in c["vertices"]
                ),
                rays=tuple(tuple(r) for r in c["rays"]),
                bounded=c["bounded"],
                weight=c["weight"],
                equalities=tuple(
                    _constraint_from_json(e) for e in c["equalities"]
                ),
                inequalities=tuple(
                    _constraint_from_json(e) for e in c["inequalities"]
                ),
            )
        )
        boundary.append(tuple(c["boundary"]))
    return TropicalComplex(doc["ambient_dim"], cells, boundary)


def region_graph_to_json(graph, seed=None):
    doc = {
        "regions": [list(r) for r in graph.regions],
        "reference": graph.reference,
        "walls": [
            {
                "from": w.region_from,
                "to": w.region_to,
                "covector": list(w.covector),
                "offset": frac(w.offset),
            }
            for w in graph.walls
        ],
    }
    if seed is not None:
        doc["seed"] = seed
    return doc


def region_graph_from_json(doc):
    return RegionGraph(
        regions=tuple(tuple(r) for r in doc["regions"]),
        walls=tuple(
            Wall(
                region_from=w["from"],
                region_to=w["to"],
                covector=tuple(w["covector"]),
                offset=parse_frac(w["offset"]),
            )
            for w in doc["walls"]
        ),
        reference=doc["reference"],
    )


def membrane_to_json(membrane, report=None, seed=None):
    doc = {
        "signs": [
            {"point": list(p), "sign": s}
            for p, s in sorted(membrane.signs.items())
        ],
        "pieces": [
            {
                "cell": p.cell_index,
                "midpoints": [[frac(x) for x in m] for m in p.midpoints],
            }
            for p in membrane.pieces
        ],
        "adjacency": [list(p) for p in membrane.adjacency],
        "face_counts": {
            str(k): len(v) for k, v in sorted(membrane.mixed_faces.items())
        },
    }
    if report is not None:
        doc["report"] = report
    if seed is not None:
        doc["seed"] = seed
    return doc


def puiseux_to_json(series):
    doc = {
        "terms": [
            {"exp": frac(e), "re": c.real, "im": c.imag}
            for e, c in series.terms
        ],
        "trunc": None if series.truncation is None else frac(series.truncation),
    }
    return doc


def puiseux_from_json(doc):
    return PuiseuxSeries(
        [(parse_frac(t["exp"]), complex(t["re"], t["im"])) for t in doc["terms"]],
        None if doc.get("trunc") is None else parse_frac(doc["trunc"]),
    )
