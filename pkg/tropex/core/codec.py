"""
Tropex JSON Codec

Converts domain values to and from plain JSON data:
- rationals as "p/q" strings ("p" when integral)
- integers as JSON numbers below 2^63 in absolute value, decimal strings above
- cones inside graphs referenced by index into the accompanying fan

Decoding failures raise InputError so the CLI can exit with status 2.

Author: tropex developers
License: MIT
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence

from .errors import InputError, ValidationError
from .logging import get_logger
from ..tropical.cones import Cone, ConeComplex, ConeSpace, make_complex, make_cone
from ..tropical.expansion import ExpansionDualComplex, StabilityResult, SubschemeShadow
from ..tropical.graphs import (
    CombinatorialOneComplex,
    EmbeddedOneComplex,
    GraphEdge,
    GraphRay,
    ValidationReport,
    WeightedOneComplex,
)
from ..tropical.lattice import format_rational, to_fraction
from ..tropical.moduli import type_hash
from ..tropical.troplim import AsymptoticProfile, BalancingReport, LimitResult, TropicalPolynomial

logger = get_logger(__name__)

INT_LIMIT = 2 ** 63


# ============================================================================
# Scalars
# ============================================================================

def encode_int(value: int):
    value = int(value)
    return value if abs(value) < INT_LIMIT else str(value)


def decode_int(value) -> int:
    if isinstance(value, bool):
        raise InputError(f"Expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError as e:
            raise InputError(f"Expected an integer, got {value!r}") from e
    raise InputError(f"Expected an integer, got {value!r}")


def encode_rational(value) -> str:
    return format_rational(value)


def decode_rational(value):
    try:
        return to_fraction(value)
    except ValidationError as e:
        raise InputError(str(e)) from e


def int_vector(values: Sequence) -> List:
    return [encode_int(x) for x in values]


def rat_vector(values: Sequence) -> List[str]:
    return [encode_rational(x) for x in values]


def matrix(rows: Sequence[Sequence]) -> List[List[str]]:
    return [rat_vector(row) for row in rows]


def _ints(values) -> tuple:
    if not isinstance(values, list):
        raise InputError(f"Expected a list of integers, got {values!r}")
    return tuple(decode_int(x) for x in values)


def _rats(values) -> tuple:
    if not isinstance(values, list):
        raise InputError(f"Expected a list of rationals, got {values!r}")
    return tuple(decode_rational(x) for x in values)


# ============================================================================
# Files
# ============================================================================

def load_json(path: Path) -> Any:
    """Read a JSON file, raising InputError when it is missing or malformed."""
    try:
        with Path(path).open("r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"Invalid JSON in {path}: {e}") from e


# ============================================================================
# Cones and fans
# ============================================================================

def cone_to_json(cone: Cone) -> Dict[str, Any]:
    data = {"dim": cone.dim, "rays": [int_vector(r) for r in cone.rays]}
    if cone.lattice is not None:
        data["lattice"] = [int_vector(v) for v in cone.lattice]
    return data


def fan_to_json(sigma: ConeComplex, all_cones: bool = False) -> Dict[str, Any]:
    """Maximal cones (or every cone) with rays and optional lattices, plus ray names."""
    indices = range(len(sigma.cones)) if all_cones else sigma.maximal_cones()
    return {
        "ambient_dim": sigma.ambient_dim,
        "cones": [cone_to_json(sigma.cones[i]) for i in indices],
        "ray_names": {name: int_vector(ray) for ray, name in sigma.ray_names},
    }


def fan_from_json(data: Mapping) -> ConeComplex:
    try:
        n = decode_int(data["ambient_dim"])
        cones = []
        for entry in data["cones"]:
            rays = [_ints(r) for r in entry["rays"]]
            lattice = [_ints(v) for v in entry["lattice"]] if entry.get("lattice") else None
            cones.append(make_cone(n, rays, lattice))
        names = {_ints(ray): str(name) for name, ray in (data.get("ray_names") or {}).items()}
    except (KeyError, TypeError, AttributeError) as e:
        raise InputError(f"Malformed fan: {e}") from e
    return make_complex(n, cones, names)


def cone_space_to_json(space: ConeSpace) -> Dict[str, Any]:
    return {
        "cones": [cone_to_json(c) for c in space.cones],
        "morphisms": [
            {"child": m.child, "parent": m.parent, "matrix": matrix(m.matrix)} for m in space.morphisms
        ],
        "automorphisms": [[matrix(g) for g in autos] for autos in space.automorphisms],
        "regime": space.regime,
    }


# ============================================================================
# 1-complexes
# ============================================================================

def graph_type_to_json(g: CombinatorialOneComplex) -> Dict[str, Any]:
    return {
        "vertices": [{"cone": c} for c in g.vertex_cones],
        "edges": [{"ends": list(e.ends), "cone": e.cone, "dir": int_vector(e.direction)} for e in g.edges],
        "rays": [{"base": r.base, "cone": r.cone, "dir": int_vector(r.direction)} for r in g.rays],
    }


def complex1_to_json(c) -> Dict[str, Any]:
    """Embedded or weighted 1-complex; weights ride on their edge and ray entries."""
    base = c.base if isinstance(c, WeightedOneComplex) else c
    data = graph_type_to_json(base.graph)
    for v, p in zip(data["vertices"], base.positions):
        v["pos"] = rat_vector(p)
    if isinstance(c, WeightedOneComplex):
        for entry, w in zip(data["edges"], c.edge_weights):
            entry["weight"] = encode_int(w)
        for entry, w in zip(data["rays"], c.ray_weights):
            entry["weight"] = encode_int(w)
    return data


def complex1_from_json(data: Mapping):
    """Decode a 1-complex; any weight entry makes it a WeightedOneComplex (missing weights are 1)."""
    try:
        vertices = data["vertices"]
        edges = data.get("edges", [])
        rays = data.get("rays", [])
        graph = CombinatorialOneComplex(
            tuple(decode_int(v["cone"]) for v in vertices),
            tuple(GraphEdge(_ints(e["ends"]), decode_int(e["cone"]), _ints(e["dir"])) for e in edges),
            tuple(GraphRay(decode_int(r["base"]), decode_int(r["cone"]), _ints(r["dir"])) for r in rays),
        )
        positions = tuple(_rats(v["pos"]) for v in vertices)
        weighted = any("weight" in x for x in list(edges) + list(rays))
        edge_weights = tuple(decode_int(e.get("weight", 1)) for e in edges)
        ray_weights = tuple(decode_int(r.get("weight", 1)) for r in rays)
    except (KeyError, TypeError, AttributeError) as e:
        raise InputError(f"Malformed 1-complex: {e}") from e
    if any(len(e.ends) != 2 for e in graph.edges):
        raise InputError("Every edge needs exactly two ends")
    base = EmbeddedOneComplex(graph, positions)
    if weighted:
        return WeightedOneComplex(base, edge_weights, ray_weights)
    return base


def polynomial_to_json(p: TropicalPolynomial) -> Dict[str, Any]:
    return {
        "dim": p.ambient_dim,
        "terms": [{"exp": int_vector(e), "val": encode_rational(v)} for e, v in p.terms],
    }


def polynomial_from_json(data: Mapping) -> TropicalPolynomial:
    try:
        dim = decode_int(data["dim"])
        terms = [(_ints(t["exp"]), decode_rational(t["val"])) for t in data["terms"]]
    except (KeyError, TypeError, AttributeError) as e:
        raise InputError(f"Malformed polynomial: {e}") from e
    return TropicalPolynomial.from_terms(dim, terms)


def shadow_from_json(data: Mapping) -> SubschemeShadow:
    """{"tube": {component: bool}, "contact": [{"edge", "component", "length"}]}."""
    try:
        flags = {decode_int(k): bool(v) for k, v in data["tube"].items()}
        contact = {
            (decode_int(x["edge"]), decode_int(x["component"])): decode_int(x["length"])
            for x in data.get("contact", [])
        }
    except (KeyError, TypeError, AttributeError) as e:
        raise InputError(f"Malformed subscheme shadow: {e}") from e
    return SubschemeShadow(flags, contact)


# ============================================================================
# Results
# ============================================================================

def validation_to_json(report: ValidationReport) -> Dict[str, Any]:
    return {
        "valid": report.valid,
        "violations": [
            {"kind": v.kind, "subject": v.subject, "detail": v.detail} for v in report.violations
        ],
    }


def balancing_to_json(report: BalancingReport) -> Dict[str, Any]:
    return {
        "balanced": report.balanced,
        "defects": [{"vertex": v, "sum": int_vector(s)} for v, s in report.defects],
    }


def profile_to_json(profile: AsymptoticProfile) -> Dict[str, Any]:
    names = dict(profile.names)
    return {
        "rays": [
            {"ray": int_vector(ray), "name": names.get(ray), "weights": int_vector(ws), "total": sum(ws)}
            for ray, ws in profile.weights
        ]
    }


def expansion_to_json(e: ExpansionDualComplex) -> Dict[str, Any]:
    return {
        "components": [
            {"vertex": c.vertex, "position": rat_vector(c.position), "stratum": c.stratum,
             "bundle_rank": c.bundle_rank, "tube": c.is_tube}
            for c in e.components
        ],
        "double_divisors": [
            {"edge": d.edge, "components": list(d.components), "dir": int_vector(d.direction), "cone": d.cone}
            for d in e.double_divisors
        ],
        "relative_divisors": [
            {"ray": r.ray, "component": r.component, "dir": int_vector(r.direction), "cone": r.cone}
            for r in e.relative_divisors
        ],
    }


def limit_to_json(result: LimitResult) -> Dict[str, Any]:
    return {
        "minimal": complex1_to_json(result.minimal_complex),
        "base_change_order": result.base_change_order,
        "dilated": complex1_to_json(result.dilated),
        "cone": fan_to_json(result.cone),
        "expansion": expansion_to_json(result.expansion),
    }


def stability_to_json(result: StabilityResult) -> Dict[str, Any]:
    return {"stable": result.stable, "witness": list(result.witness)}


def xg_to_json(xg) -> Dict[str, Any]:
    return {
        "graph": graph_type_to_json(xg.graph),
        "ambient_dim": xg.ambient_dim,
        "cone": cone_to_json(xg.cone),
        "inequalities": matrix(xg.inequalities),
        "equations": matrix(xg.equations),
    }


def _path(steps) -> List[Dict[str, Any]]:
    return [{"kind": s.kind, "index": s.index, "forward": s.forward} for s in steps]


def surjection_to_json(s) -> Dict[str, Any]:
    return {
        "vertex_map": list(s.vertex_map),
        "edge_map": [_path(p) for p in s.edge_map],
        "ray_map": [_path(p) for p in s.ray_map],
        "identity": s.is_identity(),
    }


def surjection_type_to_json(st) -> Dict[str, Any]:
    return {
        "type": type_hash(st.graph),
        "graph": complex1_to_json(st.realization),
        "surjection": surjection_to_json(st.surjection),
        "subcone": cone_to_json(st.subcone),
        "codim": st.codim,
        "sample": int_vector(st.sample),
    }


def fragment_to_json(fragment, realized: Optional[ConeComplex] = None) -> Dict[str, Any]:
    data = {
        "types": [
            {"hash": type_hash(g), "graph": graph_type_to_json(g), "xg": cone_to_json(x.cone)}
            for g, x in zip(fragment.family, fragment.xg)
        ],
        "cells": [
            {"type": c.type_index, "cone": cone_to_json(c.cone), "smooth": c.smooth,
             "automorphisms": len(c.automorphisms)}
            for c in fragment.cells
        ],
        "space": cone_space_to_json(fragment.space),
        "universal": [
            {"cell": u.cell,
             "tubes": [{"piece": k, "form": rat_vector(f)} for k, f in u.tubes],
             "flat": u.flatness.flat, "reduced": u.flatness.reduced, "integral": u.integral,
             "violations": list(u.flatness.violations + u.violations)}
            for u in fragment.universal
        ],
        "barycentric": fragment.barycentric,
    }
    if realized is not None:
        data["realized"] = fan_to_json(realized)
    return data


def subdivision_to_json(s) -> Dict[str, Any]:
    return {
        "d": s.d,
        "cells": [[list(s.points[t]) for t in cell] for cell in s.cells],
        "witness_heights": rat_vector(s.witness_heights),
        "triangulation": s.is_triangulation,
        "fine": s.is_fine,
        "unimodular": s.is_unimodular,
    }


def secondary_to_json(report, forgetting=None) -> Dict[str, Any]:
    data = {
        "d": report.d,
        "maximal_cones": report.maximal_cones,
        "triangulations": report.triangulations,
        "unimodular": report.unimodular,
        "fine": report.fine,
        "unimodular_are_fine": report.unimodular_are_fine,
        "covers": report.covers,
        "pairwise_faces": report.pairwise_faces,
        "all_triangulations": report.all_triangulations,
        "cones": [
            {"subdivision": subdivision_to_json(c.subdivision), "cone": cone_to_json(c.cone)}
            for c in report.cones
        ],
    }
    if forgetting is not None:
        data["weight_forgetting"] = {
            "isomorphic_on_fine": forgetting.isomorphic_on_fine,
            "entries": [
                {"fine": e.fine, "image_dim": e.image_dim, "injective": e.injective,
                 "type": e.type_hash, "realized": e.realized}
                for e in forgetting.entries
            ],
        }
    return data
