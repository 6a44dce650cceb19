"""JSON file formats: diagrams, decompositions and series."""

from __future__ import annotations

import json
from typing import Any

from .enumeration import CentralRegion, Decomposition
from .geometry import (
    COLORS,
    ArcSet,
    Diameter,
    GeometryError,
    context,
    make_arc,
)
from .ptolemy import TypeADiagram
from .series import TruncSeries


class FormatError(ValueError):
    pass


def diagram_to_obj(X: ArcSet) -> dict[str, Any]:
    ctx = context(X.n)
    arcs = []
    for obj in ctx.objects_of(X):
        if isinstance(obj, Diameter):
            arcs.append({"kind": "diameter", "i": obj.i, "color": obj.color})
        else:
            arcs.append({"kind": "pair", "v": [obj.i, obj.j]})
    return {"n": X.n, "arcs": arcs}


def diagram_from_obj(data: Any) -> ArcSet:
    if not isinstance(data, dict):
        raise FormatError("diagram must be a JSON object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError(f"'n' must be a positive integer, got {n!r}")
    arcs = data.get("arcs", [])
    if not isinstance(arcs, list):
        raise FormatError("'arcs' must be a list")
    ctx = context(n)
    bits = 0
    for entry in arcs:
        obj = _parse_arc(ctx, entry)
        bit = 1 << ctx.index[obj]
        if bits & bit:
            raise FormatError(f"duplicate entry for {obj}")
        bits |= bit
    return ArcSet(n, bits)


def _parse_arc(ctx, entry):
    if not isinstance(entry, dict):
        raise FormatError(f"arc entry must be an object, got {entry!r}")
    kind = entry.get("kind")
    try:
        if kind == "pair":
            v = entry.get("v")
            if not (isinstance(v, list) and len(v) == 2 and all(isinstance(x, int) for x in v)):
                raise FormatError(f"pair needs 'v': [i, j], got {v!r}")
            obj = make_arc(ctx, v[0], v[1])
            if isinstance(obj, Diameter):
                raise FormatError(f"{v} is a diameter; use kind 'diameter'")
            return obj
        if kind == "diameter":
            i, color = entry.get("i"), entry.get("color")
            if not isinstance(i, int) or color not in COLORS:
                raise FormatError(f"diameter needs integer 'i' and colour green/red, got {entry!r}")
            return make_arc(ctx, i, i + ctx.n, color)
    except GeometryError as exc:
        raise FormatError(str(exc)) from exc
    raise FormatError(f"unknown arc kind {kind!r}")


def dumps(data: Any) -> str:
    return json.dumps(data, separators=(",", ":"))


def parse_diagram(text: str) -> ArcSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return diagram_from_obj(data)


def emit_diagram(X: ArcSet) -> str:
    return dumps(diagram_to_obj(X))


def decomposition_to_obj(d: Decomposition) -> dict[str, Any]:
    c = d.central
    return {
        "n": c.n,
        "central": {
            "k": c.k,
            "kind": c.kind,
            "boundary": list(c.boundary),
            "diagram": diagram_to_obj(c.arcs),
        },
        "glued": [{"m": g.m, "arcs": sorted([list(a) for a in g.arcs])} for g in d.glued],
        "marked_edge": d.marked_edge,
    }


def decomposition_from_obj(data: Any) -> Decomposition:
    try:
        c = data["central"]
        arcs = diagram_from_obj(c["diagram"])
        central = CentralRegion(data["n"], tuple(c["boundary"]), arcs, c["k"], c["kind"])
        glued = tuple(TypeADiagram(g["m"], frozenset(tuple(a) for a in g["arcs"]))
                      for g in data["glued"])
        return Decomposition(central, glued, data["marked_edge"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed decomposition: {exc}") from exc


def series_to_json(s: TruncSeries) -> str:
    return dumps(s.to_json())
