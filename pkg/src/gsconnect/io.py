"""JSON and DOT interchange for graphs and protocols."""

from __future__ import annotations

import json

from .errors import InvalidGraph
from .graph import Graph
from .measurement import MeasurementStep, Protocol

__all__ = [
    "graph_to_dict",
    "graph_from_dict",
    "graph_to_json",
    "graph_from_json",
    "protocol_to_dict",
    "protocol_from_dict",
    "protocol_from_json",
    "graph_to_dot",
]


def graph_to_dict(g: Graph) -> dict:
    verts = []
    for v in g.sorted_vertices():
        entry: dict = {"id": v}
        if g.label(v) is not None:
            entry["label"] = g.label(v)
        verts.append(entry)
    return {"vertices": verts, "edges": [list(e) for e in g.edges()]}


def graph_from_dict(d: dict) -> Graph:
    try:
        ids = []
        labels = {}
        for entry in d["vertices"]:
            if isinstance(entry, dict):
                v = int(entry["id"])
                if "label" in entry:
                    labels[v] = entry["label"]
            else:
                v = int(entry)
            ids.append(v)
        edges = [tuple(e) for e in d.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraph(f"malformed graph JSON: {exc}") from exc
    if len(set(ids)) != len(ids):
        raise InvalidGraph("duplicate vertex id")
    if any(len(e) != 2 for e in edges):
        raise InvalidGraph("edges must be pairs")
    return Graph(ids, edges, labels)


def graph_to_json(g: Graph, indent: int | None = None) -> str:
    return json.dumps(graph_to_dict(g), indent=indent)


def graph_from_json(text: str) -> Graph:
    return graph_from_dict(json.loads(text))


def protocol_to_dict(p: Protocol) -> dict:
    return p.to_dict()


def protocol_from_dict(d: dict) -> Protocol:
    steps = []
    for s in d["steps"]:
        k0 = s.get("k0")
        steps.append(MeasurementStep(s["basis"], int(s["target"]), None if k0 is None else int(k0)))
    return Protocol(steps)


def protocol_from_json(text: str) -> Protocol:
    return protocol_from_dict(json.loads(text))


def _dot_id(g: Graph, v: int) -> str:
    name = g.label(v) or str(v)
    return '"' + name.replace('"', r"\"") + '"'


def graph_to_dot(g: Graph, name: str = "G") -> str:
    """Undirected DOT text; labeled vertices use their label as node name."""
    lines = [f"graph {name} {{"]
    for v in g.sorted_vertices():
        lines.append(f"  {_dot_id(g, v)};")
    for u, v in g.edges():
        lines.append(f"  {_dot_id(g, u)} -- {_dot_id(g, v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
