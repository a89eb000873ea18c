from __future__ import annotations

import json

import pytest
from hypothesis import given

from gsconnect.builders import build_multi_star, build_star
from gsconnect.errors import InvalidGraph
from gsconnect.io import (
    graph_from_dict,
    graph_from_json,
    graph_to_dict,
    graph_to_dot,
    graph_to_json,
    protocol_from_json,
)
from gsconnect.measurement import MeasurementStep, Protocol
from gsconnect.protocols import max_connect_protocol

from test_graph import graphs


@given(graphs(8))
def test_graph_roundtrip(g):
    assert graph_from_json(graph_to_json(g)) == g


def test_labels_roundtrip():
    g = build_multi_star([1, 2, 0])
    h = graph_from_dict(graph_to_dict(g))
    assert h == g and h.labels == g.labels


def test_plain_vertex_ids_accepted():
    g = graph_from_dict({"vertices": [0, 1, 2], "edges": [[0, 1]]})
    assert g.edges() == [(0, 1)]


@pytest.mark.parametrize(
    "doc",
    [
        {"edges": []},
        {"vertices": [{"id": 0}, {"id": 0}], "edges": []},
        {"vertices": [0, 1], "edges": [[0, 1, 2]]},
        {"vertices": [0, 1], "edges": [[0, 5]]},
        {"vertices": [{"name": 1}]},
    ],
)
def test_malformed(doc):
    with pytest.raises(InvalidGraph):
        graph_from_dict(doc)


def test_protocol_roundtrip():
    p = max_connect_protocol([1, 2, 1, 0, 3])
    assert protocol_from_json(json.dumps(p.to_dict())) == p


def test_protocol_schema():
    p = Protocol([MeasurementStep("X", 1, 2), MeasurementStep("Z", 3)])
    assert p.to_dict() == {"steps": [{"basis": "X", "target": 1, "k0": 2}, {"basis": "Z", "target": 3}]}


def test_dot():
    text = graph_to_dot(build_star(3))
    assert text.count(" -- ") == 3
    assert sum(1 for line in text.splitlines() if line.strip().endswith(";") and "--" not in line) == 4


def test_dot_uses_labels():
    text = graph_to_dot(build_multi_star([1]))
    assert '"Sw0" -- "K1_0";' in text
