from __future__ import annotations

import pytest

from gsconnect.errors import EvenSwitchCount, SearchBoundExceeded
from gsconnect.graph import compute_bicoloring
from gsconnect.measurement import apply_protocol
from gsconnect.builders import build_multi_star
from gsconnect.protocols import M7_TABLE, max_connect_protocol
from gsconnect.search import (
    RemovalConfig,
    classify_all,
    enumerate_configs,
    enumerate_table,
    mirror_isomorphic,
    synthesize_gates,
)


@pytest.mark.parametrize("m, total, classes", [(3, 1, 1), (5, 3, 2), (7, 10, 6), (9, 35, 19)])
def test_counts(m, total, classes):
    e = enumerate_configs(m)
    assert len(e.configs) == total and e.classes == classes == len(e.canonical)


def test_even_rejected():
    with pytest.raises(EvenSwitchCount):
        enumerate_configs(6)


def test_guard():
    with pytest.raises(SearchBoundExceeded):
        enumerate_table(15, 1)


def test_mirror():
    c = RemovalConfig(7, (1, 2, 3))
    assert c.mirror == (3, 4, 5) and c.canonical and not RemovalConfig(7, (3, 4, 5)).canonical
    assert str(c) == "{1,2,3}"


def test_canonical_sets_m7_match_table():
    assert {c.removal_set for c in enumerate_configs(7).canonical} == set(M7_TABLE)


@pytest.mark.parametrize("removal", sorted(k for k in M7_TABLE if M7_TABLE[k].gates))
def test_synthesis_reproduces_table(removal):
    assert tuple(synthesize_gates(7, removal)) == M7_TABLE[removal].gates


def test_synthesis_spread_set_is_sweep():
    gates = synthesize_gates(7, (1, 3, 5))
    expected = [s for s in max_connect_protocol([0] * 7, ending="Y")]
    assert gates == expected


@pytest.mark.parametrize("n", [1, 2, 3])
def test_classify_all_m7(n):
    out = classify_all(7, n)
    kinds = {c.removal_set: t.kind for c, t in out.items()}
    assert kinds == {k: r.kind for k, r in M7_TABLE.items()}


def test_mirror_pairs_same_class():
    rows = {o.config.removal_set: o for o in enumerate_table(7, 2, include_mirrors=True)}
    for key, o in rows.items():
        m = rows[o.config.mirror]
        assert o.topology.shape == m.topology.shape and mirror_isomorphic(o, m)
        assert len(o.heavy) == len(m.heavy)


def test_m5_two_classes():
    assert len(classify_all(5, 1)) == 2


@pytest.mark.parametrize("m", [5, 9, 11])
def test_heuristic_outcomes_are_trees(m):
    for o in enumerate_table(m, 1):
        g = o.graph
        assert g.num_edges == len(g) - 1 and compute_bicoloring(g) is not None
        # one vertex per measurement; a stripped switch that survives hangs as a leaf
        assert len(g) == 2 * m - len(o.protocol)
        assert all(g.degree(s) <= 1 for s in o.config.removal_set if s in g)
        assert apply_protocol(build_multi_star([1] * m), o.protocol).graph == g


def test_row_dict():
    row = enumerate_table(7, 1)[0].to_dict()
    assert row["config"] == [1, 2, 3] and row["topology_class"] == "TriStar" and row["source"] == "table"
