from __future__ import annotations

import numpy as np
import pytest

from conftest import named
from gsconnect.builders import build_complete, build_multi_star, build_star
from gsconnect.canon import are_lc_equivalent
from gsconnect.errors import InvalidSpecialNeighbor, ProtocolStepError, VertexNotFound
from gsconnect.graph import Graph, delete_vertex, is_star, local_complement
from gsconnect.measurement import (
    MeasurementStep,
    PauliBasis,
    Protocol,
    apply_protocol,
    measure,
    measure_x,
    measure_y,
    measure_z,
)
from gsconnect.oracle import graph_from_tableau, measure_pauli_postselect, random_case, tableau_from_graph

X, Y, Z = PauliBasis.X, PauliBasis.Y, PauliBasis.Z
A, B, C = 0, 1, 2


class TestZ:
    def test_star_leaf(self):
        assert measure_z(build_star(3), 3).same_structure(build_star(2))

    def test_edge(self):
        h = measure_z(named("ab"), B)
        assert h.sorted_vertices() == [A] and h.num_edges == 0

    def test_complete(self):
        assert measure_z(build_complete(4), 2).num_edges == 3

    def test_missing(self):
        with pytest.raises(VertexNotFound):
            measure_z(build_star(2), 9)


class TestY:
    def test_path_middle(self, path_abc):
        assert measure_y(path_abc, B).edges() == [(A, C)]

    def test_star_center(self):
        h = measure_y(build_star(3), 0)
        assert h.same_structure(build_complete(3).relabel({0: 1, 1: 2, 2: 3}))

    def test_isolated(self):
        assert len(measure_y(Graph([0], []), 0)) == 0


class TestX:
    def test_edge(self):
        h = measure_x(named("ab"), A, k0=B)
        assert h.sorted_vertices() == [B] and h.num_edges == 0

    def test_path(self, path_abc):
        assert measure_x(path_abc, B, k0=A).edges() == [(A, C)]

    def test_minimal_cell(self):
        # Sw1-Sw2-Sw3-Sw4 with one client on Sw2 and Sw4
        sw1, sw2, sw3, sw4, k2, k4 = range(6)
        g = Graph(range(6), [(sw1, sw2), (sw2, sw3), (sw3, sw4), (sw2, k2), (sw4, k4)])
        h = measure_x(g, sw3, k0=sw2)
        assert is_star(h) and len(h) == 5 and h.degree(sw4) == 4

    def test_k0_not_neighbor(self, path_abc):
        with pytest.raises(InvalidSpecialNeighbor):
            measure_x(path_abc, A, k0=C)

    def test_k0_required(self, path_abc):
        with pytest.raises(InvalidSpecialNeighbor):
            measure_x(path_abc, A)

    def test_isolated_degenerates(self):
        g = Graph([0, 1], [])
        assert measure_x(g, 0).sorted_vertices() == [1]
        with pytest.raises(InvalidSpecialNeighbor):
            measure_x(g, 0, k0=1)

    def test_results_for_different_k0_are_lc_equivalent(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            g, _, v, _ = random_case(rng, 7)
            outs = [measure_x(g, v, k0) for k0 in sorted(g.neighbors(v))]
            for h in outs[1:]:
                assert are_lc_equivalent(outs[0], h, up_to_isomorphism=False)


def test_k0_only_for_x():
    with pytest.raises(InvalidSpecialNeighbor):
        MeasurementStep(Z, 0, 1)
    with pytest.raises(InvalidSpecialNeighbor):
        measure(build_star(2), "Y", 0, 1)


def test_step_from_string():
    s = MeasurementStep("X", 2, 3)
    assert s.basis is X and str(s) == "X(2,3)"


class TestProtocol:
    def test_empty(self):
        g = build_star(3)
        run = apply_protocol(g, Protocol())
        assert run.graph == g and run.cost.total == 0 and run.trace == []

    def test_two_leaves(self):
        run = apply_protocol(build_star(3), Protocol([MeasurementStep(Z, 1), MeasurementStep(Z, 2)]))
        assert run.graph.num_edges == 1 and run.cost.total == 2

    def test_sweep_on_small_multi_star(self):
        g = build_multi_star([1, 1, 1])
        # client of Sw1 has id 4
        p = Protocol([MeasurementStep(Z, 4), MeasurementStep(X, 1, 2)])
        run = apply_protocol(g, p, keep_trace=True)
        assert is_star(run.graph) and len(run.graph) == 4 and run.cost.total == 2
        assert len(run.trace) == 2

    def test_cost_invariant(self):
        g = build_multi_star([2, 1, 3])
        p = Protocol([MeasurementStep(Z, 5), MeasurementStep(Y, 1), MeasurementStep(Z, 3)])
        run = apply_protocol(g, p)
        assert run.cost.total == run.cost.initial_vertices - run.cost.final_vertices
        assert run.cost.counts == {Z: 2, Y: 1}

    def test_step_error_carries_index(self):
        p = Protocol([MeasurementStep(Z, 1), MeasurementStep(Z, 1)])
        with pytest.raises(ProtocolStepError) as exc:
            apply_protocol(build_star(3), p)
        assert exc.value.index == 1

    def test_concatenation(self):
        p = Protocol([MeasurementStep(Z, 1)]) + Protocol([MeasurementStep(Y, 0)])
        assert len(p) == 2 and str(p) == "Z(1) -> Y(0)"


def wrong_y(g: Graph, i: int) -> Graph:
    """Deliberately broken Y rule: skips the local complementation."""
    return delete_vertex(g, i)


def wrong_x(g: Graph, i: int, k0: int) -> Graph:
    """Deliberately broken X rule: skips the first LC at k0.

    (Dropping only the final LC at k0 would go unnoticed, since the oracle
    compares LC classes.)
    """
    return local_complement(delete_vertex(local_complement(g, i), i), k0)


def test_oracle_rejects_mutated_rules():
    """The oracle must be able to catch an incorrect rule."""
    rng = np.random.default_rng(2)
    caught_y = caught_x = False
    for _ in range(200):
        g, _, v, _ = random_case(rng, 6)
        t = tableau_from_graph(g)
        got_y, _ = graph_from_tableau(measure_pauli_postselect(t, Y, t.index(v)))
        if not are_lc_equivalent(got_y, wrong_y(g, v), up_to_isomorphism=False):
            caught_y = True
        nb = sorted(g.neighbors(v))
        if nb:
            got_x, _ = graph_from_tableau(measure_pauli_postselect(t, X, t.index(v)))
            if not are_lc_equivalent(got_x, wrong_x(g, v, nb[0]), up_to_isomorphism=False):
                caught_x = True
    assert caught_y and caught_x


def test_outer_lc_does_not_change_lc_class():
    """The trailing LC at k0 is invisible to an LC-class comparison."""
    rng = np.random.default_rng(6)
    for _ in range(100):
        g, _, v, _ = random_case(rng, 7)
        for k0 in sorted(g.neighbors(v)):
            without_outer = delete_vertex(local_complement(local_complement(g, k0), v), v)
            assert oracle_agrees(g, v, without_outer)


def oracle_agrees(g: Graph, v: int, candidate: Graph) -> bool:
    t = tableau_from_graph(g)
    got, _ = graph_from_tableau(measure_pauli_postselect(t, X, t.index(v)))
    return are_lc_equivalent(got, candidate, up_to_isomorphism=False)
