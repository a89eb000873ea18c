from __future__ import annotations

import pytest

from gsconnect.builders import build_bi_star, build_multi_star, build_star
from gsconnect.errors import (
    EvenSwitchCount,
    InvalidRemovalSet,
    OddSwitchCount,
    TopologyMismatch,
)
from gsconnect.graph import TopologyKind, classify_topology, compute_bicoloring, is_star
from gsconnect.measurement import PauliBasis, apply_protocol
from gsconnect.protocols import (
    M7_TABLE,
    generate_bi_star_variant,
    generate_even_max_connect,
    generate_extranet,
    generate_max_connect,
    heavy_centers,
    max_connect_protocol,
    predicted_alpha,
    predicted_alpha_hetero,
    predicted_cost,
    predicted_cost_hetero,
    reduce_even_to_odd,
    table1_protocol,
)


class TestClosedForms:
    @pytest.mark.parametrize("m, n, alpha", [(3, 2, 6), (7, 1, 8), (1, 0, 1)])
    def test_alpha(self, m, n, alpha):
        assert predicted_alpha(m, n) == alpha

    @pytest.mark.parametrize("m, n, cost", [(7, 2, 9), (1, 5, 0), (5, 3, 8)])
    def test_cost(self, m, n, cost):
        assert predicted_cost(m, n) == cost

    def test_hetero(self):
        assert predicted_alpha_hetero([2, 3, 1, 4, 0]) == 6
        assert predicted_alpha_hetero([0, 0, 0]) == 2
        for m in (1, 3, 5, 7):
            for n in range(4):
                assert predicted_alpha_hetero([n] * m) == predicted_alpha(m, n)
                assert predicted_cost_hetero([n] * m) == predicted_cost(m, n)

    @pytest.mark.parametrize("fn", [predicted_alpha, predicted_cost])
    def test_even_rejected(self, fn):
        with pytest.raises(EvenSwitchCount):
            fn(4, 1)

    def test_even_rejected_hetero(self):
        with pytest.raises(EvenSwitchCount):
            predicted_alpha_hetero([1, 1])


class TestMaxConnect:
    def test_small(self):
        out = generate_max_connect([1, 1, 1])
        assert out.alpha == 4 and out.cost.total == 2 and is_star(out.final_graph)
        assert out.lc_complete_checked

    def test_no_leaves(self):
        out = generate_max_connect([0] * 5)
        assert out.alpha == 3 and out.topology.kind is TopologyKind.STAR

    def test_heterogeneous(self):
        assert generate_max_connect([2, 3, 1, 4, 0]).alpha == 6

    def test_single_switch(self):
        out = generate_max_connect([3])
        assert out.alpha == 4 and out.cost.total == 0

    def test_even_rejected(self):
        with pytest.raises(EvenSwitchCount):
            generate_max_connect([1, 1])

    def test_protocol_shape(self):
        p = max_connect_protocol([1] * 5)
        # clients of Sw3 are removed before Sw3 is measured with k0 = Sw4
        assert [str(s) for s in p] == ["Z(8)", "X(3,4)", "Z(6)", "X(1,2)"]

    def test_trace_bicolorable(self):
        out = generate_max_connect([2] * 7)
        assert all(compute_bicoloring(h) is not None for h in out.trace)

    def test_final_star_center_is_first_switch(self):
        out = generate_max_connect([1] * 7)
        assert out.topology.centers == (0,)

    def test_report(self):
        d = generate_max_connect([2] * 7, check_lc=False).to_dict()
        assert d["alpha"] == 12 and d["cost"] == 9 and d["lc_equivalent_to_complete"] is None


class TestEven:
    def test_reduce_pair(self):
        p, spec = reduce_even_to_odd([1, 1])
        assert spec.leaf_counts == (1,) and [str(s) for s in p] == ["Z(3)", "Z(1)"]

    def test_reduce_length(self):
        p, spec = reduce_even_to_odd([2, 2, 2, 2])
        assert spec.leaf_counts == (2, 2, 2) and len(p) == 3

    def test_composition(self):
        out = generate_even_max_connect([1] * 4)
        assert out.alpha == 4 and out.cost.total == 4

    def test_y_merge(self):
        out = generate_even_max_connect([1] * 6, "y-merge")
        assert out.alpha == 6 and is_star(out.final_graph)

    def test_odd_rejected(self):
        with pytest.raises(OddSwitchCount):
            reduce_even_to_odd([1, 1, 1])

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            reduce_even_to_odd([1, 1], "sideways")


class TestBiStarVariant:
    def test_small(self):
        p, g = generate_bi_star_variant([1, 1, 1])
        assert classify_topology(g).kind is TopologyKind.BI_STAR
        assert p.steps[-1].basis is PauliBasis.Y

    def test_degenerate_without_leaves(self):
        # Y on the middle of a 3-path leaves a single edge
        _, g = generate_bi_star_variant([0, 0, 0])
        assert classify_topology(g).kind is TopologyKind.COMPLETE and len(g) == 2

    def test_m5(self):
        _, g = generate_bi_star_variant([2] * 5)
        t = classify_topology(g)
        assert t.kind is TopologyKind.BI_STAR and sum(t.leaf_counts) + 2 == len(g)

    def test_switch_measurement_count(self):
        for m in (3, 5, 7, 9):
            p, _ = generate_bi_star_variant([1] * m)
            assert sum(1 for s in p if s.target < m) == (m - 1) // 2


class TestExtranet:
    @pytest.mark.parametrize("n1, n2", [(2, 3), (3, 3), (1, 1), (4, 2)])
    def test_bipartite(self, n1, n2):
        _, g = generate_extranet(build_bi_star(n1, n2))
        assert g.num_edges == n1 * n2 and len(g) == n1 + n2
        col = compute_bicoloring(g)
        assert sorted([sum(1 for c in col.values() if c == k) for k in (0, 1)]) == sorted([n1, n2])

    def test_classification(self):
        _, g = generate_extranet(build_bi_star(2, 3))
        t = classify_topology(g)
        assert t.kind is TopologyKind.COMPLETE_BIPARTITE and t.sides == (2, 3)

    def test_not_bi_star(self):
        with pytest.raises(TopologyMismatch):
            generate_extranet(build_star(4))


class TestTabulatedRemovals:
    def test_rows(self):
        assert len(M7_TABLE) == 6
        assert {r.kind for r in M7_TABLE.values()} == {TopologyKind.BI_STAR, TopologyKind.TRI_STAR}

    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("removal", sorted(M7_TABLE))
    def test_kind_and_heavy_count(self, removal, n):
        out = table1_protocol(removal, [n] * 7)
        row = M7_TABLE[removal]
        assert out.topology.kind is row.kind
        assert len(heavy_centers(out.graph, out.topology)) == row.heavy

    def test_tri_star_heavy_center(self):
        out = table1_protocol((1, 2, 3), [2] * 7)
        assert out.topology.centers == (4, 5, 6) and heavy_centers(out.graph) == (4,)

    def test_tri_star_2_3_4(self):
        out = table1_protocol((2, 3, 4), [1] * 7)
        assert out.topology.centers == (0, 5, 6) and heavy_centers(out.graph) == (5,)

    def test_both_heavy(self):
        out = table1_protocol((1, 2, 5), [2] * 7)
        assert heavy_centers(out.graph) == (0, 6)

    def test_mirror_isomorphic(self):
        a = table1_protocol((1, 2, 3), [2] * 7)
        b = table1_protocol((3, 4, 5), [2] * 7)
        assert a.topology.shape == b.topology.shape

    def test_x_ending_gives_star(self):
        out = table1_protocol((1, 3, 5), [1] * 7, ending="X")
        assert out.topology.kind is TopologyKind.STAR

    @pytest.mark.parametrize("bad", [(1, 2), (0, 1, 2), (1, 1, 2), (1, 2, 6)])
    def test_invalid(self, bad):
        with pytest.raises(InvalidRemovalSet):
            table1_protocol(bad)

    def test_wrong_m(self):
        with pytest.raises(InvalidRemovalSet):
            table1_protocol((1, 2, 3), [1] * 5)

    def test_protocol_replays(self):
        out = table1_protocol((1, 3, 4), [1] * 7)
        assert apply_protocol(build_multi_star([1] * 7), out.protocol).graph == out.graph
