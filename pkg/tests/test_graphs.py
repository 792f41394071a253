import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterexp import graphs as G


def connected_count_recurrence(n: int) -> int:
    """Independent oracle: c_n = 2^C(n,2) - sum_k C(n-1,k-1) c_k 2^C(n-k,2)."""
    c = {1: 1}
    for m in range(2, n + 1):
        total = 2 ** (m * (m - 1) // 2)
        for k in range(1, m):
            total -= math.comb(m - 1, k - 1) * c[k] * 2 ** ((m - k) * (m - k - 1) // 2)
        c[m] = total
    return c[n]


class TestEnumeration:
    def test_graph_counts(self):
        assert sum(1 for _ in G.enumerate_graphs(2)) == 2
        assert sum(1 for _ in G.enumerate_graphs(3)) == 8
        assert sum(1 for _ in G.enumerate_graphs(4)) == 64

    def test_bitmask_order_and_distinct(self):
        masks = [g.mask for g in G.enumerate_graphs(3)]
        assert masks == sorted(masks) == list(range(8))

    def test_cap_refused(self):
        with pytest.raises(G.CapExceededError, match="cap"):
            list(G.enumerate_graphs(9))
        with pytest.raises(G.CapExceededError):
            G.count_connected(8)

    def test_mask_range_partition(self):
        full = [g.mask for g in G.enumerate_graphs(3)]
        lo = [g.mask for g in G.enumerate_graphs(3, mask_range=(0, 4))]
        hi = [g.mask for g in G.enumerate_graphs(3, mask_range=(4, 8))]
        assert lo + hi == full


class TestConnectivity:
    def test_path_connected(self):
        g = G.LabeledGraph.from_edges(3, [(0, 1), (1, 2)])
        assert G.is_connected(g)

    def test_isolated_vertex(self):
        g = G.LabeledGraph.from_edges(3, [(0, 1)])
        assert not G.is_connected(g)

    def test_two_components(self):
        g = G.LabeledGraph.from_edges(4, [(0, 1), (2, 3)])
        assert not G.is_connected(g)

    def test_connected_counts(self):
        assert G.count_connected(2) == 1
        assert G.count_connected(3) == 4
        assert G.count_connected(4) == 38

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_count_matches_recurrence(self, n):
        assert G.count_connected(n) == connected_count_recurrence(n)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_count_lower_bound(self, n):
        assert G.count_connected(n) >= 2 ** ((n - 1) * (n - 2) // 2)


class TestTrees:
    @pytest.mark.parametrize("n,count", [(2, 1), (3, 3), (4, 16), (5, 125), (6, 1296)])
    def test_cayley_counts_distinct(self, n, count):
        masks = {t.mask for t in G.enumerate_trees(n)}
        assert len(masks) == count

    def test_cap(self):
        with pytest.raises(G.CapExceededError):
            list(G.enumerate_trees(10))

    @given(st.integers(3, 7), st.data())
    @settings(max_examples=60, deadline=None)
    def test_prufer_decode_is_a_tree(self, n, data):
        seq = data.draw(st.tuples(*[st.integers(0, n - 1)] * (n - 2)))
        t = G.prufer_to_tree(n, seq)
        g = t.as_graph()
        assert g.edge_count == n - 1
        assert G.is_connected(g)
        assert sum(t.degrees()) == 2 * n - 2
        assert all(1 <= d <= n - 1 for d in t.degrees())

    def test_degree_formula_examples(self):
        assert G.tree_count_by_degrees((1, 1, 1, 3)) == 1
        assert G.tree_count_by_degrees((1, 1, 2, 2)) == 2
        assert G.tree_count_by_degrees((1, 1, 2)) == 1

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_degree_formula_vs_filter(self, n):
        by_deg = Counter(t.degrees() for t in G.enumerate_trees(n))
        for degs, cnt in by_deg.items():
            assert G.tree_count_by_degrees(degs) == cnt
        # the formula also sums back to the total
        assert sum(by_deg.values()) == n ** (n - 2)

    def test_degree_formula_rejects_bad_sum(self):
        with pytest.raises(ValueError, match="degree sum"):
            G.tree_count_by_degrees((1, 1, 1, 1))
        with pytest.raises(ValueError, match=">= 1"):
            G.tree_count_by_degrees((0, 2, 2, 2))


class TestPenroseClosure:
    def test_two_vertices_fixed(self):
        t = G.RootedTree(2, [(0, 1)])
        assert G.penrose_closure(t).mask == t.mask

    def test_star_adds_same_generation_edge(self):
        t = G.RootedTree(3, [(0, 1), (0, 2)])
        assert G.penrose_closure(t).edges == ((0, 1), (0, 2), (1, 2))

    def test_rooted_path_is_fixed(self):
        t = G.RootedTree(4, [(0, 1), (1, 2), (2, 3)])
        assert G.penrose_closure(t).mask == t.mask

    def test_parent_rule(self):
        # 0 - 1, 0 - 2, 2 - 3: vertex 3 has depth 2, vertex 1 depth 1;
        # parent(3) = 2 > 1, so {1,3} is not added; {1,2} is (same depth)
        t = G.RootedTree(4, [(0, 1), (0, 2), (2, 3)])
        closed = G.penrose_closure(t)
        assert closed.has_edge(1, 2)
        assert not closed.has_edge(1, 3)
        assert not closed.has_edge(0, 3)


class TestKruskal:
    def test_triangle_drops_heaviest(self):
        g = G.LabeledGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
        order = G.EdgeOrder.from_weights(3, {(0, 1): 0.1, (0, 2): 0.5, (1, 2): 0.9})
        t = G.kruskal_tree(g, order)
        assert set(t.edges) == {(0, 1), (0, 2)}

    def test_tree_is_its_own_mst(self):
        t = G.RootedTree(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
        order = G.EdgeOrder.lexicographic(5)
        assert G.kruskal_tree(t.as_graph(), order).mask == t.mask

    def test_disconnected_rejected(self):
        g = G.LabeledGraph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(ValueError, match="disconnected"):
            G.kruskal_tree(g, G.EdgeOrder.lexicographic(4))

    def test_mst_vs_exhaustive_minimum(self):
        # oracle: the spanning tree whose sorted rank sequence is
        # lexicographically smallest
        rng = random.Random(3)
        n = 5
        for _ in range(10):
            w = {p: rng.random() for p in G.vertex_pairs(n)}
            order = G.EdgeOrder.from_weights(n, w)
            mask = rng.randrange(1 << G.num_pairs(n))
            g = G.LabeledGraph(n, mask)
            if not G.is_connected(g):
                continue
            spanning = []
            for sub in G.enumerate_graphs(n):
                if sub.edge_count == n - 1 and sub.mask & ~g.mask == 0 and G.is_connected(sub):
                    spanning.append(sub)
            best = min(spanning, key=lambda s: sorted((order.rank(*e) for e in s.edges), reverse=True))
            assert G.kruskal_tree(g, order).mask == best.mask

    def test_closure_direct_rule(self):
        t = G.RootedTree(3, [(0, 1), (1, 2)])
        order = G.EdgeOrder.from_weights(3, {(0, 1): 0.2, (1, 2): 0.4, (0, 2): 0.9})
        assert G.kruskal_closure(t, order).has_edge(0, 2)
        order = G.EdgeOrder.from_weights(3, {(0, 1): 0.2, (1, 2): 0.9, (0, 2): 0.4})
        assert not G.kruskal_closure(t, order).has_edge(0, 2)

    def test_interval_property_brute_force(self):
        # every connected g lies between its mst and the mst's closure
        rng = random.Random(11)
        n = 5
        w = {p: rng.random() for p in G.vertex_pairs(n)}
        order = G.EdgeOrder.from_weights(n, w)
        for mask in G.connected_masks(n):
            g = G.LabeledGraph(n, mask)
            t = G.kruskal_tree(g, order)
            closed = G.kruskal_closure(t, order)
            assert g.contains(t.as_graph())
            assert closed.contains(g)

    def test_closure_fixed_point(self):
        rng = random.Random(4)
        for n in (4, 5):
            w = {p: rng.random() for p in G.vertex_pairs(n)}
            order = G.EdgeOrder.from_weights(n, w)
            for t in G.enumerate_trees(n):
                closed = G.kruskal_closure(t, order)
                assert G.kruskal_tree(closed, order).mask == t.mask


class TestPartitionSchemes:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_penrose_scheme(self, n):
        assert G.verify_partition_scheme(n, G.penrose_closure)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_kruskal_scheme_random_weights(self, n):
        rng = random.Random(100 + n)
        for _ in range(10):
            w = {p: rng.random() for p in G.vertex_pairs(n)}
            order = G.EdgeOrder.from_weights(n, w)
            assert G.verify_partition_scheme(n, lambda t: G.kruskal_closure(t, order))

    def test_identity_closure_fails_with_counterexample(self):
        rep = G.verify_partition_scheme(3, lambda t: t.as_graph())
        assert not rep
        assert rep.counterexample is not None
        assert rep.counterexample.mask == 0b111  # the triangle is uncovered

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_alternating_sum(self, n):
        assert G.alternating_connected_sum(n) == (-1) ** (n - 1) * math.factorial(n - 1)


class TestSerialization:
    def test_round_trip(self):
        g = G.LabeledGraph.from_edges(4, [(0, 1), (2, 3)])
        assert G.parse_graph(g.to_text()).mask == g.mask

    def test_hex_form(self):
        assert G.parse_graph("3;0x7").mask == 0b111
        assert G.parse_graph("4;").mask == 0

    def test_rejects_bad_edges(self):
        with pytest.raises(ValueError, match="self-loop"):
            G.LabeledGraph.from_edges(3, [(1, 1)])
        with pytest.raises(ValueError, match="duplicate"):
            G.LabeledGraph.from_edges(3, [(0, 1), (1, 0)])
