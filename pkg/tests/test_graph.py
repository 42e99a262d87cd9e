import random

import pytest
from hypothesis import given, strategies as st

from strata import (
    DependencyGraph,
    GraphError,
    Layering,
    aggregate_to_packages,
    dependency_depth,
    detect_cycles,
)
from strata.formats import ParseError, parse_edge_list

from conftest import random_graph


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphError, match="self-loop: a"):
            DependencyGraph.build([], [("a", "a")])

    def test_rejects_whitespace_names(self):
        with pytest.raises(GraphError):
            DependencyGraph.build(["a b"], [])

    def test_node_order_is_lexicographic(self):
        g = DependencyGraph.build(["z", "a", "m"], [])
        assert g.nodes == ("a", "m", "z")

    def test_edges_deduplicate(self):
        g = parse_edge_list("a\tb\na\tb")
        assert len(g.edges) == 1

    def test_isolated_nodes_are_retained(self):
        g = DependencyGraph.build(["lonely", "a", "b"], [("a", "b")])
        assert "lonely" in g

    def test_order_insensitive_parsing(self):
        lines = ["a\tb", "b\tc", "c\td", "a\td"]
        g1 = parse_edge_list("\n".join(lines))
        g2 = parse_edge_list("\n".join(reversed(lines)))
        assert g1.nodes == g2.nodes and g1.edges == g2.edges


class TestDetectCycles:
    def test_dag_has_none(self, chain_graph):
        assert detect_cycles(chain_graph).scc_count == 0

    def test_two_cycle(self):
        g = DependencyGraph.build([], [("a", "b"), ("b", "a")])
        report = detect_cycles(g)
        assert report.scc_count == 1
        assert report.cycles == (frozenset({"a", "b"}),)

    def test_cross_layer_counting(self):
        g = DependencyGraph.build([], [("a", "b"), ("b", "c"), ("c", "a")])
        layering = Layering.build([["a"], ["b", "c"]])
        assert detect_cycles(g, layering).cross_layer_cycles == 1

    def test_cycle_sets_are_disjoint(self):
        rng = random.Random(3)
        for i in range(30):
            g = random_graph(rng, rng.randint(2, 20), 0.25)
            report = detect_cycles(g)
            all_nodes = [n for c in report.cycles for n in c]
            assert len(all_nodes) == len(set(all_nodes))
            assert all(len(c) >= 2 for c in report.cycles)


class TestDependencyDepth:
    def test_single_node(self):
        assert dependency_depth(DependencyGraph.build(["x"], [])) == 1

    def test_chain_of_four(self):
        g = DependencyGraph.build([], [("a", "b"), ("b", "c"), ("c", "d")])
        assert dependency_depth(g) == 4

    def test_scc_contributes_its_size(self):
        g = DependencyGraph.build([], [("a", "b"), ("b", "a"), ("b", "c")])
        assert dependency_depth(g) == 3

    def test_empty_graph_raises(self):
        with pytest.raises(GraphError):
            dependency_depth(DependencyGraph.build([], []))

    @given(st.integers(min_value=0, max_value=400))
    def test_bounds(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(1, 15), 0.3)
        d = dependency_depth(g)
        assert 1 <= d <= len(g)


class TestAggregateToPackages:
    def test_intra_package_collapse(self):
        g = DependencyGraph.build([], [("p.A", "p.B")], level="class")
        pg = aggregate_to_packages(g)
        assert pg.nodes == ("p",) and not pg.edges

    def test_cross_package_dedup(self):
        g = DependencyGraph.build(
            [], [("p.A", "q.B"), ("p.C", "q.D")], level="class"
        )
        assert aggregate_to_packages(g).sorted_edges() == [("p", "q")]

    def test_cycles_preserved(self):
        g = DependencyGraph.build(
            [], [("p.A", "q.B"), ("q.C", "p.D")], level="class"
        )
        pg = aggregate_to_packages(g)
        assert detect_cycles(pg).scc_count == 1

    def test_default_package(self):
        g = DependencyGraph.build([], [("Bare", "p.A")], level="class")
        assert "(default)" in aggregate_to_packages(g).nodes

    def test_result_is_package_level_without_self_loops(self):
        rng = random.Random(11)
        pkgs = ["pa", "pb", "pc"]
        edges = set()
        for _ in range(40):
            u = f"{rng.choice(pkgs)}.C{rng.randint(0, 5)}"
            v = f"{rng.choice(pkgs)}.C{rng.randint(0, 5)}"
            if u != v:
                edges.add((u, v))
        pg = aggregate_to_packages(
            DependencyGraph.build([], edges, level="class")
        )
        assert pg.level == "package"
        assert all(u != v for u, v in pg.edges)
