import random

import pytest
from hypothesis import given, settings, strategies as st

from strata import (
    DependencyGraph,
    GraphError,
    build_ego_layer,
    create_ego_layers,
    dependency_depth,
    merge_ego_layers,
)

from conftest import random_graph


class TestBuildEgoLayer:
    def test_middle_of_chain(self, chain_graph):
        el = build_ego_layer(chain_graph, "b")
        assert el.ego == "b"
        assert el.top == frozenset({"a"})
        assert el.bottom == frozenset({"c"})

    def test_isolated_node(self):
        g = DependencyGraph.build(["x"], [])
        el = build_ego_layer(g, "x")
        assert el.top == el.bottom == frozenset()

    def test_mutual_dependency_appears_in_both_slots(self):
        g = DependencyGraph.build([], [("a", "b"), ("b", "a")])
        el = build_ego_layer(g, "a")
        assert el.top == frozenset({"b"})
        assert el.bottom == frozenset({"b"})

    def test_unknown_node(self, chain_graph):
        with pytest.raises(GraphError, match="unknown node"):
            build_ego_layer(chain_graph, "zzz")


class TestCreateEgoLayers:
    def test_one_per_node(self, chain_graph):
        layers = create_ego_layers(chain_graph)
        assert set(layers) == {"a", "b", "c"}
        assert all(layers[n].ego == n for n in layers)

    def test_empty_graph_raises(self):
        with pytest.raises(GraphError):
            create_ego_layers(DependencyGraph.build([], []))

    def test_degrees_match_graph(self):
        rng = random.Random(7)
        g = random_graph(rng, 12, 0.3)
        for n, el in create_ego_layers(g).items():
            assert el.top == g.in_neighbors(n)
            assert el.bottom == g.out_neighbors(n)


def merge(graph, order=None):
    order = list(graph.nodes) if order is None else order
    return merge_ego_layers(create_ego_layers(graph), graph, order)


class TestMergeEgoLayers:
    def test_chain_is_exact(self, chain_graph):
        arch = merge(chain_graph)
        assert arch.sorted_layers() == [["a"], ["b"], ["c"]]

    def test_long_chains_are_exact_for_any_order(self):
        rng = random.Random(0)
        for k in (5, 9, 14):
            nodes = [f"n{i:02d}" for i in range(k)]
            g = DependencyGraph.build(
                [], [(nodes[i], nodes[i + 1]) for i in range(k - 1)]
            )
            order = list(g.nodes)
            rng.shuffle(order)
            arch = merge(g, order)
            assert arch.sorted_layers() == [[n] for n in nodes]

    def test_seven_node_sample(self):
        edges = [
            ("n7", "n5"), ("n7", "n6"), ("n5", "n4"), ("n6", "n4"),
            ("n4", "n3"), ("n3", "n1"), ("n3", "n2"),
        ]
        g = DependencyGraph.build([], edges)
        arch = merge(g)
        assert arch.sorted_layers() == [
            ["n7"], ["n5", "n6"], ["n4"], ["n3"], ["n1", "n2"]
        ]

    def test_isolated_nodes_land_in_one_layer(self):
        g = DependencyGraph.build(["x", "y"], [])
        arch = merge(g)
        assert arch.sorted_layers() == [["x", "y"]]

    def test_order_must_be_permutation(self, chain_graph):
        with pytest.raises(GraphError):
            merge(chain_graph, ["a", "b"])

    @settings(deadline=None)
    @given(st.integers(min_value=0, max_value=150))
    def test_partition_and_depth_invariants(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(1, 12), 0.3)
        order = list(g.nodes)
        rng.shuffle(order)
        arch = merge(g, order)
        assert arch.node_set == frozenset(g.nodes)
        assert sum(len(l) for l in arch.layers) == len(g)
        assert 1 <= len(arch) <= dependency_depth(g)

    def test_disconnected_components_bottom_aligned(self):
        g = DependencyGraph.build(
            [], [("a", "b"), ("b", "c"), ("x", "y")]
        )
        arch = merge(g)
        # the two-layer component shares its bottom with layer "c"
        assert arch.layer_of["y"] == arch.layer_of["c"]
        assert arch.layer_of["x"] == arch.layer_of["b"]
