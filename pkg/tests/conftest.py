import random

import pytest

from strata import DependencyGraph


def random_graph(rng: random.Random, n: int, p: float, acyclic: bool = False) -> DependencyGraph:
    """Erdos-Renyi style directed graph on n nodes; forward edges only
    when acyclic."""
    nodes = [f"n{i:02d}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            if i == j or (acyclic and i > j):
                continue
            if rng.random() < p:
                edges.append((nodes[i], nodes[j]))
    return DependencyGraph.build(nodes, edges)


def random_layering_of(rng: random.Random, nodes, max_layers: int = 5):
    """Random ordered partition of the node set into 1..max_layers layers."""
    nodes = list(nodes)
    rng.shuffle(nodes)
    k = rng.randint(1, min(max_layers, len(nodes)))
    cuts = sorted(rng.sample(range(1, len(nodes)), k - 1)) if k > 1 else []
    layers = []
    start = 0
    for cut in cuts + [len(nodes)]:
        layers.append(nodes[start:cut])
        start = cut
    return layers


@pytest.fixture
def chain_graph():
    return DependencyGraph.build([], [("a", "b"), ("b", "c")])
