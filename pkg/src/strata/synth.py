"""Synthetic layered dependency graphs with known ground truth."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import DependencyGraph, PACKAGE
from .layering import Layering


@dataclass(frozen=True)
class SynthSpec:
    layer_sizes: tuple[int, ...]  # top-first
    p_adjacent: float = 0.4
    p_skip: float = 0.0
    p_back: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not self.layer_sizes or any(s < 1 for s in self.layer_sizes):
            raise ValueError("layer_sizes must be positive integers")
        for p in (self.p_adjacent, self.p_skip, self.p_back):
            if not 0.0 <= p <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")


def generate(spec: SynthSpec) -> tuple[DependencyGraph, Layering]:
    """Sample a layered graph; returns it with its ground-truth layering.

    Every inter-layer node pair draws an edge with the probability of its
    category (adjacent-down, skip, back). Afterwards adjacency is
    repaired so each non-top node has an incoming adjacent edge and each
    non-bottom node an outgoing one, which keeps every node placeable
    relative to its neighbors. With zero skip/back probabilities the
    truth layering commits no violations by construction.
    """
    rng = random.Random(spec.seed)
    layers = [
        [f"l{i + 1}_n{j + 1}" for j in range(size)]
        for i, size in enumerate(spec.layer_sizes)
    ]
    n_layers = len(layers)
    edges: set[tuple[str, str]] = set()

    for i in range(n_layers):
        for j in range(n_layers):
            if i == j:
                continue
            if j == i + 1:
                p = spec.p_adjacent
            elif j > i + 1:
                p = spec.p_skip
            else:
                p = spec.p_back
            if p == 0.0:
                continue
            for u in layers[i]:
                for v in layers[j]:
                    if rng.random() < p:
                        edges.add((u, v))

    # connectivity repair: forced adjacent edges
    for i in range(n_layers - 1):
        upper, lower = layers[i], layers[i + 1]
        for v in lower:
            if not any((u, v) in edges for u in upper):
                edges.add((rng.choice(upper), v))
        for u in upper:
            if not any((u, v) in edges for v in lower):
                edges.add((u, rng.choice(lower)))

    all_nodes = [n for layer in layers for n in layer]
    graph = DependencyGraph.build(all_nodes, edges, level=PACKAGE)
    return graph, Layering.build(layers)
