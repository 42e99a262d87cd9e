"""Layered architecture structure and the weighted violation objective."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import DependencyGraph, GraphError

# Edge classes relative to a layering (layer index 0 = top).
BACK = "back"          # points to a strictly higher layer
SKIP = "skip"          # points down, skipping at least one layer
ADJACENT = "adjacent"  # points to the layer immediately below
INTRA = "intra"        # stays inside its layer


class LayeringError(ValueError):
    """Invalid layering or layering/graph mismatch."""


@dataclass(frozen=True)
class Layering:
    """Ordered partition of nodes into layers, index 0 = top layer."""

    layers: tuple[frozenset[str], ...]
    layer_of: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        seen: dict[str, int] = self.layer_of
        for i, layer in enumerate(self.layers):
            if not layer:
                raise LayeringError(f"empty layer at index {i}")
            for n in layer:
                if n in seen:
                    raise LayeringError(f"node in multiple layers: {n}")
                seen[n] = i

    @classmethod
    def build(cls, layers: Sequence[Iterable[str]]) -> "Layering":
        return cls(tuple(frozenset(l) for l in layers))

    @property
    def node_set(self) -> frozenset[str]:
        return frozenset(self.layer_of)

    def __len__(self) -> int:
        return len(self.layers)

    def sorted_layers(self) -> list[list[str]]:
        return [sorted(l) for l in self.layers]

    def check_covers(self, graph: DependencyGraph) -> None:
        covered = self.node_set
        nodes = frozenset(graph.nodes)
        if covered != nodes:
            missing = sorted(nodes - covered)
            extra = sorted(covered - nodes)
            raise LayeringError(
                f"layering does not cover graph: missing={missing} extra={extra}"
            )


def classify_edge(layering: Layering, u: str, v: str) -> str:
    """Class of edge u->v under the layering (back/skip/adjacent/intra)."""
    a = layering.layer_of[u]
    b = layering.layer_of[v]
    if b < a:
        return BACK
    if b == a:
        return INTRA
    if b == a + 1:
        return ADJACENT
    return SKIP


def count_back_skip(layering: Layering, graph: DependencyGraph) -> tuple[int, int]:
    back = skip = 0
    for u, v in graph.edges:
        kind = classify_edge(layering, u, v)
        if kind == BACK:
            back += 1
        elif kind == SKIP:
            skip += 1
    return back, skip


def violation_score(
    layering: Layering,
    graph: DependencyGraph,
    alpha: float = 1.0,
    beta: float = 1.0,
) -> float:
    """Weighted violation count: alpha * back_calls + beta * skip_calls.

    Intra-layer edges and edges into the layer immediately below are free.
    """
    layering.check_covers(graph)
    back, skip = count_back_skip(layering, graph)
    return alpha * back + beta * skip
