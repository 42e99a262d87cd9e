"""Per-node ego layers and their merging into one layered structure.

Each node of the dependency graph yields a three-slot ego layer: the
nodes calling it (top), the node itself (middle), and the nodes it calls
(bottom). Merging walks the nodes in a given order and grows a single
layered structure out of these local views.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import DependencyGraph, GraphError
from .layering import Layering


@dataclass(frozen=True)
class EgoLayer:
    """Local three-layer view around one node.

    top holds the in-neighbors (callers), bottom the out-neighbors
    (callees). The two may intersect when dependencies are mutual.
    """

    ego: str
    top: frozenset[str]
    bottom: frozenset[str]


def build_ego_layer(graph: DependencyGraph, ego: str) -> EgoLayer:
    if ego not in graph:
        raise GraphError(f"unknown node: {ego}")
    return EgoLayer(ego, graph.in_neighbors(ego), graph.out_neighbors(ego))


def create_ego_layers(graph: DependencyGraph) -> dict[str, EgoLayer]:
    """One ego layer per graph node, keyed by the ego."""
    if len(graph) == 0:
        raise GraphError("empty graph")
    return {n: build_ego_layer(graph, n) for n in graph.nodes}


class _Structure:
    """One growing component structure: a list of layers, top first.

    ``max_depth`` caps the layer count; once reached, insertions that
    would create a new boundary layer fall into the existing boundary
    layer instead.
    """

    def __init__(self, max_depth: int | None = None):
        self.layers: list[set[str]] = []
        self.max_depth = max_depth

    def seed(self, ego_layer: EgoLayer, placed: dict) -> None:
        slots = [set(ego_layer.top), {ego_layer.ego}, set(ego_layer.bottom)]
        for slot in slots:
            fresh = {n for n in slot if n not in placed}
            if fresh:
                for n in fresh:
                    placed[n] = self
                self.layers.append(fresh)

    def index_of(self, node: str) -> int:
        for i, layer in enumerate(self.layers):
            if node in layer:
                return i
        raise KeyError(node)

    def insert(self, node: str, index: int, placed: dict) -> None:
        can_grow = self.max_depth is None or len(self.layers) < self.max_depth
        if index < 0:
            if can_grow:
                self.layers.insert(0, set())
            index = 0
        elif index >= len(self.layers):
            if can_grow:
                self.layers.append(set())
            index = len(self.layers) - 1
        self.layers[index].add(node)
        placed[node] = self


def merge_ego_layers(
    ego_layers: dict[str, EgoLayer],
    graph: DependencyGraph,
    order: Sequence[str],
) -> Layering:
    """Combine per-node ego layers into a single layered structure.

    The first node of ``order`` seeds the structure with its ego layer.
    Remaining nodes are visited round-robin: a node already placed at
    layer i pushes its unplaced callers into layer i-1 and its unplaced
    callees into layer i+1 (new boundary layers are created when i is at
    an edge of the structure); a node not yet placed is deferred. First
    placement always wins; placed nodes are never moved. When a full pass
    defers every remaining node, the next node in ``order`` seeds a fresh
    component structure. Components are finally concatenated aligned at
    their bottom layers.

    The layer count of each component is capped at the graph's dependency
    depth (the longest chain bounds the meaningful layer count; unchecked
    boundary growth can overshoot it for some processing orders).
    """
    if sorted(order) != list(graph.nodes):
        raise GraphError("order is not a permutation of the graph nodes")

    from .graph import dependency_depth

    cap = dependency_depth(graph)
    placed: dict[str, _Structure] = {}
    structures: list[_Structure] = []
    queue = list(order)

    while queue:
        seed = queue.pop(0)
        struct = _Structure(max_depth=cap)
        struct.seed(ego_layers[seed], placed)
        structures.append(struct)

        progress = True
        while queue and progress:
            progress = False
            deferred = []
            for node in queue:
                home = placed.get(node)
                if home is None:
                    deferred.append(node)
                    continue
                i = home.index_of(node)
                el = ego_layers[node]
                for nbr in sorted(el.top):
                    if nbr not in placed:
                        home.insert(nbr, i - 1, placed)
                        i = home.index_of(node)
                for nbr in sorted(el.bottom):
                    if nbr not in placed:
                        home.insert(nbr, i + 1, placed)
                progress = True
            queue = deferred

    return concat_bottom_aligned([s.layers for s in structures])


def concat_bottom_aligned(structures: list[list[set[str]]]) -> Layering:
    """Union component structures layer-by-layer, bottoms aligned."""
    depth = max(len(s) for s in structures)
    final: list[set[str]] = [set() for _ in range(depth)]
    for s in structures:
        offset = depth - len(s)
        for j, layer in enumerate(s):
            final[offset + j] |= layer
    return Layering.build([l for l in final if l])
