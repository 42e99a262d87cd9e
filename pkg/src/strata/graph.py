"""Dependency graph model plus cycle and depth analysis.

Edge direction convention used everywhere in this package: an edge u -> v
means "u depends on (calls/uses) v", so callers sit above callees in a
layered view.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import networkx as nx

CLASS = "class"
PACKAGE = "package"
LEVELS = (CLASS, PACKAGE)

DEFAULT_PACKAGE = "(default)"


class GraphError(ValueError):
    """Invalid graph construction or query."""


def _check_name(name: str) -> str:
    if not name:
        raise GraphError("empty entity name")
    if any(c.isspace() for c in name):
        raise GraphError(f"entity name contains whitespace: {name!r}")
    return name


@dataclass(frozen=True)
class DependencyGraph:
    """Immutable directed dependency graph.

    Nodes are fully qualified class or package names; ``level`` records
    which of the two the graph describes. Node iteration order is always
    lexicographic, independent of construction order.
    """

    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    level: str = PACKAGE
    _out: dict = field(default_factory=dict, repr=False, compare=False)
    _in: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for n in self.nodes:
            self._out.setdefault(n, set())
            self._in.setdefault(n, set())
        for u, v in self.edges:
            self._out[u].add(v)
            self._in[v].add(u)

    @classmethod
    def build(
        cls,
        nodes: Iterable[str],
        edges: Iterable[tuple[str, str]],
        level: str = PACKAGE,
    ) -> "DependencyGraph":
        if level not in LEVELS:
            raise GraphError(f"unknown level: {level!r}")
        node_set = {_check_name(n) for n in nodes}
        edge_set = set()
        for u, v in edges:
            _check_name(u)
            _check_name(v)
            if u == v:
                raise GraphError(f"self-loop: {u}")
            node_set.add(u)
            node_set.add(v)
            edge_set.add((u, v))
        for u, v in edge_set:
            if u not in node_set or v not in node_set:
                raise GraphError(f"edge endpoint not a node: {u}->{v}")
        return cls(tuple(sorted(node_set)), frozenset(edge_set), level)

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, node: str) -> bool:
        return node in self._out

    def out_neighbors(self, node: str) -> frozenset[str]:
        if node not in self._out:
            raise GraphError(f"unknown node: {node}")
        return frozenset(self._out[node])

    def in_neighbors(self, node: str) -> frozenset[str]:
        if node not in self._in:
            raise GraphError(f"unknown node: {node}")
        return frozenset(self._in[node])

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self.edges)

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.edges)
        return g


@dataclass(frozen=True)
class CycleReport:
    """Nontrivial strongly connected components of a graph.

    ``cross_layer_cycles`` is only meaningful when a layering was supplied
    to :func:`detect_cycles`; it counts SCCs whose members occupy at least
    two distinct layers.
    """

    scc_count: int
    cycles: tuple[frozenset[str], ...]
    cross_layer_cycles: int = 0


def detect_cycles(graph: DependencyGraph, layering=None) -> CycleReport:
    """Find all cyclic dependency groups (SCCs with >= 2 nodes)."""
    sccs = [
        frozenset(c)
        for c in nx.strongly_connected_components(graph.to_networkx())
        if len(c) >= 2
    ]
    sccs.sort(key=lambda c: min(c))
    cross = 0
    if layering is not None:
        layer_of = layering.layer_of
        for scc in sccs:
            if len({layer_of[n] for n in scc}) >= 2:
                cross += 1
    return CycleReport(len(sccs), tuple(sccs), cross)


def dependency_depth(graph: DependencyGraph) -> int:
    """Length (in nodes) of the longest dependency chain.

    Computed on the condensation DAG with each SCC contributing its node
    count, so the measure stays well defined on cyclic graphs. A single
    isolated node has depth 1.
    """
    if len(graph) == 0:
        raise GraphError("empty graph has no dependency depth")
    cond = nx.condensation(graph.to_networkx())
    best: dict[int, int] = {}
    for c in reversed(list(nx.topological_sort(cond))):
        size = len(cond.nodes[c]["members"])
        succ = [best[s] for s in cond.successors(c)]
        best[c] = size + (max(succ) if succ else 0)
    return max(best.values())


def aggregate_to_packages(class_graph: DependencyGraph) -> DependencyGraph:
    """Collapse a class-level graph to its package-level graph.

    The package of a class is its name minus the last dot segment;
    classes without a dot fall into the ``(default)`` package.
    Intra-package edges are dropped.
    """
    if class_graph.level != CLASS:
        raise GraphError("aggregate_to_packages expects a class-level graph")

    def pkg(name: str) -> str:
        head, _, _ = name.rpartition(".")
        return head or DEFAULT_PACKAGE

    nodes = {pkg(n) for n in class_graph.nodes}
    edges = set()
    for u, v in class_graph.edges:
        pu, pv = pkg(u), pkg(v)
        if pu != pv:
            edges.add((pu, pv))
    return DependencyGraph.build(nodes, edges, level=PACKAGE)
