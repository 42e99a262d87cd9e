"""File formats: edge lists, JSON graphs, layering files, DOT export."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .graph import DependencyGraph, GraphError, LEVELS, PACKAGE
from .layering import BACK, SKIP, Layering, LayeringError, classify_edge


class ParseError(ValueError):
    """Malformed input file."""


# ---------------------------------------------------------------------------
# Edge-list format: tab-separated `from<TAB>to` lines, `#` comments,
# optional `%level class|package` header.
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> DependencyGraph:
    level = PACKAGE
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("%level"):
            value = line[len("%level"):].strip()
            if value not in LEVELS:
                raise ParseError(f"line {lineno}: unknown level: {value!r}")
            level = value
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not all(fields):
            raise ParseError(f"line {lineno}: expected `from<TAB>to`, got {raw!r}")
        if fields[0] == fields[1]:
            raise ParseError(f"line {lineno}: self-loop: {fields[0]}")
        edges.append((fields[0], fields[1]))
    try:
        return DependencyGraph.build((), edges, level=level)
    except GraphError as exc:
        raise ParseError(str(exc))


def to_edge_list(graph: DependencyGraph) -> str:
    lines = [f"%level {graph.level}"]
    lines += [f"{u}\t{v}" for u, v in graph.sorted_edges()]
    covered = {n for e in graph.edges for n in e}
    for n in graph.nodes:
        if n not in covered:
            lines.append(f"# isolated: {n}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON graph format: {level, nodes: [{name}], edges: [{from, to}]}
# ---------------------------------------------------------------------------

def parse_graph_json(text: str) -> DependencyGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}")
    level = doc.get("level", PACKAGE)
    if level not in LEVELS:
        raise ParseError(f"unknown level: {level!r}")
    nodes = [n["name"] for n in doc.get("nodes", [])]
    listed = set(nodes)
    edges = []
    for e in doc.get("edges", []):
        u, v = e["from"], e["to"]
        for endpoint in (u, v):
            if endpoint not in listed:
                raise ParseError(f"unknown node: {endpoint}")
        if u == v:
            raise ParseError(f"self-loop: {u}")
        edges.append((u, v))
    try:
        return DependencyGraph.build(nodes, edges, level=level)
    except GraphError as exc:
        raise ParseError(str(exc))


def to_graph_json(graph: DependencyGraph) -> str:
    doc = {
        "level": graph.level,
        "nodes": [{"name": n} for n in graph.nodes],
        "edges": [{"from": u, "to": v} for u, v in graph.sorted_edges()],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_graph(path: str | Path) -> DependencyGraph:
    """Read a graph file, dispatching on extension (.json vs edge list)."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        return parse_graph_json(text)
    return parse_edge_list(text)


# ---------------------------------------------------------------------------
# Layering files: JSON {layers: [[names...], ...]} top-first, and CSV
# `entity,layer_index` with 1-based indices.
# ---------------------------------------------------------------------------

def parse_layering_json(text: str) -> Layering:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}")
    layers = doc.get("layers")
    if not isinstance(layers, list) or not layers:
        raise ParseError("expected a non-empty `layers` list")
    try:
        return Layering.build(layers)
    except LayeringError as exc:
        raise ParseError(str(exc))


def to_layering_json(arch: Layering) -> str:
    return json.dumps({"layers": arch.sorted_layers()}, indent=2, sort_keys=True) + "\n"


def parse_layering_csv(text: str) -> Layering:
    assignment: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line == "entity,layer_index":
            continue
        fields = line.split(",")
        if len(fields) != 2:
            raise ParseError(f"line {lineno}: expected `entity,layer_index`")
        try:
            index = int(fields[1])
        except ValueError:
            raise ParseError(f"line {lineno}: bad layer index: {fields[1]!r}")
        if index < 1:
            raise ParseError(f"line {lineno}: layer index must be >= 1")
        assignment[fields[0]] = index
    if not assignment:
        raise ParseError("empty layering")
    indices = sorted(set(assignment.values()))
    layers = [[n for n, i in assignment.items() if i == idx] for idx in indices]
    return Layering.build(layers)


def to_layering_csv(arch: Layering) -> str:
    lines = ["entity,layer_index"]
    for i, layer in enumerate(arch.sorted_layers(), start=1):
        lines += [f"{n},{i}" for n in layer]
    return "\n".join(lines) + "\n"


def load_layering(path: str | Path) -> Layering:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".csv":
        return parse_layering_csv(text)
    return parse_layering_json(text)


# ---------------------------------------------------------------------------
# DOT export with rank groups and violation edge coloring
# ---------------------------------------------------------------------------

def _quote(name: str) -> str:
    return '"%s"' % name.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(graph: DependencyGraph, layering: Optional[Layering] = None) -> str:
    """Graphviz rendering; layers become same-rank groups top-first,
    back-call edges are red and skip-call edges blue."""
    lines = ["digraph dependencies {", "  rankdir=TB;"]
    if layering is not None:
        layering.check_covers(graph)
        for i, layer in enumerate(layering.sorted_layers()):
            members = " ".join(_quote(n) + ";" for n in layer)
            lines.append("  { rank=same; %s }" % members)
    else:
        for n in graph.nodes:
            lines.append(f"  {_quote(n)};")
    for u, v in graph.sorted_edges():
        attr = ""
        if layering is not None:
            kind = classify_edge(layering, u, v)
            if kind == BACK:
                attr = " [color=red]"
            elif kind == SKIP:
                attr = " [color=blue]"
        lines.append(f"  {_quote(u)} -> {_quote(v)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Version series manifest: JSON list of {label, graph_path}
# ---------------------------------------------------------------------------

def load_series_manifest(path: str | Path):
    from .evolution import VersionSeries

    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}")
    if not isinstance(doc, list) or not doc:
        raise ParseError("manifest must be a non-empty JSON list")
    versions = []
    for entry in doc:
        try:
            label = entry["label"]
            graph_path = entry["graph_path"]
        except (TypeError, KeyError):
            raise ParseError("manifest entries need `label` and `graph_path`")
        graph_file = (path.parent / graph_path).resolve()
        if not graph_file.exists():
            raise ParseError(f"graph file not found: {graph_path}")
        versions.append((label, load_graph(graph_file)))
    return VersionSeries(tuple(versions))
