"""Evolving-version analysis: incremental layering, MoJo, stability."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from scipy.optimize import linear_sum_assignment

from .ego import _Structure, build_ego_layer, concat_bottom_aligned
from .graph import DependencyGraph, GraphError
from .layering import Layering
from .metrics import TierDistribution, tier_distribution
from .recovery import RecoveryConfig, optimize_layers, recover


@dataclass(frozen=True)
class VersionSeries:
    """Ordered (label, graph) pairs for consecutive software versions."""

    versions: tuple[tuple[str, DependencyGraph], ...]

    def __post_init__(self):
        labels = [l for l, _ in self.versions]
        if not labels:
            raise ValueError("a version series needs at least one version")
        if len(set(labels)) != len(labels):
            raise ValueError("version labels must be unique")


@dataclass(frozen=True)
class EvolutionRow:
    label: str
    old_count: int
    new_count: int
    total_count: int
    changed_pct: float
    mojo_ops: Optional[int]
    mojofm: Optional[float]
    impact_pct: float
    stability_pct: float
    traditional: Optional[TierDistribution]
    incremental: Optional[TierDistribution]


def incremental_update(
    prev: Layering,
    graph: DependencyGraph,
    config: RecoveryConfig = RecoveryConfig(),
) -> Layering:
    """Carry a recovered architecture forward to a new graph version.

    Nodes gone from the new graph are dropped (empty layers removed),
    surviving nodes keep their layers, and new nodes are placed by the
    same local rule the merge stage uses: anchored below a placed caller
    or above a placed callee, then propagating their own ego layers.
    New nodes with no placed anchor seed fresh component structures,
    concatenated bottom-aligned. The result is re-optimized.
    """
    if len(graph) == 0:
        raise GraphError("empty graph")
    current = frozenset(graph.nodes)
    base = _Structure()
    base.layers = [set(l) & current for l in prev.layers]
    base.layers = [l for l in base.layers if l]

    placed: dict[str, _Structure] = {}
    structures: list[_Structure] = []
    if base.layers:
        structures.append(base)
        for layer in base.layers:
            for n in layer:
                placed[n] = base

    new_nodes = sorted(current - set(placed))
    random.Random(config.seed).shuffle(new_nodes)
    ego_layers = {n: build_ego_layer(graph, n) for n in graph.nodes}

    queue = list(new_nodes)
    while queue:
        progress = False
        deferred = []
        for node in queue:
            if node not in placed:
                anchor = _find_anchor(ego_layers[node], placed)
                if anchor is None:
                    deferred.append(node)
                    continue
                home, index = anchor
                home.insert(node, index, placed)
            home = placed[node]
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
        if queue and not progress:
            seed = queue.pop(0)
            struct = _Structure()
            struct.seed(ego_layers[seed], placed)
            structures.append(struct)

    merged = concat_bottom_aligned([s.layers for s in structures])
    return optimize_layers(merged, graph, config)


def _find_anchor(ego_layer, placed):
    """Placement slot for an unplaced node: just below its lowest placed
    caller, else just above its highest placed callee (the choices that
    avoid introducing back-calls)."""
    best = None
    for nbr in sorted(ego_layer.top):
        home = placed.get(nbr)
        if home is not None:
            i = home.index_of(nbr)
            if best is None or i + 1 > best[1]:
                best = (home, i + 1)
    if best is not None:
        return best
    for nbr in sorted(ego_layer.bottom):
        home = placed.get(nbr)
        if home is not None:
            i = home.index_of(nbr)
            if best is None or i - 1 < best[1]:
                best = (home, i - 1)
    return best


# ---------------------------------------------------------------------------
# MoJo distance (move + join operations between partitions)
# ---------------------------------------------------------------------------

def _restrict(groups: Iterable[Iterable[str]], keep: frozenset[str]) -> list[frozenset[str]]:
    out = [frozenset(g) & keep for g in groups]
    return [g for g in out if g]


def _common_elements(source, target) -> frozenset[str]:
    src = frozenset().union(*[frozenset(g) for g in source]) if source else frozenset()
    tgt = frozenset().union(*[frozenset(g) for g in target]) if target else frozenset()
    return src & tgt


def mojo_distance(source: Sequence[Iterable[str]], target: Sequence[Iterable[str]]) -> int:
    """Minimum number of move and join operations turning one partition
    into the other, computed over their common elements.

    A move relocates one element between groups (possibly creating a
    group); a join fuses two groups. The optimum is found by assigning
    source groups to target groups so as to maximize retained elements
    plus the number of distinct target groups claimed; moves are then the
    unretained elements and joins collapse co-assigned groups.
    """
    common = _common_elements(source, target)
    if not common:
        raise ValueError("partitions share no elements")
    src = _restrict(source, common)
    tgt = _restrict(target, common)
    n = len(common)
    l, m = len(src), len(tgt)

    w = [[len(a & g) for g in tgt] for a in src]
    best_w = [max(row) for row in w]
    # Columns 0..m-1: claim target group j exclusively (worth overlap+1);
    # columns m..m+l-1: unmatched fallbacks (worth the best overlap).
    cost = [[w[i][j] + 1 for j in range(m)] + [best_w[i]] * l for i in range(l)]
    rows, cols = linear_sum_assignment(cost, maximize=True)
    value = sum(cost[r][c] for r, c in zip(rows, cols))
    return n + l - value


def mojo_distance_brute(source, target, limit: int = 6) -> int:
    """Breadth-first search over partition states; oracle for small n."""
    common = _common_elements(source, target)
    if not common:
        raise ValueError("partitions share no elements")
    if len(common) > limit:
        raise ValueError(f"brute force limited to {limit} elements")

    def canon(groups):
        return frozenset(frozenset(g) for g in groups)

    start = canon(_restrict(source, common))
    goal = canon(_restrict(target, common))
    seen = {start: 0}
    frontier = deque([start])
    while frontier:
        state = frontier.popleft()
        dist = seen[state]
        if state == goal:
            return dist
        groups = list(state)
        nxt = []
        for gi, g in enumerate(groups):
            for x in g:
                remainder = g - {x}
                others = [h for j, h in enumerate(groups) if j != gi]
                # move x into each other group, or into a new group
                targets = others + ([frozenset()] if remainder else [])
                for t in targets:
                    rest = [h for h in others if h != t] if t else others
                    moved = rest + [t | {x}]
                    if remainder:
                        moved.append(remainder)
                    nxt.append(canon(moved))
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                joined = [h for k, h in enumerate(groups) if k not in (i, j)]
                joined.append(groups[i] | groups[j])
                nxt.append(canon(joined))
        for state2 in nxt:
            if state2 not in seen:
                seen[state2] = dist + 1
                frontier.append(state2)
    raise RuntimeError("target partition unreachable")  # cannot happen


def max_mojo_distance(target: Sequence[Iterable[str]], brute_limit: int = 6) -> int:
    """Worst-case move+join distance any partition can have to ``target``.

    Brute-forced over every source partition for small element counts.
    Beyond that the worst case is n minus the smallest achievable
    group-to-cluster matching, which depends only on the sorted target
    group sizes: an adversarial source spreads elements so that taking
    the k largest groups aside, the remaining elements fit into as few
    clusters as possible (each holding at most one element per remaining
    group). The closed form was validated against the brute-force search
    for every target shape with up to 8 elements.
    """
    tgt = [frozenset(g) for g in target if g]
    elements = sorted(frozenset().union(*tgt))
    n = len(elements)
    if n <= brute_limit:
        best = 0
        for src in _iter_partitions(elements):
            best = max(best, mojo_distance(src, tgt))
        return best

    sizes = sorted((len(g) for g in tgt), reverse=True)
    m = len(sizes)
    min_matching = m
    for k in range(m):
        rest = sizes[k:]
        clusters = max(-(-sum(rest) // (m - k)), rest[0])
        min_matching = min(min_matching, k + clusters)
    return n - min_matching


def _iter_partitions(elements: list[str]):
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for part in _iter_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] | {first}] + part[i + 1:]
        yield part + [frozenset([first])]


def mojofm(source: Sequence[Iterable[str]], target: Sequence[Iterable[str]]) -> float:
    """MoJo effectiveness percentage: 100 means identical partitions."""
    common = _common_elements(source, target)
    if not common:
        raise ValueError("partitions share no elements")
    tgt = _restrict(target, common)
    worst = max_mojo_distance(tgt)
    if worst == 0:
        return 100.0
    return 100.0 * (1.0 - mojo_distance(source, target) / worst)


# ---------------------------------------------------------------------------
# Stability (depth-discounted change impact)
# ---------------------------------------------------------------------------

def node_impact(graph: DependencyGraph, node: str) -> float:
    """Average depth-discounted impact a change to ``node`` propagates.

    Sums 1/d over every node reachable from ``node`` (BFS depth d starting
    at 1), normalized by the out-degree and clamped to 1 so the average
    over the graph stays a fraction of the system.
    """
    k = len(graph.out_neighbors(node))
    if k == 0:
        return 0.0
    depth = {node: 0}
    frontier = deque([node])
    total = 0.0
    while frontier:
        u = frontier.popleft()
        for v in graph.out_neighbors(u):
            if v not in depth:
                depth[v] = depth[u] + 1
                total += 1.0 / depth[v]
                frontier.append(v)
    return min(1.0, total / k)


def stability(graph: DependencyGraph) -> tuple[float, float]:
    """(impact_pct, stability_pct) of a graph; the two always sum to 100."""
    if len(graph) == 0:
        raise GraphError("empty graph")
    avg = sum(node_impact(graph, n) for n in graph.nodes) / len(graph)
    impact_pct = 100.0 * avg
    return impact_pct, 100.0 - impact_pct


# ---------------------------------------------------------------------------
# Per-version evolution report
# ---------------------------------------------------------------------------

TRADITIONAL = "traditional"
INCREMENTAL = "incremental"
BOTH = "both"


def evolve_report(
    series: VersionSeries,
    config: RecoveryConfig = RecoveryConfig(),
    mode: str = BOTH,
    reseed_threshold_pct: float = 90.0,
) -> list[EvolutionRow]:
    """Recover every version and report distribution, MoJo, stability.

    Traditional mode recovers each version from scratch; incremental mode
    chains :func:`incremental_update`, re-seeding from scratch when the
    changed-package percentage exceeds the re-seed threshold or no nodes
    survive from the previous version. MoJo columns compare consecutive
    layerings (the incremental chain when it runs, else the traditional
    one) as order-blind partitions over common nodes; they are ``None``
    for the first version and when no nodes are shared.
    """
    if mode not in (TRADITIONAL, INCREMENTAL, BOTH):
        raise ValueError(f"unknown mode: {mode}")
    run_trad = mode in (TRADITIONAL, BOTH)
    run_inc = mode in (INCREMENTAL, BOTH)

    rows: list[EvolutionRow] = []
    prev_nodes: Optional[frozenset[str]] = None
    prev_arch: Optional[Layering] = None  # layering used for MoJo columns
    inc_arch: Optional[Layering] = None

    for label, graph in series.versions:
        nodes = frozenset(graph.nodes)
        if prev_nodes is None:
            old = len(nodes)
            new = 0
        else:
            old = len(nodes & prev_nodes)
            new = len(nodes - prev_nodes)
        total = len(nodes)
        changed_pct = 100.0 * new / total

        trad_arch = recover(graph, config).architecture if run_trad else None
        if run_inc:
            if inc_arch is None or old == 0 or changed_pct > reseed_threshold_pct:
                inc_arch = recover(graph, config).architecture
            else:
                inc_arch = incremental_update(inc_arch, graph, config)

        arch = inc_arch if run_inc else trad_arch
        mojo_ops = fm = None
        if prev_arch is not None and prev_nodes is not None and old > 0:
            mojo_ops = mojo_distance(prev_arch.layers, arch.layers)
            fm = mojofm(prev_arch.layers, arch.layers)

        impact_pct, stability_pct = stability(graph)
        rows.append(
            EvolutionRow(
                label=label,
                old_count=old,
                new_count=new,
                total_count=total,
                changed_pct=changed_pct,
                mojo_ops=mojo_ops,
                mojofm=fm,
                impact_pct=impact_pct,
                stability_pct=stability_pct,
                traditional=tier_distribution(trad_arch) if run_trad else None,
                incremental=tier_distribution(inc_arch) if run_inc else None,
            )
        )
        prev_nodes = nodes
        prev_arch = arch
    return rows
