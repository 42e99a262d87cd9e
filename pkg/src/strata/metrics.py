"""Evaluation of recovered layerings: violations, classification, tiers."""
from __future__ import annotations

from dataclasses import dataclass

from .graph import CycleReport, DependencyGraph, detect_cycles
from .layering import BACK, SKIP, Layering, LayeringError, classify_edge


@dataclass(frozen=True)
class ViolationReport:
    back_calls: int
    skip_calls: int
    back_rate: float   # percentage of all edges
    skip_rate: float
    cyclic: CycleReport
    violating_edges: tuple[tuple[str, str, str], ...]  # (from, to, kind)


@dataclass(frozen=True)
class LayerScore:
    truth_layer: int  # 1-based, as reported
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class ClassificationReport:
    precision: float
    recall: float
    f_score: float
    accuracy: float  # percentage
    per_layer: tuple[LayerScore, ...]
    alignment: dict  # recovered layer index -> truth layer index (0-based)


@dataclass(frozen=True)
class TierDistribution:
    bottom: int
    middle: int
    top: int


def count_violations(arch: Layering, graph: DependencyGraph) -> ViolationReport:
    """Classify every edge against the layering and report violations."""
    arch.check_covers(graph)
    violating = []
    back = skip = 0
    for u, v in graph.sorted_edges():
        kind = classify_edge(arch, u, v)
        if kind == BACK:
            back += 1
            violating.append((u, v, BACK))
        elif kind == SKIP:
            skip += 1
            violating.append((u, v, SKIP))
    n_edges = len(graph.edges)
    back_rate = 100.0 * back / n_edges if n_edges else 0.0
    skip_rate = 100.0 * skip / n_edges if n_edges else 0.0
    return ViolationReport(
        back_calls=back,
        skip_calls=skip,
        back_rate=back_rate,
        skip_rate=skip_rate,
        cyclic=detect_cycles(graph, arch),
        violating_edges=tuple(violating),
    )


def align_layers(predicted: Layering, truth: Layering) -> dict[int, int]:
    """Order-preserving assignment of predicted layers to truth layers.

    Dynamic programming over the two ordered layer sequences maximizes
    total node overlap under a monotone mapping (consecutive predicted
    layers map to non-decreasing truth indices). Ties break toward the
    earlier truth layer. Indices are 0-based.
    """
    if predicted.node_set != truth.node_set:
        raise LayeringError("predicted and truth layerings cover different nodes")
    p, t = len(predicted), len(truth)
    ov = [
        [len(predicted.layers[i] & truth.layers[j]) for j in range(t)]
        for i in range(p)
    ]
    NEG = float("-inf")
    dp = [[NEG] * t for _ in range(p)]
    for j in range(t):
        dp[0][j] = ov[0][j]
    for i in range(1, p):
        best = NEG
        for j in range(t):
            best = max(best, dp[i - 1][j])
            dp[i][j] = ov[i][j] + best

    mapping: dict[int, int] = {}
    j = max(range(t), key=lambda k: (dp[p - 1][k], -k))
    mapping[p - 1] = j
    for i in range(p - 2, -1, -1):
        limit = mapping[i + 1]
        j = max(range(limit + 1), key=lambda k: (dp[i][k], -k))
        mapping[i] = j
    return mapping


def classification_metrics(predicted: Layering, truth: Layering) -> ClassificationReport:
    """Node-level precision/recall/F1/accuracy of a recovered layering.

    Each node's predicted label is the truth layer its recovered layer is
    aligned to; top-level precision and recall are macro-averaged over
    truth layers, and the F-score is the harmonic mean of that pair.
    """
    alignment = align_layers(predicted, truth)
    pred_label = {}
    for i, layer in enumerate(predicted.layers):
        for n in layer:
            pred_label[n] = alignment[i]
    true_label = truth.layer_of

    per_layer = []
    correct = 0
    for j, layer in enumerate(truth.layers):
        support = len(layer)
        tp = sum(1 for n in layer if pred_label[n] == j)
        predicted_count = sum(1 for n in pred_label if pred_label[n] == j)
        prec = tp / predicted_count if predicted_count else 0.0
        rec = tp / support
        f1 = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
        per_layer.append(LayerScore(j + 1, prec, rec, f1, support))
        correct += tp

    precision = sum(s.precision for s in per_layer) / len(per_layer)
    recall = sum(s.recall for s in per_layer) / len(per_layer)
    f_score = (
        2 * precision * recall / (precision + recall) if precision + recall else 0.0
    )
    n = len(pred_label)
    return ClassificationReport(
        precision=precision,
        recall=recall,
        f_score=f_score,
        accuracy=100.0 * correct / n,
        per_layer=tuple(per_layer),
        alignment=alignment,
    )


def tier_distribution(arch: Layering) -> TierDistribution:
    """Top/middle/bottom node counts of a layering.

    A one-layer architecture counts everything as middle; with two
    layers the middle is empty.
    """
    sizes = [len(l) for l in arch.layers]
    if len(sizes) == 1:
        return TierDistribution(bottom=0, middle=sizes[0], top=0)
    return TierDistribution(
        bottom=sizes[-1], middle=sum(sizes[1:-1]), top=sizes[0]
    )
