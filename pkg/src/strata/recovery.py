"""Layer recovery pipeline: merge, optimize, and the estimator wrapper."""
from __future__ import annotations

import random
from dataclasses import dataclass

from sklearn.base import BaseEstimator

from .graph import DependencyGraph, GraphError
from .ego import create_ego_layers, merge_ego_layers
from .layering import Layering, violation_score


@dataclass(frozen=True)
class RecoveryConfig:
    """Knobs of the recovery pipeline.

    alpha/beta weight back-calls and skip-calls in the violation
    objective; layers smaller than ``threshold`` get merged away during
    optimization. ``trials`` reruns the pipeline with consecutive seeds
    and keeps the lowest-scoring result. ``single_pass`` restricts
    optimization to one top-to-bottom sweep instead of iterating to a
    fixed point.
    """

    alpha: float = 1.0
    beta: float = 1.0
    threshold: int = 2
    seed: int = 0
    trials: int = 1
    single_pass: bool = False

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0 or self.alpha + self.beta <= 0:
            raise ValueError("alpha/beta must be non-negative with positive sum")
        if self.threshold < 1:
            raise ValueError("threshold must be a positive integer")
        if self.trials < 1:
            raise ValueError("trials must be a positive integer")


@dataclass(frozen=True)
class RecoveryResult:
    architecture: Layering
    score: float
    seed_used: int
    merged_layer_count: int  # layer count before optimization


def optimize_layers(
    arch: Layering,
    graph: DependencyGraph,
    config: RecoveryConfig = RecoveryConfig(),
) -> Layering:
    """Merge undersized layers into whichever neighbor hurts less.

    Scans top to bottom; a layer smaller than the threshold is combined
    with the adjacent layer whose merge yields the lower violation score
    (ties go upward); with a single neighbor the merge is direct. By
    default the scan repeats until no layer is undersized or one layer
    remains; ``single_pass`` stops after the first sweep.
    """
    arch.check_covers(graph)
    layers = [set(l) for l in arch.layers]

    def score(candidate: list[set[str]]) -> float:
        return violation_score(
            Layering.build(candidate), graph, config.alpha, config.beta
        )

    def merged(at: int, into: int) -> list[set[str]]:
        out = [set(l) for l in layers]
        out[into] |= out[at]
        del out[at]
        return out

    while len(layers) > 1:
        changed = False
        i = 0
        while i < len(layers) and len(layers) > 1:
            if len(layers[i]) >= config.threshold:
                i += 1
                continue
            if i == 0:
                layers = merged(i, i + 1)
            elif i == len(layers) - 1:
                layers = merged(i, i - 1)
            else:
                up = merged(i, i - 1)
                down = merged(i, i + 1)
                layers = up if score(up) <= score(down) else down
            changed = True
        if config.single_pass or not changed:
            break

    return Layering.build(layers)


def recover(graph: DependencyGraph, config: RecoveryConfig = RecoveryConfig()) -> RecoveryResult:
    """Full pipeline: ego layers -> merge -> optimize, best of ``trials``.

    Each trial shuffles the lexicographic node order with its own seed
    (seed, seed+1, ...); the result with the minimal violation score wins,
    ties resolved toward the lowest seed.
    """
    if len(graph) == 0:
        raise GraphError("empty graph")
    ego_layers = create_ego_layers(graph)
    best: RecoveryResult | None = None
    for trial in range(config.trials):
        seed = config.seed + trial
        order = list(graph.nodes)
        random.Random(seed).shuffle(order)
        merged = merge_ego_layers(ego_layers, graph, order)
        optimized = optimize_layers(merged, graph, config)
        result = RecoveryResult(
            architecture=optimized,
            score=violation_score(optimized, graph, config.alpha, config.beta),
            seed_used=seed,
            merged_layer_count=len(merged),
        )
        if best is None or result.score < best.score:
            best = result
    return best


class LayerRecovery(BaseEstimator):
    """Estimator-style wrapper around the recovery pipeline.

    ``fit`` takes a :class:`DependencyGraph` and exposes the recovered
    architecture as fitted attributes; ``predict`` maps nodes to layer
    indices (0 = top). ``partial_fit`` updates a previously fitted
    architecture with a new graph version instead of recovering from
    scratch.
    """

    def __init__(self, alpha=1.0, beta=1.0, threshold=2, seed=0, trials=1,
                 single_pass=False):
        self.alpha = alpha
        self.beta = beta
        self.threshold = threshold
        self.seed = seed
        self.trials = trials
        self.single_pass = single_pass

    def _config(self) -> RecoveryConfig:
        return RecoveryConfig(
            alpha=self.alpha,
            beta=self.beta,
            threshold=self.threshold,
            seed=self.seed,
            trials=self.trials,
            single_pass=self.single_pass,
        )

    def fit(self, graph: DependencyGraph, y=None):
        result = recover(graph, self._config())
        self.architecture_ = result.architecture
        self.score_ = result.score
        self.seed_used_ = result.seed_used
        self.merged_layer_count_ = result.merged_layer_count
        return self

    def partial_fit(self, graph: DependencyGraph, y=None):
        if not hasattr(self, "architecture_"):
            return self.fit(graph)
        from .evolution import incremental_update

        self.architecture_ = incremental_update(
            self.architecture_, graph, self._config()
        )
        self.score_ = violation_score(
            self.architecture_, graph, self.alpha, self.beta
        )
        return self

    def predict(self, graph: DependencyGraph) -> dict[str, int]:
        layer_of = self.architecture_.layer_of
        try:
            return {n: layer_of[n] for n in graph.nodes}
        except KeyError as exc:
            raise GraphError(f"node not in fitted architecture: {exc.args[0]}")

    def fit_predict(self, graph: DependencyGraph, y=None) -> dict[str, int]:
        return self.fit(graph).predict(graph)
