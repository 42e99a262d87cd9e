"""strata: layered software architecture recovery from dependency graphs."""

from .graph import (
    CycleReport,
    DependencyGraph,
    GraphError,
    aggregate_to_packages,
    dependency_depth,
    detect_cycles,
)
from .layering import Layering, LayeringError, violation_score
from .ego import EgoLayer, build_ego_layer, create_ego_layers, merge_ego_layers
from .recovery import (
    LayerRecovery,
    RecoveryConfig,
    RecoveryResult,
    optimize_layers,
    recover,
)
from .metrics import (
    ClassificationReport,
    TierDistribution,
    ViolationReport,
    align_layers,
    classification_metrics,
    count_violations,
    tier_distribution,
)
from .evolution import (
    EvolutionRow,
    VersionSeries,
    evolve_report,
    incremental_update,
    max_mojo_distance,
    mojo_distance,
    mojo_distance_brute,
    mojofm,
    node_impact,
    stability,
)
from .synth import SynthSpec, generate
from .javascan import scan_sources

__version__ = "0.1.0"

__all__ = [
    "CycleReport",
    "DependencyGraph",
    "GraphError",
    "aggregate_to_packages",
    "dependency_depth",
    "detect_cycles",
    "Layering",
    "LayeringError",
    "violation_score",
    "EgoLayer",
    "build_ego_layer",
    "create_ego_layers",
    "merge_ego_layers",
    "LayerRecovery",
    "RecoveryConfig",
    "RecoveryResult",
    "optimize_layers",
    "recover",
    "ClassificationReport",
    "TierDistribution",
    "ViolationReport",
    "align_layers",
    "classification_metrics",
    "count_violations",
    "tier_distribution",
    "EvolutionRow",
    "VersionSeries",
    "evolve_report",
    "incremental_update",
    "max_mojo_distance",
    "mojo_distance",
    "mojo_distance_brute",
    "mojofm",
    "node_impact",
    "stability",
    "SynthSpec",
    "generate",
    "scan_sources",
]
