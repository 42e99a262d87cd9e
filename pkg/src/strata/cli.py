"""Command-line surface: scan, recover, evaluate, violations, evolve, synth."""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from . import formats
from .evolution import BOTH, INCREMENTAL, TRADITIONAL, evolve_report
from .graph import CLASS, DependencyGraph, GraphError, PACKAGE, aggregate_to_packages
from .javascan import ScanLog, scan_sources
from .layering import Layering, LayeringError
from .metrics import classification_metrics, count_violations, tier_distribution
from .recovery import RecoveryConfig, recover
from .synth import SynthSpec, generate

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_EMPTY = 2


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT_ERROR):
        super().__init__(message)
        self.code = code


def _pct(value: float) -> str:
    return f"{value:.2f}"


def _default_format() -> str:
    return "table" if sys.stdout.isatty() else "json"


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("STRATA_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"bad STRATA_SEED value: {env!r}")
    return 0


def _config(args) -> RecoveryConfig:
    try:
        return RecoveryConfig(
            alpha=args.alpha,
            beta=args.beta,
            threshold=args.threshold,
            seed=_resolve_seed(args),
            trials=args.trials,
        )
    except ValueError as exc:
        raise CliError(str(exc))


def _load_graph(path: str) -> DependencyGraph:
    try:
        return formats.load_graph(path)
    except FileNotFoundError:
        raise CliError(f"no such file: {path}")
    except formats.ParseError as exc:
        raise CliError(f"{path}: {exc}")


def _load_layering(path: str) -> Layering:
    try:
        return formats.load_layering(path)
    except FileNotFoundError:
        raise CliError(f"no such file: {path}")
    except (formats.ParseError, LayeringError) as exc:
        raise CliError(f"{path}: {exc}")


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_json(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------

def cmd_scan(args) -> int:
    log = ScanLog()
    try:
        graph = scan_sources(args.root, log)
    except FileNotFoundError as exc:
        raise CliError(str(exc))
    except ValueError as exc:
        for msg in log.messages():
            print(msg, file=sys.stderr)
        print(str(exc), file=sys.stderr)
        return EXIT_EMPTY
    for msg in log.messages():
        print(msg, file=sys.stderr)
    text = formats.to_graph_json(graph) if args.format == "json" else formats.to_edge_list(graph)
    _write_or_print(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# recover
# ---------------------------------------------------------------------------

def _graph_at_level(graph: DependencyGraph, level: str | None) -> DependencyGraph:
    if level is None or level == graph.level:
        return graph
    if level == PACKAGE and graph.level == CLASS:
        return aggregate_to_packages(graph)
    raise CliError("cannot derive a class-level graph from a package-level input")


def _violation_doc(report) -> dict:
    return {
        "back_calls": report.back_calls,
        "skip_calls": report.skip_calls,
        "back_rate": report.back_rate,
        "skip_rate": report.skip_rate,
        "cyclic": {
            "scc_count": report.cyclic.scc_count,
            "cross_layer_cycles": report.cyclic.cross_layer_cycles,
            "cycles": [sorted(c) for c in report.cyclic.cycles],
        },
        "violating_edges": [
            {"from": u, "to": v, "kind": kind} for u, v, kind in report.violating_edges
        ],
    }


def _violation_table(report) -> list[str]:
    lines = [
        f"back-calls  {report.back_calls} ({_pct(report.back_rate)}%)",
        f"skip-calls  {report.skip_calls} ({_pct(report.skip_rate)}%)",
        f"cycles      {report.cyclic.scc_count} "
        f"(cross-layer: {report.cyclic.cross_layer_cycles})",
    ]
    lines += [f"  {kind:4s}  {u} -> {v}" for u, v, kind in report.violating_edges]
    return lines


def cmd_recover(args) -> int:
    graph = _graph_at_level(_load_graph(args.graph), args.level)
    config = _config(args)
    result = recover(graph, config)
    arch = result.architecture
    violations = count_violations(arch, graph)

    if args.out:
        suffix = Path(args.out).suffix
        if suffix == ".csv":
            text = formats.to_layering_csv(arch)
        elif suffix == ".dot":
            text = formats.export_dot(graph, arch)
        else:
            text = formats.to_layering_json(arch)
        Path(args.out).write_text(text, encoding="utf-8")

    fmt = args.format or _default_format()
    if fmt == "json":
        _emit_json(
            {
                "seed_used": result.seed_used,
                "score": result.score,
                "merged_layer_count": result.merged_layer_count,
                "layers": arch.sorted_layers(),
                "violations": _violation_doc(violations),
            }
        )
    elif fmt == "csv":
        sys.stdout.write(formats.to_layering_csv(arch))
        sys.stdout.write(
            "# seed_used=%d score=%s back=%d skip=%d\n"
            % (result.seed_used, result.score, violations.back_calls,
               violations.skip_calls)
        )
    elif fmt == "dot":
        sys.stdout.write(formats.export_dot(graph, arch))
    else:
        print(f"seed_used   {result.seed_used}")
        print(f"score       {result.score}")
        print(f"layers      {len(arch)} (pre-optimization: {result.merged_layer_count})")
        for i, layer in enumerate(arch.sorted_layers(), start=1):
            print(f"  layer {i}: {' '.join(layer)}")
        for line in _violation_table(violations):
            print(line)
    return EXIT_OK


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------

def cmd_evaluate(args) -> int:
    predicted = _load_layering(args.predicted)
    truth = _load_layering(args.truth)
    if predicted.node_set != truth.node_set:
        missing = sorted(truth.node_set - predicted.node_set)
        extra = sorted(predicted.node_set - truth.node_set)
        raise CliError(
            f"node sets differ: only-in-truth={missing} only-in-predicted={extra}"
        )
    report = classification_metrics(predicted, truth)
    tiers = tier_distribution(predicted)

    fmt = args.format or _default_format()
    if fmt == "json":
        _emit_json(
            {
                "precision": report.precision,
                "recall": report.recall,
                "f_score": report.f_score,
                "accuracy": report.accuracy,
                "alignment": {
                    str(k + 1): v + 1 for k, v in report.alignment.items()
                },
                "per_layer": [dataclasses.asdict(s) for s in report.per_layer],
                "tiers": {"bottom": tiers.bottom, "middle": tiers.middle,
                          "top": tiers.top},
            }
        )
    elif fmt == "csv":
        print("precision,recall,f_score,accuracy,bottom,middle,top")
        print(
            f"{report.precision:.4f},{report.recall:.4f},{report.f_score:.4f},"
            f"{_pct(report.accuracy)},{tiers.bottom},{tiers.middle},{tiers.top}"
        )
    else:
        print(f"precision  {report.precision:.4f}")
        print(f"recall     {report.recall:.4f}")
        print(f"f-score    {report.f_score:.4f}")
        print(f"accuracy   {_pct(report.accuracy)}")
        print(f"tiers      B={tiers.bottom} M={tiers.middle} T={tiers.top}")
        for s in report.per_layer:
            print(
                f"  truth layer {s.truth_layer}: p={s.precision:.4f} "
                f"r={s.recall:.4f} f1={s.f1:.4f} support={s.support}"
            )
    return EXIT_OK


# ---------------------------------------------------------------------------
# violations
# ---------------------------------------------------------------------------

def cmd_violations(args) -> int:
    graph = _load_graph(args.graph)
    arch = _load_layering(args.layering)
    try:
        report = count_violations(arch, graph)
    except LayeringError as exc:
        raise CliError(str(exc))
    fmt = args.format or _default_format()
    if fmt == "json":
        _emit_json(_violation_doc(report))
    elif fmt == "csv":
        print("back_calls,skip_calls,back_rate,skip_rate,cycles,cross_layer_cycles")
        print(
            f"{report.back_calls},{report.skip_calls},{_pct(report.back_rate)},"
            f"{_pct(report.skip_rate)},{report.cyclic.scc_count},"
            f"{report.cyclic.cross_layer_cycles}"
        )
    else:
        for line in _violation_table(report):
            print(line)
    return EXIT_OK


# ---------------------------------------------------------------------------
# evolve
# ---------------------------------------------------------------------------

_EVOLVE_COLUMNS = [
    "version", "old", "new", "all", "pct",
    "mojofm", "mojo_ops", "impact", "stability",
    "trad_B", "trad_M", "trad_T", "inc_B", "inc_M", "inc_T",
]


def _row_cells(row) -> list[str]:
    def dist(d, attr):
        return str(getattr(d, attr)) if d is not None else "-"

    return [
        row.label,
        str(row.old_count),
        str(row.new_count),
        str(row.total_count),
        _pct(row.changed_pct),
        _pct(row.mojofm) if row.mojofm is not None else "-",
        str(row.mojo_ops) if row.mojo_ops is not None else "-",
        _pct(row.impact_pct),
        _pct(row.stability_pct),
        dist(row.traditional, "bottom"),
        dist(row.traditional, "middle"),
        dist(row.traditional, "top"),
        dist(row.incremental, "bottom"),
        dist(row.incremental, "middle"),
        dist(row.incremental, "top"),
    ]


def cmd_evolve(args) -> int:
    try:
        series = formats.load_series_manifest(args.manifest)
    except FileNotFoundError:
        raise CliError(f"no such file: {args.manifest}")
    except (formats.ParseError, ValueError) as exc:
        raise CliError(f"{args.manifest}: {exc}")
    rows = evolve_report(
        series,
        _config(args),
        mode=args.mode,
        reseed_threshold_pct=args.reseed_threshold,
    )
    fmt = args.format or _default_format()
    if fmt == "json":
        docs = []
        for row in rows:
            doc = dataclasses.asdict(row)
            docs.append(doc)
        _emit_json(docs)
    elif fmt == "csv":
        print(",".join(_EVOLVE_COLUMNS))
        for row in rows:
            print(",".join(_row_cells(row)))
    else:
        widths = [max(len(c), *(len(_row_cells(r)[i]) for r in rows))
                  for i, c in enumerate(_EVOLVE_COLUMNS)]
        print("  ".join(c.ljust(w) for c, w in zip(_EVOLVE_COLUMNS, widths)))
        for row in rows:
            print("  ".join(c.ljust(w) for c, w in zip(_row_cells(row), widths)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# synth
# ---------------------------------------------------------------------------

def cmd_synth(args) -> int:
    try:
        sizes = tuple(int(s) for s in args.layers.split(","))
        spec = SynthSpec(
            layer_sizes=sizes,
            p_adjacent=args.p_adjacent,
            p_skip=args.p_skip,
            p_back=args.p_back,
            seed=_resolve_seed(args),
        )
    except ValueError as exc:
        raise CliError(str(exc))
    graph, truth = generate(spec)
    graph_text = (
        formats.to_graph_json(graph) if args.format == "json"
        else formats.to_edge_list(graph)
    )
    _write_or_print(graph_text, args.graph_out)
    truth_text = formats.to_layering_json(truth)
    if args.truth_out:
        Path(args.truth_out).write_text(truth_text, encoding="utf-8")
    elif not args.graph_out:
        sys.stdout.write(truth_text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_recovery_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=1.0, help="back-call weight")
    p.add_argument("--beta", type=float, default=1.0, help="skip-call weight")
    p.add_argument("--threshold", type=int, default=2,
                   help="minimum layer size kept by optimization")
    p.add_argument("--seed", type=int, default=None,
                   help="base RNG seed (default: $STRATA_SEED or 0)")
    p.add_argument("--trials", type=int, default=1,
                   help="number of seeds tried; best score wins")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strata",
        description="Recover and evaluate layered software architectures "
        "from dependency graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="extract a class-level graph from Java sources")
    p.add_argument("root")
    p.add_argument("-o", "--out", default=None)
    p.add_argument("--format", choices=["edgelist", "json"], default="edgelist")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("recover", help="recover a layered architecture")
    p.add_argument("graph")
    p.add_argument("-o", "--out", default=None,
                   help="layering output file (.json, .csv, or .dot)")
    p.add_argument("--level", choices=[CLASS, PACKAGE], default=None)
    p.add_argument("--format", choices=["json", "csv", "dot", "table"], default=None)
    _add_recovery_flags(p)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("evaluate", help="score a layering against ground truth")
    p.add_argument("predicted")
    p.add_argument("truth")
    p.add_argument("--format", choices=["json", "csv", "table"], default=None)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("violations", help="report layering violations")
    p.add_argument("graph")
    p.add_argument("layering")
    p.add_argument("--format", choices=["json", "csv", "table"], default=None)
    p.set_defaults(func=cmd_violations)

    p = sub.add_parser("evolve", help="analyze an evolving version series")
    p.add_argument("manifest")
    p.add_argument("--mode", choices=[TRADITIONAL, INCREMENTAL, BOTH], default=BOTH)
    p.add_argument("--reseed-threshold", type=float, default=90.0,
                   help="changed-package %% above which the incremental "
                   "chain re-seeds from scratch")
    p.add_argument("--format", choices=["json", "csv", "table"], default=None)
    _add_recovery_flags(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("synth", help="generate a synthetic layered graph")
    p.add_argument("--layers", default="10,10,10",
                   help="comma-separated layer sizes, top first")
    p.add_argument("--p-adjacent", type=float, default=0.4)
    p.add_argument("--p-skip", type=float, default=0.0)
    p.add_argument("--p-back", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--graph-out", default=None)
    p.add_argument("--truth-out", default=None)
    p.add_argument("--format", choices=["edgelist", "json"], default="edgelist")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (GraphError, LayeringError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
