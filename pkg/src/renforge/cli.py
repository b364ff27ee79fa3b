"""Command-line entry point for scenarios, sweeps, trees, clustering, and
the acceptance suite."""

from __future__ import annotations

import argparse
import json
import sys

from .concept_forest import ConceptForest, tokenize
from .errors import RenforgeError
from .harness import (default_config_json, load_config, run_scenario, sweep,
                      verify)
from .symbolic_cluster import ClusterNet


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="renforge",
        description="Deterministic threshold-neuron simulator, concept "
                    "forests, event clustering, and resonance search.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="run a scripted scenario")
    run_parser.add_argument("--config", required=True, help="config JSON path")

    sweep_parser = sub.add_parser("sweep", help="run a convergence sweep")
    sweep_parser.add_argument("--config", required=True, help="config JSON path")
    sweep_parser.add_argument("--samples", required=True, type=int,
                              help="number of sweep samples")

    trees_parser = sub.add_parser("trees", help="concept-forest operations")
    trees_sub = trees_parser.add_subparsers(dest="trees_command", required=True)
    ingest_parser = trees_sub.add_parser("ingest", help="build a forest from a corpus")
    ingest_parser.add_argument("--corpus", required=True,
                               help="text file, one sequence per line")
    ingest_parser.add_argument("--out", required=True, help="forest JSON output path")
    query_parser = trees_sub.add_parser("query", help="search a stored forest")
    query_parser.add_argument("--forest", required=True, help="forest JSON path")
    query_parser.add_argument("--terms", required=True,
                              help="query tokens, whitespace separated")

    cluster_parser = sub.add_parser("cluster", help="cluster a TSV event stream")
    cluster_parser.add_argument("--events", required=True,
                                help="TSV file: time<TAB>label,label,...")
    cluster_parser.add_argument("--fuzzy", action="store_true",
                                help="also reinforce nested sub-clusters")
    cluster_parser.add_argument("--decay", type=float, default=0.0,
                                help="weight decay for non-reinforced nodes")
    cluster_parser.add_argument("--out", required=True, help="net JSON output path")

    sub.add_parser("verify", help="run the acceptance suite")

    config_parser = sub.add_parser("config", help="configuration helpers")
    config_parser.add_argument("--print-defaults", action="store_true",
                               help="print the default config JSON")
    return parser


def _cmd_run(args) -> int:
    config = load_config(args.config)
    summary = run_scenario(config)
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def _cmd_sweep(args) -> int:
    config = load_config(args.config)
    rows = sweep(config, args.samples)
    print(f"wrote {len(rows)} samples to {config.output_dir}/sweep.csv")
    return 0


def _cmd_trees(args) -> int:
    if args.trees_command == "ingest":
        forest = ConceptForest()
        inserted = forest.ingest_corpus(args.corpus)
        with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(forest.to_json() + "\n")
        print(f"ingested {inserted} sequences into {len(forest.trees)} trees "
              f"({len(forest.links)} links)")
        return 0
    with open(args.forest, "r", encoding="utf-8") as handle:
        forest = ConceptForest.from_json(handle.read())
    paths = forest.search(tokenize(args.terms))
    doc = [{"segments": [[ti, list(labels)] for ti, labels in path.segments],
            "links_crossed": path.links_crossed,
            "tokens_matched": path.tokens_matched,
            "complete": path.complete} for path in paths]
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_cluster(args) -> int:
    net = ClusterNet(decay=args.decay)
    reports = net.ingest_events_file(args.events, fuzzy=args.fuzzy)
    with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(net.to_json() + "\n")
    print(f"clustered {len(reports)} events into {len(net.hidden)} hidden "
          f"nodes / {len(net.global_concepts)} global concepts")
    return 0


def _cmd_config(args) -> int:
    if not args.print_defaults:
        print("usage: renforge config --print-defaults", file=sys.stderr)
        return 2
    print(default_config_json(), end="")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "trees":
            return _cmd_trees(args)
        if args.command == "cluster":
            return _cmd_cluster(args)
        if args.command == "verify":
            return verify()
        if args.command == "config":
            return _cmd_config(args)
    except RenforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
