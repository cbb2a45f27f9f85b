"""Command line entry points.

Subcommands:
  gen-subsets   draw one random subset system and write it as JSON
  partition     partition a correlation graph (or a subsets file) and
                optionally render DOT
  bounds        print the analytical lifetime bounds for a config
  simulate      run the configured Monte Carlo sweep, write results.csv
                and summary.csv
  summarize     recompute summary.csv from an existing results.csv

Exit status is 0 on success and 2 on configuration or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bounds as bnd
from .channel import KIND_RAYLEIGH
from .config import RunConfig, load_config
from .graph import (
    build_subset_graph,
    export_dot,
    graph_to_dict,
    ldip_partition,
    load_graph,
    partition_to_dict,
)
from .harness import load_results_csv, run_experiment, summarize, write_results_csv, write_summary_csv
from .seeding import derive_seed
from .subsets import generate_subsets, load_subsets, save_subsets, validate_subset_system


def _cmd_gen_subsets(args) -> int:
    system = generate_subsets(args.n, args.m, args.k, args.seed)
    problems = validate_subset_system(system)
    if problems:
        raise ValueError("generated system failed validation: " + "; ".join(problems))
    if args.output:
        save_subsets(system, args.output)
        print(f"wrote {args.output}")
    else:
        from .subsets import subsets_to_dict

        print(json.dumps(subsets_to_dict(system), indent=2))
    return 0


def _cmd_partition(args) -> int:
    if args.graph:
        graph = load_graph(args.graph)
    else:
        graph = build_subset_graph(load_subsets(args.subsets))
    partition = ldip_partition(graph, rng=args.seed)
    payload = {"graph": graph_to_dict(graph), "partition": partition_to_dict(partition)}
    text = json.dumps(payload, indent=2)
    if args.output:
        Path(args.output).write_text(text + "\n")
        print(f"wrote {args.output}")
    else:
        print(text)
    if args.dot:
        Path(args.dot).write_text(export_dot(graph, partition))
        print(f"wrote {args.dot}")
    return 0


def _cmd_bounds(args) -> int:
    cfg = load_config(args.config, overrides={"master_seed": args.seed})
    model = cfg.channel_model()
    params = cfg.robot_params()
    energy = float(np.max(params.initial_energy))
    p_tc = model.reference_power * cfg.t_c
    print(f"config: {cfg.name}  channel={cfg.channel_kind}  E0={energy:g}  "
          f"p*Tc={p_tc:g}  eps_coding={cfg.eps_coding:g}  eps_task={cfg.eps_task:g}")
    print(f"{'m':>3} {'m_bar':>5} {'all-overlap':>12} {'round-robin':>12} {'fading':>8}")
    for m in cfg.m_subsets:
        # One sample instance per subset count, drawn from the trial-0 seed.
        seed = derive_seed(cfg.master_seed, m, 0)
        system = generate_subsets(cfg.n_robots, m, cfg.k_min, seed)
        partition = ldip_partition(build_subset_graph(system), rng=seed)
        m_bar = partition.n_subgraphs
        overlap = bnd.bound_lemma1(energy, p_tc, cfg.eps_coding, cfg.eps_task)
        robin = bnd.bound_line_search(energy, m_bar, p_tc, cfg.eps_coding, cfg.eps_task)
        if cfg.channel_kind == KIND_RAYLEIGH:
            avg = bnd.analytic_avg_powers(model, np.full(cfg.n_robots, cfg.power_cap()))
            fading = str(
                bnd.bound_fading(
                    np.full(cfg.n_robots, energy), avg, partition, system,
                    cfg.t_c, cfg.eps_coding, cfg.eps_task,
                )
            )
        else:
            fading = "-"
        print(f"{m:>3} {m_bar:>5} {overlap:>12} {robin:>12} {fading:>8}")
    return 0


def _cmd_simulate(args) -> int:
    overrides = {
        "master_seed": args.seed,
        "output_dir": args.output_dir,
        "trials": args.trials,
        "name": args.name,
    }
    if args.m:
        overrides["m_subsets"] = args.m
    if args.strategy:
        overrides["strategies"] = args.strategy
    if args.channel:
        overrides["channel_kind"] = args.channel
    cfg = load_config(args.config, overrides=overrides)
    result = run_experiment(cfg)
    out = Path(cfg.output_dir)
    write_results_csv(result.rows, out / "results.csv")
    write_summary_csv(result.summary, out / "summary.csv")
    print(f"wrote {out / 'results.csv'} ({len(result.rows)} rows)")
    print(f"wrote {out / 'summary.csv'}")
    for row in result.summary:
        print(
            f"  {row['channel']:>8}  m={row['m']}  {row['strategy']:<12} "
            f"mean={row['mean_lifetime']:.2f}  sd={row['sd']:.2f}  trials={row['trials']}"
        )
    return 0


def _cmd_summarize(args) -> int:
    rows = load_results_csv(args.results)
    summary = summarize(rows)
    write_summary_csv(summary, args.output)
    print(f"wrote {args.output} ({len(summary)} groups)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swarmlife",
        description="Robot swarm lifetime simulator for correlated-data offloading.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-subsets", help="draw one random subset system")
    p.add_argument("-n", type=int, required=True, help="number of robots")
    p.add_argument("-m", type=int, required=True, help="number of subsets")
    p.add_argument("-k", type=int, required=True, help="minimum subset size (bin count)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="output JSON path (default: stdout)")
    p.set_defaults(func=_cmd_gen_subsets)

    p = sub.add_parser("partition", help="partition a subset correlation graph")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="graph JSON (adjacency list schema)")
    src.add_argument("--subsets", help="subset system JSON to build the graph from")
    p.add_argument("--seed", type=int, default=0, help="tie-break seed")
    p.add_argument("-o", "--output", help="partition JSON path (default: stdout)")
    p.add_argument("--dot", help="also write a DOT rendering here")
    p.set_defaults(func=_cmd_partition)

    p = sub.add_parser("bounds", help="print analytical lifetime bounds for a config")
    p.add_argument("--config", help="config JSON path (defaults apply if omitted)")
    p.add_argument("--seed", type=int, help="override the master seed")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("simulate", help="run the Monte Carlo sweep from a config")
    p.add_argument("--config", help="config JSON path (defaults apply if omitted)")
    p.add_argument("--seed", type=int, help="override the master seed")
    p.add_argument("--trials", type=int, help="override the trial count")
    p.add_argument("--name", help="override the experiment name")
    p.add_argument("--channel", choices=["awgn", "rayleigh"], help="override the channel kind")
    p.add_argument("--m", type=int, nargs="+", help="override the subset-count sweep")
    p.add_argument(
        "--strategy",
        action="append",
        choices=["conventional", "maxmin", "ldip-r", "ldip-all"],
        help="strategy to run (repeatable; default: all four)",
    )
    p.add_argument("--output-dir", help="directory for results.csv and summary.csv")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("summarize", help="recompute the summary from a results CSV")
    p.add_argument("--results", required=True, help="results.csv path")
    p.add_argument("-o", "--output", required=True, help="summary.csv path")
    p.set_defaults(func=_cmd_summarize)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
