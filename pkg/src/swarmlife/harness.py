"""Monte Carlo orchestration across subset counts, strategies, and trials.

One trial seed is derived per (master seed, subset count, trial index), so
every strategy inside a trial sees the same subset system, the same
partition tie-breaks, and the same channel gain sequence. Output ordering
is canonical (sorted by the row key), making equal-seed runs byte-identical.
"""

from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass
from pathlib import Path

from .config import RunConfig
from .engine import LifetimeRecord, run_lifetime
from .seeding import derive_seed
from .subsets import generate_subsets

RESULT_COLUMNS = ("experiment", "channel", "m", "strategy", "trial", "lifetime", "termination")
SUMMARY_COLUMNS = ("channel", "m", "strategy", "mean_lifetime", "sd", "trials")


@dataclass(frozen=True, eq=False)
class ExperimentResult:
    rows: list[dict]
    summary: list[dict]
    records: dict[tuple[int, str, int], LifetimeRecord] | None


def run_experiment(cfg: RunConfig, keep_records: bool = False) -> ExperimentResult:
    """Run the configured sweep and return per-trial rows plus summaries.

    ``keep_records`` additionally retains every full ``LifetimeRecord``
    keyed by (m, strategy, trial) for invariant checks; the CSV outputs do
    not need them.
    """
    problems = cfg.validate()
    if problems:
        raise ValueError("invalid configuration: " + "; ".join(problems))
    model = cfg.channel_model()
    params = cfg.robot_params()
    rows: list[dict] = []
    records: dict[tuple[int, str, int], LifetimeRecord] = {}
    for m in cfg.m_subsets:
        for trial in range(cfg.trials):
            seed = derive_seed(cfg.master_seed, m, trial)
            system = generate_subsets(cfg.n_robots, m, cfg.k_min, seed)
            for strategy in cfg.strategies:
                record = run_lifetime(
                    system,
                    strategy,
                    model,
                    params,
                    t_c=cfg.t_c,
                    rng_seed=seed,
                    max_tasks=cfg.max_tasks,
                    on_infeasible=cfg.on_infeasible,
                )
                rows.append(
                    {
                        "experiment": cfg.name,
                        "channel": cfg.channel_kind,
                        "m": m,
                        "strategy": strategy.value,
                        "trial": trial,
                        "lifetime": record.lifetime,
                        "termination": record.termination,
                    }
                )
                if keep_records:
                    records[(m, strategy.value, trial)] = record
    rows.sort(key=_row_key)
    return ExperimentResult(
        rows=rows, summary=summarize(rows), records=records if keep_records else None
    )


def _row_key(row: dict) -> tuple:
    return (row["experiment"], row["channel"], row["m"], row["strategy"], row["trial"])


def summarize(rows: list[dict]) -> list[dict]:
    """Per-(channel, m, strategy) mean and standard deviation of lifetime.

    Groups with no rows simply do not appear; nothing is fabricated.
    """
    groups: dict[tuple, list[int]] = {}
    for row in rows:
        key = (row["channel"], int(row["m"]), row["strategy"])
        groups.setdefault(key, []).append(int(row["lifetime"]))
    summary = []
    for key in sorted(groups):
        lifetimes = groups[key]
        summary.append(
            {
                "channel": key[0],
                "m": key[1],
                "strategy": key[2],
                "mean_lifetime": statistics.fmean(lifetimes),
                "sd": statistics.pstdev(lifetimes),
                "trials": len(lifetimes),
            }
        )
    return summary


def write_results_csv(rows: list[dict], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(RESULT_COLUMNS)
        for row in sorted(rows, key=_row_key):
            writer.writerow([row[col] for col in RESULT_COLUMNS])


def write_summary_csv(summary: list[dict], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SUMMARY_COLUMNS)
        for row in summary:
            writer.writerow(
                [
                    row["channel"],
                    row["m"],
                    row["strategy"],
                    f"{row['mean_lifetime']:.6f}",
                    f"{row['sd']:.6f}",
                    row["trials"],
                ]
            )


def load_results_csv(path: str | Path) -> list[dict]:
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        missing = set(RESULT_COLUMNS) - set(reader.fieldnames or [])
        if missing:
            raise ValueError(f"results file lacks columns: {', '.join(sorted(missing))}")
        rows = []
        for row in reader:
            rows.append(
                {
                    "experiment": row["experiment"],
                    "channel": row["channel"],
                    "m": int(row["m"]),
                    "strategy": row["strategy"],
                    "trial": int(row["trial"]),
                    "lifetime": int(row["lifetime"]),
                    "termination": row["termination"],
                }
            )
        return rows
