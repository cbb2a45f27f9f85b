"""Experiment configuration.

Defaults mirror the reference setup: a 30-robot swarm, subsets of at least
8 robots, 500 Monte Carlo trials, a 10 dB operating point, zero coding and
task-execution costs, and an energy budget worth exactly 200 reference
transmissions (which pins the conventional AWGN lifetime at 200 tasks).
The fading power cap defaults to three times the reference power.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping

from .channel import KIND_AWGN, KIND_RAYLEIGH, ChannelModel, snr_db_to_linear
from .strategies import StrategyKind
from .swarm import RobotParams

REFERENCE_TRANSMISSIONS = 200
DEFAULT_M_SWEEP = (4, 5, 6, 7, 8)

ENV_SEED = "SWARMLIFE_SEED"
ENV_OUTPUT_DIR = "SWARMLIFE_OUTPUT_DIR"


@dataclass(frozen=True)
class RunConfig:
    name: str = "experiment"
    n_robots: int = 30
    m_subsets: tuple[int, ...] = DEFAULT_M_SWEEP
    k_min: int = 8
    trials: int = 500
    master_seed: int = 1
    channel_kind: str = KIND_AWGN
    snr_db: float = 10.0
    rate_target: float | None = None
    cap_multiplier: float | None = None  # None: 1x in AWGN, 3x in fading
    initial_energy: float | None = None  # None: budget for 200 reference transmissions
    eps_task: float = 0.0
    eps_coding: float = 0.0
    t_c: float = 1.0
    strategies: tuple[StrategyKind, ...] = field(
        default=(
            StrategyKind.CONVENTIONAL,
            StrategyKind.MAXMIN,
            StrategyKind.LDIP_R_VERTICES,
            StrategyKind.LDIP_ALL,
        )
    )
    on_infeasible: str = "terminate"
    max_tasks: int | None = None
    output_dir: str = "results"

    def validate(self) -> list[str]:
        """Collect configuration problems; empty means runnable."""
        problems: list[str] = []
        if self.n_robots < 3:
            problems.append("n_robots must be at least 3")
        if not self.m_subsets:
            problems.append("m_subsets sweep must not be empty")
        if self.k_min < 1 or self.k_min > self.n_robots:
            problems.append("k_min must be in [1, n_robots]")
        for m in self.m_subsets:
            if m < 1:
                problems.append(f"subset count {m} must be positive")
            elif self.n_robots > m * self.k_min:
                problems.append(
                    f"m={m} cannot cover {self.n_robots} robots with k={self.k_min} "
                    f"(need n <= m*k)"
                )
        if self.trials < 1:
            problems.append("trials must be at least 1")
        if self.channel_kind not in (KIND_AWGN, KIND_RAYLEIGH):
            problems.append(f"unknown channel kind {self.channel_kind!r}")
        if not self.strategies:
            problems.append("at least one strategy is required")
        if self.on_infeasible not in ("terminate", "skip"):
            problems.append("on_infeasible must be 'terminate' or 'skip'")
        if self.t_c <= 0:
            problems.append("t_c must be positive")
        if not math.isfinite(self.snr_db):
            problems.append("snr_db must be a finite number")
        for name, value in (("eps_task", self.eps_task), ("eps_coding", self.eps_coding)):
            if value < 0:
                problems.append(f"{name} must be non-negative")
        if self.initial_energy is not None and self.initial_energy < 0:
            problems.append("initial energy must be non-negative")
        if self.cap_multiplier is not None and self.cap_multiplier <= 0:
            problems.append("cap_multiplier must be positive")
        if self.max_tasks is not None and self.max_tasks < 0:
            problems.append("max_tasks must be non-negative")
        return problems

    def channel_model(self) -> ChannelModel:
        return ChannelModel(
            kind=self.channel_kind,
            nominal_snr=snr_db_to_linear(self.snr_db),
            rate_target=self.rate_target,
        )

    def power_cap(self) -> float:
        multiplier = self.cap_multiplier
        if multiplier is None:
            multiplier = 1.0 if self.channel_kind == KIND_AWGN else 3.0
        return multiplier * self.channel_model().reference_power

    def robot_params(self) -> RobotParams:
        energy = self.initial_energy
        if energy is None:
            energy = (
                REFERENCE_TRANSMISSIONS
                * (self.channel_model().reference_power * self.t_c + self.eps_coding)
            )
        return RobotParams(
            initial_energy=energy,
            task_cost=self.eps_task,
            coding_cost=self.eps_coding,
            power_cap=self.power_cap(),
        )

    @classmethod
    def from_dict(cls, data: Mapping) -> "RunConfig":
        known = {
            "name",
            "n_robots",
            "m_subsets",
            "k_min",
            "trials",
            "master_seed",
            "channel",
            "energy",
            "t_c",
            "strategies",
            "on_infeasible",
            "max_tasks",
            "output_dir",
        }
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        kwargs: dict = {}
        for key in ("name", "n_robots", "k_min", "trials", "master_seed", "t_c",
                    "on_infeasible", "max_tasks", "output_dir"):
            if key in data:
                kwargs[key] = data[key]
        if "m_subsets" in data:
            m = data["m_subsets"]
            kwargs["m_subsets"] = (int(m),) if isinstance(m, int) else tuple(int(v) for v in m)
        if "strategies" in data:
            kwargs["strategies"] = tuple(StrategyKind(s) for s in data["strategies"])
        channel = data.get("channel", {})
        if "kind" in channel:
            kwargs["channel_kind"] = channel["kind"]
        if "snr_db" in channel:
            kwargs["snr_db"] = float(channel["snr_db"])
        if channel.get("rate_target") is not None:
            kwargs["rate_target"] = float(channel["rate_target"])
        if channel.get("cap_multiplier") is not None:
            kwargs["cap_multiplier"] = float(channel["cap_multiplier"])
        energy = data.get("energy", {})
        if energy.get("initial") is not None:
            kwargs["initial_energy"] = float(energy["initial"])
        if "eps_task" in energy:
            kwargs["eps_task"] = float(energy["eps_task"])
        if "eps_coding" in energy:
            kwargs["eps_coding"] = float(energy["eps_coding"])
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n_robots": self.n_robots,
            "m_subsets": list(self.m_subsets),
            "k_min": self.k_min,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "channel": {
                "kind": self.channel_kind,
                "snr_db": self.snr_db,
                "rate_target": self.rate_target,
                "cap_multiplier": self.cap_multiplier,
            },
            "energy": {
                "initial": self.initial_energy,
                "eps_task": self.eps_task,
                "eps_coding": self.eps_coding,
            },
            "t_c": self.t_c,
            "strategies": [s.value for s in self.strategies],
            "on_infeasible": self.on_infeasible,
            "max_tasks": self.max_tasks,
            "output_dir": self.output_dir,
        }


def load_config(
    path: str | Path | None = None,
    overrides: Mapping | None = None,
    env: Mapping[str, str] | None = None,
) -> RunConfig:
    """Build a config from an optional JSON file, env vars, and overrides.

    Precedence, lowest to highest: built-in defaults, config file,
    environment (seed and output directory only), explicit overrides.
    """
    if path is not None:
        cfg = RunConfig.from_dict(json.loads(Path(path).read_text()))
    else:
        cfg = RunConfig()
    env = os.environ if env is None else env
    if env.get(ENV_SEED):
        cfg = replace(cfg, master_seed=int(env[ENV_SEED]))
    if env.get(ENV_OUTPUT_DIR):
        cfg = replace(cfg, output_dir=env[ENV_OUTPUT_DIR])
    if overrides:
        fields = {k: v for k, v in overrides.items() if v is not None}
        if "strategies" in fields:
            fields["strategies"] = tuple(StrategyKind(s) for s in fields["strategies"])
        if "m_subsets" in fields:
            fields["m_subsets"] = tuple(int(v) for v in fields["m_subsets"])
        cfg = replace(cfg, **fields)
    problems = cfg.validate()
    if problems:
        raise ValueError("invalid configuration: " + "; ".join(problems))
    return cfg
