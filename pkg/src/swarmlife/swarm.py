"""Core swarm state and per-task energy accounting.

A swarm is a set of battery-powered robots that repeatedly execute tasks.
For each task one group of robots transmits its sensed data uplink; a
transmitting robot pays radio energy (power times airtime) plus a fixed
coding overhead, and every robot pays a fixed execution cost whether or
not it transmits. The swarm is alive while every robot's remaining energy
is non-negative; a task that would push any robot below zero does not
happen, and the previous task was the last one.

State transitions are pure: operations return new ``SwarmState`` values
and never mutate their inputs, so states can be shared freely across
trials and threads.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

import numpy as np

MIN_SWARM_SIZE = 3

# Energies within this relative band of zero count as exactly zero. Adapted
# transmit powers are irrational in general, so a budget meant for exactly
# 200 transmissions must not die to float dust on the 200th task.
ENERGY_RTOL = 1e-9


@dataclass(frozen=True)
class Robot:
    """Snapshot of one robot's energy state and per-task costs."""

    id: int
    initial_energy: float
    remaining_energy: float
    task_cost: float
    comm_coding_cost: float
    power_cap: float


@dataclass(frozen=True)
class RobotParams:
    """Per-robot configuration used to build a swarm; scalars broadcast."""

    initial_energy: float | Sequence[float]
    task_cost: float | Sequence[float] = 0.0
    coding_cost: float | Sequence[float] = 0.0
    power_cap: float | Sequence[float] = np.inf


@dataclass(frozen=True)
class SubsetSystem:
    """A family of robot subsets over one swarm.

    Any single subset carries enough combined information for the offloaded
    computation, so per task exactly one subset needs to transmit. Subsets
    may overlap; overlaps are what limit how independently they can be
    scheduled.
    """

    n_robots: int
    subsets: tuple[frozenset[int], ...]
    k_min: int

    def __post_init__(self) -> None:
        canonical = tuple(frozenset(int(r) for r in s) for s in self.subsets)
        object.__setattr__(self, "subsets", canonical)

    @property
    def n_subsets(self) -> int:
        return len(self.subsets)

    def members(self, m: int) -> np.ndarray:
        """Sorted member ids of subset ``m``."""
        return np.array(sorted(self.subsets[m]), dtype=np.intp)


@dataclass(frozen=True, eq=False)
class SwarmState:
    """Value-type swarm state after ``task_index`` completed tasks.

    ``transmit_count`` and ``transmit_energy`` accumulate, per robot, how
    many times it transmitted and the total energy those transmissions cost
    (radio plus coding overhead).
    """

    initial_energy: np.ndarray
    remaining_energy: np.ndarray
    task_cost: np.ndarray
    coding_cost: np.ndarray
    power_cap: np.ndarray
    task_index: int
    transmit_count: np.ndarray
    transmit_energy: np.ndarray

    @property
    def n_robots(self) -> int:
        return self.initial_energy.shape[0]

    def robot(self, n: int) -> Robot:
        return Robot(
            id=n,
            initial_energy=float(self.initial_energy[n]),
            remaining_energy=float(self.remaining_energy[n]),
            task_cost=float(self.task_cost[n]),
            comm_coding_cost=float(self.coding_cost[n]),
            power_cap=float(self.power_cap[n]),
        )

    @property
    def robots(self) -> tuple[Robot, ...]:
        return tuple(self.robot(n) for n in range(self.n_robots))


@dataclass(frozen=True)
class Terminated:
    """Returned when a task would drive some robot's energy negative.

    The task did not happen: ``state`` is the last viable state and
    ``completed_tasks`` is the number of tasks that did complete.
    """

    state: SwarmState
    completed_tasks: int
    depleted: tuple[int, ...]


def _per_robot(value, n: int, name: str, allow_inf: bool = False) -> np.ndarray:
    arr = np.broadcast_to(np.asarray(value, dtype=float), (n,)).copy()
    if np.isnan(arr).any() or (arr < 0).any():
        raise ValueError(f"{name} must be non-negative")
    if not allow_inf and np.isinf(arr).any():
        raise ValueError(f"{name} must be finite")
    return arr


def new_swarm(
    n: int,
    initial_energy: float | Sequence[float],
    task_cost: float | Sequence[float] = 0.0,
    coding_cost: float | Sequence[float] = 0.0,
    power_cap: float | Sequence[float] = np.inf,
) -> SwarmState:
    """Build a fresh swarm of ``n`` robots with zeroed task counters.

    Scalar parameters apply to every robot; sequences give per-robot
    values. Raises ``ValueError`` for swarms below the minimum size of
    three robots.
    """
    if n < MIN_SWARM_SIZE:
        raise ValueError(
            f"a robot swarm needs at least {MIN_SWARM_SIZE} robots, got {n}"
        )
    init = _per_robot(initial_energy, n, "initial_energy")
    return SwarmState(
        initial_energy=init,
        remaining_energy=init.copy(),
        task_cost=_per_robot(task_cost, n, "task_cost"),
        coding_cost=_per_robot(coding_cost, n, "coding_cost"),
        power_cap=_per_robot(power_cap, n, "power_cap", allow_inf=True),
        task_index=0,
        transmit_count=np.zeros(n, dtype=np.int64),
        transmit_energy=np.zeros(n, dtype=float),
    )


def depletion_tolerance(initial_energy: np.ndarray) -> np.ndarray:
    """Per-robot band around zero inside which energy counts as zero."""
    return ENERGY_RTOL * np.maximum(1.0, initial_energy)


def apply_task(
    state: SwarmState,
    selected: Iterable[int],
    powers: Mapping[int, float] | Sequence[float] | np.ndarray,
    t_c: float,
) -> SwarmState | Terminated:
    """Run one task: ``selected`` robots transmit, everybody works.

    Selected robots lose ``power * t_c`` plus their coding overhead plus the
    task execution cost; unselected robots lose the execution cost only.
    ``powers`` is either a mapping robot id -> transmit power or a sequence
    aligned with ``selected``. Powers above a robot's cap raise
    ``ValueError``; channel feasibility is the caller's job.

    Returns the next state, or ``Terminated`` when any robot would end the
    task below zero energy (an exact zero still counts as alive).
    """
    ids = np.asarray(list(selected), dtype=np.intp)
    if isinstance(powers, Mapping):
        try:
            pvec = np.array([float(powers[int(i)]) for i in ids], dtype=float)
        except KeyError as exc:
            raise ValueError(f"no transmit power given for robot {exc.args[0]}") from exc
    else:
        pvec = np.asarray(powers, dtype=float)
        if pvec.shape != ids.shape:
            raise ValueError("powers must align one-to-one with selected ids")
    if ids.size and np.unique(ids).size != ids.size:
        raise ValueError("selected robot ids must be unique")

    over = pvec > state.power_cap[ids] * (1.0 + ENERGY_RTOL)
    if over.any():
        bad = ", ".join(str(int(i)) for i in ids[over])
        raise ValueError(f"transmit power above cap for robots: {bad}")

    tol = depletion_tolerance(state.initial_energy)
    energy = state.remaining_energy - state.task_cost
    tx = pvec * t_c + state.coding_cost[ids]
    energy[ids] -= tx

    dead = np.flatnonzero(energy < -tol)
    if dead.size:
        return Terminated(
            state=state,
            completed_tasks=state.task_index,
            depleted=tuple(int(d) for d in dead),
        )

    np.copyto(energy, 0.0, where=np.abs(energy) <= tol)
    zeta = state.transmit_energy.copy()
    zeta[ids] += tx
    count = state.transmit_count.copy()
    count[ids] += 1
    return replace(
        state,
        remaining_energy=energy,
        transmit_count=count,
        transmit_energy=zeta,
        task_index=state.task_index + 1,
    )
