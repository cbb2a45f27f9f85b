"""Single-run lifetime simulation.

Each task: draw fresh channel gains for every robot, ask the strategy for
a transmitting subset with adapted powers, apply the energy update, and
stop at the first task that cannot happen. Gains are drawn for unselected
robots too, so two strategies running under the same seed see identical
channel realisations task for task (paired comparisons).

A run ends one of three ways: a robot would go below zero energy, the
strategy finds no channel-feasible subset (``on_infeasible="terminate"``,
the default; ``"skip"`` instead charges everyone the task cost and moves
on without counting a completed task), or the task budget runs out.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .bounds import bound_line_search
from .channel import KIND_AWGN, ChannelModel
from .graph import Partition, build_subset_graph, ldip_partition
from .strategies import StrategyKind, SubsetSelector
from .swarm import (
    RobotParams,
    SubsetSystem,
    SwarmState,
    Terminated,
    apply_task,
    depletion_tolerance,
    new_swarm,
)

TERM_ENERGY_DEPLETED = "energy_depleted"
TERM_INFEASIBLE = "infeasible_channel"
TERM_MAX_TASKS = "max_tasks_reached"

# Headroom multiplier between the analytical lifetime bound and the hard
# task budget that guarantees halting.
_BUDGET_HEADROOM = 10

_ORACLE_SUBSET_LIMIT = 4
_ORACLE_LIFETIME_LIMIT = 30


@dataclass(frozen=True, eq=False)
class LifetimeRecord:
    """Outcome of one complete swarm life.

    ``lifetime`` counts completed tasks. ``transmit_count`` and
    ``transmit_energy`` are per-robot accumulators from the final state;
    ``tasks_skipped`` counts infeasible tasks that were skipped rather than
    fatal (always 0 under the default policy).
    """

    lifetime: int
    transmit_count: np.ndarray
    transmit_energy: np.ndarray
    termination: str
    depleted_robot: int | None
    tasks_skipped: int
    partition: Partition | None
    final_state: SwarmState


def default_max_tasks(
    system: SubsetSystem, params: RobotParams, model: ChannelModel, t_c: float
) -> int:
    """Halting budget: ten times an optimistic analytical lifetime bound.

    The bound treats all subsets as independently schedulable at the
    reference (unit gain) power, which no strategy can beat in AWGN;
    fading runs sit far below it in expectation, so the headroom makes a
    budget-capped run an extreme outlier rather than a truncation.
    """
    n = system.n_robots
    init = np.broadcast_to(np.asarray(params.initial_energy, dtype=float), (n,))
    coding = np.broadcast_to(np.asarray(params.coding_cost, dtype=float), (n,))
    task_cost = np.broadcast_to(np.asarray(params.task_cost, dtype=float), (n,))
    p_tc = model.reference_power * t_c
    if p_tc + coding.min() <= 0:
        raise ValueError("zero transmission cost: pass max_tasks explicitly")
    mins = [float(init[system.members(m)].min()) for m in range(system.n_subsets)]
    bound = bound_line_search(
        mins, system.n_subsets, p_tc, float(coding.min()), float(task_cost.min())
    )
    return max(_BUDGET_HEADROOM * bound, 1)


def run_lifetime(
    system: SubsetSystem,
    strategy: StrategyKind | str,
    model: ChannelModel,
    params: RobotParams,
    t_c: float = 1.0,
    rng_seed: int = 0,
    max_tasks: int | None = None,
    on_infeasible: str = "terminate",
) -> LifetimeRecord:
    """Simulate one swarm life under the given selection strategy.

    The seed fully determines the run: it is split into independent streams
    for the channel draws and for partitioning tie-breaks, so runs that
    share a seed but differ in strategy still face the same channels.
    """
    if on_infeasible not in ("terminate", "skip"):
        raise ValueError(f"on_infeasible must be 'terminate' or 'skip', got {on_infeasible!r}")
    kind = StrategyKind(strategy)
    root = np.random.SeedSequence(rng_seed)
    channel_stream, tie_stream = root.spawn(2)
    channel_rng = np.random.default_rng(channel_stream)

    partition = None
    if kind in (StrategyKind.LDIP_R_VERTICES, StrategyKind.LDIP_ALL):
        partition = ldip_partition(
            build_subset_graph(system), rng=np.random.default_rng(tie_stream)
        )

    n = system.n_robots
    state = new_swarm(
        n, params.initial_energy, params.task_cost, params.coding_cost, params.power_cap
    )
    selector = SubsetSelector(kind, system, model, t_c, partition)
    budget = default_max_tasks(system, params, model, t_c) if max_tasks is None else max_tasks

    skipped = 0
    termination = TERM_MAX_TASKS
    depleted_robot: int | None = None
    while state.task_index + skipped < budget:
        draw = model.draw_gains(n, channel_rng)
        selection = selector.select(state, draw)
        if selection is None:
            if on_infeasible == "terminate":
                termination = TERM_INFEASIBLE
                break
            # Skip: the task is attempted but no data gets through; the
            # execution cost is still paid and the lifetime does not grow.
            drained = state.remaining_energy - state.task_cost
            dead = np.flatnonzero(drained < -depletion_tolerance(state.initial_energy))
            if dead.size:
                termination = TERM_ENERGY_DEPLETED
                depleted_robot = int(dead[0])
                break
            np.copyto(drained, 0.0, where=np.abs(drained) <= depletion_tolerance(state.initial_energy))
            state = replace(state, remaining_energy=drained)
            skipped += 1
            continue
        result = apply_task(state, selection.members, selection.powers, t_c)
        if isinstance(result, Terminated):
            termination = TERM_ENERGY_DEPLETED
            depleted_robot = result.depleted[0]
            state = result.state
            break
        state = result

    return LifetimeRecord(
        lifetime=state.task_index,
        transmit_count=state.transmit_count,
        transmit_energy=state.transmit_energy,
        termination=termination,
        depleted_robot=depleted_robot,
        tasks_skipped=skipped,
        partition=partition,
        final_state=state,
    )


def exhaustive_optimal_lifetime(
    system: SubsetSystem,
    model: ChannelModel,
    params: RobotParams,
    t_c: float = 1.0,
) -> int:
    """True maximum lifetime over every possible selection sequence.

    Depth-first search over "which subset transmits next", memoised on the
    remaining-energy vector. Only meaningful in AWGN, where channel draws
    are constant and the search space closes; restricted to tiny instances
    (at most 4 subsets, analytic lifetime bound at most 30 tasks). Serves
    as the optimality oracle for the selection strategies.
    """
    if model.kind != KIND_AWGN:
        raise ValueError("the exhaustive oracle supports the AWGN channel only")
    if system.n_subsets > _ORACLE_SUBSET_LIMIT:
        raise ValueError(f"exhaustive search is limited to {_ORACLE_SUBSET_LIMIT} subsets")

    n = system.n_robots
    state = new_swarm(
        n, params.initial_energy, params.task_cost, params.coding_cost, params.power_cap
    )
    power = model.reference_power
    feasible = power <= state.power_cap * (1.0 + 1e-9)
    member_sets = [system.members(m) for m in range(system.n_subsets)]
    usable = [mem for mem in member_sets if feasible[mem].all()]
    if not usable:
        return 0
    mins = [float(state.initial_energy[mem].min()) for mem in usable]
    bound = bound_line_search(
        mins,
        len(usable),
        power * t_c,
        float(state.coding_cost.min()),
        float(state.task_cost.min()),
    )
    if bound > _ORACLE_LIFETIME_LIMIT:
        raise ValueError(
            f"instance lifetime bound {bound} exceeds the search limit "
            f"{_ORACLE_LIFETIME_LIMIT}"
        )

    tol = depletion_tolerance(state.initial_energy)
    tx_cost = power * t_c + state.coding_cost
    task_cost = state.task_cost
    memo: dict[bytes, int] = {}

    def best(energy: np.ndarray) -> int:
        key = np.round(energy, 9).tobytes()
        cached = memo.get(key)
        if cached is not None:
            return cached
        value = 0
        for mem in usable:
            nxt = energy - task_cost
            nxt[mem] -= tx_cost[mem]
            if (nxt < -tol).any():
                continue
            value = max(value, 1 + best(nxt))
        memo[key] = value
        return value

    return best(state.remaining_energy.copy())
