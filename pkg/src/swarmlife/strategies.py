"""Per-task subset selection policies.

Four policies are provided:

* ``conventional``: every robot transmits every task (single-user
  equivalent offloading, no subset structure exploited).
* ``maxmin``: among channel-feasible subsets, greedily pick the one whose
  selection leaves the highest minimum projected residual energy across
  the whole swarm.
* ``ldip-r``: only representative subsets from the graph partition are
  candidates. In AWGN they are used round robin; in fading the max-min
  rule decides among the feasible ones.
* ``ldip-all``: max-min over feasible representative subsets first, then
  over the remaining feasible subsets when no representative works.

All policies enforce the capacity criterion uniformly: a subset with any
member that cannot meet the rate target within its power cap is never
chosen, and ``select`` returns ``None`` when no candidate is usable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import numpy as np

from .channel import KIND_AWGN, FEASIBILITY_RTOL, ChannelDraw, ChannelModel
from .graph import Partition
from .swarm import SubsetSystem, SwarmState


class StrategyKind(str, Enum):
    CONVENTIONAL = "conventional"
    MAXMIN = "maxmin"
    LDIP_R_VERTICES = "ldip-r"
    LDIP_ALL = "ldip-all"


@dataclass(frozen=True, eq=False)
class Selection:
    """Chosen transmitters with their adapted powers (aligned arrays)."""

    members: np.ndarray
    powers: np.ndarray
    subset_index: int | None


def round_robin_cursor(partition: Partition) -> Iterator[int]:
    """Endless cyclic iterator over the partition's group indices."""
    if partition.n_subgraphs < 1:
        raise ValueError("round robin needs at least one group")
    return itertools.cycle(range(partition.n_subgraphs))


class SubsetSelector:
    """Policy state for one simulation run.

    The selector owns the round-robin cursor, so one instance must not be
    shared between runs. Everything else is a pure function of the swarm
    state and the channel draw.
    """

    def __init__(
        self,
        kind: StrategyKind | str,
        system: SubsetSystem,
        model: ChannelModel,
        t_c: float = 1.0,
        partition: Partition | None = None,
    ) -> None:
        self.kind = StrategyKind(kind)
        self.system = system
        self.model = model
        self.t_c = float(t_c)
        self.partition = partition
        self._members = [system.members(m) for m in range(system.n_subsets)]
        self._all_robots = np.arange(system.n_robots, dtype=np.intp)
        if self.kind in (StrategyKind.LDIP_R_VERTICES, StrategyKind.LDIP_ALL):
            if partition is None:
                raise ValueError(f"strategy {self.kind.value} requires a partition")
            self._r_subsets = list(partition.r_vertices)
            rest = set(range(system.n_subsets)) - set(self._r_subsets)
            self._other_subsets = sorted(rest)
            self._cursor = round_robin_cursor(partition)
        else:
            self._r_subsets = []
            self._other_subsets = []
            self._cursor = None

    def select(self, state: SwarmState, draw: ChannelDraw) -> Selection | None:
        """Pick this task's transmitters, or ``None`` when nothing is feasible."""
        required = self.model.required_powers(draw.gains)
        feasible = required <= state.power_cap * (1.0 + FEASIBILITY_RTOL)
        if self.kind is StrategyKind.CONVENTIONAL:
            if not feasible.all():
                return None
            return Selection(
                members=self._all_robots, powers=required, subset_index=None
            )
        if self.kind is StrategyKind.MAXMIN:
            return self._pick_maxmin(range(self.system.n_subsets), state, required, feasible)
        if self.kind is StrategyKind.LDIP_R_VERTICES:
            if self.model.kind == KIND_AWGN:
                return self._pick_round_robin(required, feasible)
            return self._pick_maxmin(self._r_subsets, state, required, feasible)
        # ldip-all: prefer representatives, fall back to the other subsets.
        choice = self._pick_maxmin(self._r_subsets, state, required, feasible)
        if choice is None:
            choice = self._pick_maxmin(self._other_subsets, state, required, feasible)
        return choice

    def _selection(self, m: int, required: np.ndarray) -> Selection:
        members = self._members[m]
        return Selection(members=members, powers=required[members], subset_index=m)

    def _pick_round_robin(self, required, feasible) -> Selection | None:
        # Constant gains make every group equally good, so just cycle them;
        # infeasible groups (possible only with heterogeneous caps) are
        # skipped for this task.
        for _ in range(self.partition.n_subgraphs):
            m = self._r_subsets[next(self._cursor)]
            if feasible[self._members[m]].all():
                return self._selection(m, required)
        return None

    def _pick_maxmin(self, candidates, state, required, feasible) -> Selection | None:
        """Feasible candidate maximising the post-task minimum energy.

        The projection charges members the adapted transmit energy for the
        current draw and everybody the task execution cost. Ties go to the
        smallest subset index.
        """
        base = state.remaining_energy - state.task_cost
        best_m = -1
        best_value = -np.inf
        for m in candidates:
            members = self._members[m]
            if not feasible[members].all():
                continue
            projected = base.copy()
            projected[members] -= required[members] * self.t_c + state.coding_cost[members]
            value = projected.min() if projected.size else 0.0
            if value > best_value:
                best_value = value
                best_m = m
        if best_m < 0:
            return None
        return self._selection(best_m, required)
