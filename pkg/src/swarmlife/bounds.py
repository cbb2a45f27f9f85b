"""Analytical swarm-lifetime bounds.

All bounds take the per-transmission radio energy as ``p_tc`` (power times
airtime), the coding overhead ``eps_c`` paid per transmission, and the task
execution cost ``eps_t`` paid by every robot every task. Several bounds are
self-referential (the right side depends on the candidate lifetime) and are
resolved by an integer line search; the feasibility predicate is monotone,
so the first failure ends the search.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .channel import ChannelModel, avg_adapted_power
from .graph import Partition
from .swarm import SubsetSystem, SwarmState

# Floors are nudged so that values a hair under an integer (float dust from
# division) still floor to it.
_FLOOR_EPS = 1e-9


def _ifloor(x: float) -> int:
    return math.floor(x + _FLOOR_EPS)


def bound_lemma1(e0: float, p_tc: float, eps_c: float = 0.0, eps_t: float = 0.0) -> int:
    """Lifetime when some robot must transmit every task.

    Applies with identical initial energies and a robot common to all
    subsets: that robot pays the full per-task cost each time, so the
    lifetime is the whole number of tasks its budget covers.
    """
    denom = p_tc + eps_c + eps_t
    if denom <= 0:
        raise ValueError("per-task cost must be positive")
    return _ifloor(e0 / denom)


def bound_line_search(
    e0_or_mins: float | Sequence[float],
    m_groups: int,
    p_tc: float,
    eps_c: float = 0.0,
    eps_t: float = 0.0,
) -> int:
    """Largest lifetime allowed by per-group transmission budgets.

    ``e0_or_mins`` is either one energy shared by all groups or the minimum
    initial energy of each of the ``m_groups`` pairwise-disjoint groups.
    Group ``g`` can transmit ``floor((min_g - i * eps_t) / (p_tc + eps_c))``
    times within a lifetime of ``i`` tasks, and the groups together must
    cover one transmission per task. Returns the largest ``i`` satisfying
    the (monotone) budget inequality.
    """
    if isinstance(e0_or_mins, (int, float)):
        mins = [float(e0_or_mins)] * m_groups
    else:
        mins = [float(e) for e in e0_or_mins]
        if len(mins) != m_groups:
            raise ValueError(f"expected {m_groups} group minima, got {len(mins)}")
    if any(e < 0 for e in mins):
        raise ValueError("group energies must be non-negative")
    cost = p_tc + eps_c
    if cost <= 0:
        raise ValueError("per-transmission cost must be positive")

    def budget(i: int) -> int:
        return sum(_ifloor((e - i * eps_t) / cost) for e in mins)

    if eps_t == 0:
        return budget(0)
    i = 0
    prev = budget(1)
    while i + 1 <= prev:
        i += 1
        nxt = budget(i + 1)
        assert nxt <= prev, "budget must be non-increasing in the lifetime"
        prev = nxt
    return i


def bound_theorem2(
    min_common: float,
    per_subset_mins_excl_common: Sequence[float],
    m: int,
    p_tc: float,
    eps_c: float = 0.0,
    eps_t: float = 0.0,
) -> tuple[int, bool]:
    """Upper bound with a shared core of robots, plus its achievability.

    Robots common to all subsets transmit every task, so the weakest of
    them caps the lifetime. The bound is achievable only if the remaining
    (non-core) parts of the subsets can jointly supply that many
    transmissions; ``per_subset_mins_excl_common`` holds the minimum
    initial energy of each subset with the core removed (``inf`` for a
    subset that is pure core).
    """
    mins = [float(e) for e in per_subset_mins_excl_common]
    if len(mins) != m:
        raise ValueError(f"expected {m} per-subset minima, got {len(mins)}")
    upper = bound_lemma1(min_common, p_tc, eps_c, eps_t)
    cost = p_tc + eps_c
    if cost <= 0:
        raise ValueError("per-transmission cost must be positive")
    total = 0.0
    for e in mins:
        total += math.inf if math.isinf(e) else _ifloor((e - upper * eps_t) / cost)
    return upper, upper <= total


def bound_fading(
    initial_energies: Sequence[float] | np.ndarray,
    avg_powers: Sequence[float] | np.ndarray,
    partition: Partition,
    system: SubsetSystem,
    t_c: float,
    eps_c: float = 0.0,
    eps_t: float = 0.0,
) -> int:
    """Line-search lifetime bound with robot-dependent average powers.

    Each representative group is limited by its weakest member, where a
    member's transmission budget uses its own average adapted power. With
    equal powers and energies this collapses to ``bound_line_search`` over
    the representative groups.
    """
    e0 = np.asarray(initial_energies, dtype=float)
    p_avg = np.asarray(avg_powers, dtype=float)
    if e0.shape != p_avg.shape:
        raise ValueError("initial_energies and avg_powers must align")
    groups = [system.members(r) for r in partition.r_vertices]
    if not groups:
        return 0
    denom = p_avg * t_c + eps_c
    for members in groups:
        if (denom[members] <= 0).any():
            raise ValueError("average per-transmission cost must be positive")

    def budget(i: int) -> float:
        total = 0
        for members in groups:
            total += min(_ifloor((e0[n] - i * eps_t) / denom[n]) for n in members)
        return total

    if eps_t == 0:
        return int(budget(0))
    i = 0
    prev = budget(1)
    while i + 1 <= prev:
        i += 1
        nxt = budget(i + 1)
        assert nxt <= prev, "budget must be non-increasing in the lifetime"
        prev = nxt
    return i


def analytic_avg_powers(model: ChannelModel, caps: Sequence[float] | np.ndarray) -> np.ndarray:
    """Expected adapted power per robot from the channel statistics."""
    return np.array([avg_adapted_power(model, float(c)) for c in np.asarray(caps, dtype=float)])


def measured_avg_powers(
    state: SwarmState, t_c: float, fill: float = math.nan
) -> np.ndarray:
    """Average transmit power each robot actually used during a run.

    Takes the run's final state and inverts the accumulated transmit
    energy; robots that never transmitted get ``fill`` (substitute the
    analytic expectation for those before feeding the result to
    ``bound_fading``).
    """
    count = state.transmit_count
    out = np.full(count.shape, float(fill))
    sel = count > 0
    out[sel] = (state.transmit_energy[sel] - count[sel] * state.coding_cost[sel]) / (
        count[sel] * t_c
    )
    return out
