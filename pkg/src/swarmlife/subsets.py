"""Random subset-system generation with a bin model.

Robots are grouped into ``k`` observation bins: every bin is seeded with
one robot drawn uniformly without replacement, then the remaining robots
are thrown into bins uniformly. Robots in the same bin observe redundant
data, so a valid subset takes one robot per bin. Each bin then contributes
to every one of the ``m`` subsets:

* a bin with exactly ``m`` robots is dealt out one robot per subset;
* a larger bin gives every subset ``floor(size / m)`` robots and the
  surplus goes, one each, to randomly chosen subsets;
* a smaller bin duplicates uniformly drawn members until it can serve all
  ``m`` subsets (every original member still appears at least once).

The union of the subsets therefore covers all robots, and every subset has
at least ``k`` members. Requires ``n <= m * k``, the necessary condition
for covering every robot.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .seeding import as_rng
from .swarm import SubsetSystem


def assign_bins(n: int, k: int, rng: int | np.random.Generator | None) -> list[list[int]]:
    """Split ``n`` robot ids into ``k`` non-empty observation bins."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    rng = as_rng(rng)
    order = rng.permutation(n)
    bins: list[list[int]] = [[int(order[j])] for j in range(k)]
    for robot in order[k:]:
        bins[int(rng.integers(k))].append(int(robot))
    return bins


def _allocate_bin(members: list[int], m: int, rng: np.random.Generator) -> list[list[int]]:
    """Contributions of one bin to each of the ``m`` subsets."""
    size = len(members)
    if size < m:
        # Duplicate uniformly drawn members so the bin serves every subset.
        extras = [int(x) for x in rng.choice(members, size=m - size, replace=True)]
        pool = np.array(members + extras, dtype=np.intp)
        rng.shuffle(pool)
        return [[int(x)] for x in pool]
    pool = rng.permutation(np.asarray(members, dtype=np.intp))
    if size == m:
        return [[int(x)] for x in pool]
    base = size // m
    shares = [[int(x) for x in pool[j * base : (j + 1) * base]] for j in range(m)]
    surplus = pool[m * base :]
    lucky = rng.choice(m, size=surplus.size, replace=False)
    for subset_idx, robot in zip(lucky, surplus):
        shares[int(subset_idx)].append(int(robot))
    return shares


def generate_subsets(
    n: int, m: int, k: int, rng_seed: int | np.random.Generator | None
) -> SubsetSystem:
    """Draw a random subset system of ``m`` subsets over ``n`` robots.

    Identical seeds give identical systems. Raises ``ValueError`` when the
    coverage precondition ``n <= m * k`` fails or ``k`` exceeds ``n``.
    """
    if m < 1:
        raise ValueError(f"need at least one subset, got m={m}")
    if k > n:
        raise ValueError(f"bin count k={k} exceeds swarm size n={n}")
    if n > m * k:
        raise ValueError(
            f"cannot cover n={n} robots with m={m} subsets of {k} bins each "
            f"(need n <= m*k = {m * k})"
        )
    rng = as_rng(rng_seed)
    subsets: list[set[int]] = [set() for _ in range(m)]
    for bin_members in assign_bins(n, k, rng):
        for subset_idx, share in enumerate(_allocate_bin(bin_members, m, rng)):
            subsets[subset_idx].update(share)
    return SubsetSystem(n_robots=n, subsets=tuple(frozenset(s) for s in subsets), k_min=k)


def validate_subset_system(system: SubsetSystem) -> list[str]:
    """Return a list of structural violations; empty means valid."""
    problems: list[str] = []
    if system.n_subsets < 1:
        problems.append("system has no subsets")
    covered: set[int] = set()
    for m, subset in enumerate(system.subsets):
        for robot in sorted(subset):
            if not 0 <= robot < system.n_robots:
                problems.append(f"subset {m}: robot {robot} out of range [0, {system.n_robots})")
        if len(subset) < system.k_min:
            problems.append(
                f"subset {m}: only {len(subset)} members, need at least {system.k_min}"
            )
        covered |= subset
    for robot in range(system.n_robots):
        if robot not in covered:
            problems.append(f"robot {robot} appears in no subset")
    return problems


def subsets_to_dict(system: SubsetSystem) -> dict:
    return {
        "n": system.n_robots,
        "m": system.n_subsets,
        "k": system.k_min,
        "subsets": [sorted(s) for s in system.subsets],
    }


def subsets_from_dict(data: dict) -> SubsetSystem:
    system = SubsetSystem(
        n_robots=int(data["n"]),
        subsets=tuple(frozenset(int(r) for r in s) for s in data["subsets"]),
        k_min=int(data["k"]),
    )
    if "m" in data and int(data["m"]) != system.n_subsets:
        raise ValueError(
            f"subset file claims m={data['m']} but lists {system.n_subsets} subsets"
        )
    return system


def save_subsets(system: SubsetSystem, path: str | Path) -> None:
    Path(path).write_text(json.dumps(subsets_to_dict(system), indent=2) + "\n")


def load_subsets(path: str | Path) -> SubsetSystem:
    return subsets_from_dict(json.loads(Path(path).read_text()))
