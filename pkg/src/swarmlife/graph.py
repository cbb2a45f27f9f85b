"""Subset correlation graph and least-degree iterative partitioning.

Vertices are subset indices; an edge joins two subsets whenever they share
at least one robot. Disjoint subsets give the null graph, subsets with a
common robot in every pair give the complete graph.

The partitioner repeatedly extracts a vertex of minimum degree in the
residual graph together with all of its remaining neighbours; the extracted
vertex becomes the group's representative (r-vertex). Because each
representative leaves the residual graph with its whole neighbourhood,
representatives of different groups are never adjacent, so their subsets
are pairwise disjoint and can be scheduled independently. Maximising the
number of groups is what stretches the swarm lifetime; this greedy is a
heuristic for that NP-hard objective, with ties among minimum-degree
vertices broken at random.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .seeding import as_rng
from .swarm import SubsetSystem

BRUTEFORCE_VERTEX_LIMIT = 12


@dataclass(frozen=True, eq=False)
class SubsetGraph:
    """Undirected correlation graph over subset indices."""

    n_vertices: int
    adjacency: np.ndarray

    def __post_init__(self) -> None:
        adj = np.asarray(self.adjacency, dtype=bool)
        if adj.shape != (self.n_vertices, self.n_vertices):
            raise ValueError("adjacency must be a square matrix over the vertices")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        object.__setattr__(self, "adjacency", adj)

    @property
    def degree(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[v])


@dataclass(frozen=True)
class Partition:
    """Groups produced by the partitioner, in extraction order.

    Each group is the closed neighbourhood of its representative in the
    residual graph at the moment it was extracted.
    """

    subgraphs: tuple[tuple[int, ...], ...]
    r_vertices: tuple[int, ...]

    @property
    def n_subgraphs(self) -> int:
        return len(self.subgraphs)


def build_subset_graph(system: SubsetSystem) -> SubsetGraph:
    """Edge between two subsets iff they intersect."""
    m = system.n_subsets
    adj = np.zeros((m, m), dtype=bool)
    for a in range(m):
        for b in range(a + 1, m):
            if system.subsets[a] & system.subsets[b]:
                adj[a, b] = adj[b, a] = True
    return SubsetGraph(n_vertices=m, adjacency=adj)


def ldip_partition(
    graph: SubsetGraph,
    rng: int | np.random.Generator | None = None,
    tie_break: str = "random",
) -> Partition:
    """Greedy least-degree partition of the correlation graph.

    Each round picks a minimum-degree vertex of the residual graph, makes
    it the representative of a new group holding it and all its remaining
    neighbours, removes the group, and recomputes degrees on the induced
    subgraph. ``tie_break="random"`` draws uniformly among tied vertices
    from the seeded generator; ``"lowest"`` always takes the smallest
    vertex id, which is handy for reproducible hand-traced tests.
    """
    if tie_break not in ("random", "lowest"):
        raise ValueError(f"unknown tie_break {tie_break!r}")
    rng = as_rng(rng)
    adj = graph.adjacency
    remaining = list(range(graph.n_vertices))
    subgraphs: list[tuple[int, ...]] = []
    r_vertices: list[int] = []
    while remaining:
        idx = np.asarray(remaining, dtype=np.intp)
        degrees = adj[np.ix_(idx, idx)].sum(axis=1)
        ties = idx[degrees == degrees.min()]
        if tie_break == "lowest" or ties.size == 1:
            pick = int(ties[0])
        else:
            pick = int(rng.choice(ties))
        group = [pick] + [v for v in remaining if v != pick and adj[pick, v]]
        subgraphs.append(tuple(sorted(group)))
        r_vertices.append(pick)
        removed = set(group)
        remaining = [v for v in remaining if v not in removed]
    return Partition(subgraphs=tuple(subgraphs), r_vertices=tuple(r_vertices))


def validate_partition(graph: SubsetGraph, partition: Partition) -> list[str]:
    """Check the partition invariants; returns violations, empty if valid.

    A representative must be adjacent to every other member of its group
    and to nothing else in the residual graph at its extraction point, and
    representatives must be pairwise non-adjacent in the full graph.
    """
    problems: list[str] = []
    adj = graph.adjacency
    if len(partition.subgraphs) != len(partition.r_vertices):
        return ["one representative per group is required"]
    seen: set[int] = set()
    remaining = set(range(graph.n_vertices))
    for j, (members, rep) in enumerate(zip(partition.subgraphs, partition.r_vertices)):
        group = set(members)
        if rep not in group:
            problems.append(f"group {j}: representative {rep} is not a member")
        overlap = group & seen
        if overlap:
            problems.append(f"group {j}: vertices {sorted(overlap)} already assigned")
        residual_nb = {v for v in remaining if v != rep and adj[rep, v]}
        if residual_nb != group - {rep}:
            problems.append(
                f"group {j}: members must equal the residual closed neighbourhood "
                f"of {rep} (expected {sorted(residual_nb | {rep})}, got {sorted(group)})"
            )
        seen |= group
        remaining -= group
    if remaining:
        problems.append(f"vertices {sorted(remaining)} are in no group")
    reps = partition.r_vertices
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            if adj[reps[a], reps[b]]:
                problems.append(
                    f"representatives {reps[a]} and {reps[b]} are adjacent"
                )
    return problems


def count_max_subgraphs_bruteforce(graph: SubsetGraph) -> int:
    """Exact maximum group count, by exhausting extraction choices.

    Explores every sequence of "pick any residual vertex, remove its closed
    residual neighbourhood" moves with memoisation on the residual vertex
    set. Serves as the optimality oracle for the greedy partitioner; limited
    to small graphs.
    """
    if graph.n_vertices > BRUTEFORCE_VERTEX_LIMIT:
        raise ValueError(
            f"exhaustive search is limited to {BRUTEFORCE_VERTEX_LIMIT} vertices"
        )
    neighbor_sets = [frozenset(int(u) for u in graph.neighbors(v)) for v in range(graph.n_vertices)]
    memo: dict[frozenset[int], int] = {}

    def best(residual: frozenset[int]) -> int:
        if not residual:
            return 0
        cached = memo.get(residual)
        if cached is not None:
            return cached
        value = max(
            1 + best(residual - (neighbor_sets[v] & residual) - {v})
            for v in residual
        )
        memo[residual] = value
        return value

    return best(frozenset(range(graph.n_vertices)))


def export_dot(graph: SubsetGraph, partition: Partition | None = None) -> str:
    """Render the graph (and optionally a partition) as DOT text.

    Groups become clusters and representatives are drawn filled, matching
    the usual visual of circled groups with highlighted representatives.
    """
    lines = ["graph subset_correlation {", "  node [shape=circle];"]
    if partition is None:
        for v in range(graph.n_vertices):
            lines.append(f"  v{v};")
    else:
        for j, (members, rep) in enumerate(zip(partition.subgraphs, partition.r_vertices)):
            lines.append(f"  subgraph cluster_{j} {{")
            lines.append(f'    label="group {j}";')
            for v in members:
                if v == rep:
                    lines.append(f'    v{v} [style=filled, fillcolor="lightblue"];')
                else:
                    lines.append(f"    v{v};")
            lines.append("  }")
    for a in range(graph.n_vertices):
        for b in range(a + 1, graph.n_vertices):
            if graph.adjacency[a, b]:
                lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(graph: SubsetGraph) -> dict:
    return {
        "n_vertices": graph.n_vertices,
        "adjacency": [[int(u) for u in graph.neighbors(v)] for v in range(graph.n_vertices)],
    }


def graph_from_dict(data: dict) -> SubsetGraph:
    n = int(data["n_vertices"])
    adj = np.zeros((n, n), dtype=bool)
    for v, neighbors in enumerate(data["adjacency"]):
        for u in neighbors:
            adj[v, int(u)] = True
    return SubsetGraph(n_vertices=n, adjacency=adj)


def partition_to_dict(partition: Partition) -> dict:
    return {
        "subgraphs": [list(group) for group in partition.subgraphs],
        "r_vertices": list(partition.r_vertices),
    }


def save_graph(graph: SubsetGraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(graph_to_dict(graph), indent=2) + "\n")


def load_graph(path: str | Path) -> SubsetGraph:
    return graph_from_dict(json.loads(Path(path).read_text()))
