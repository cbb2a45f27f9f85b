"""Robot swarm lifetime simulation for correlated-data computation offloading."""

from .bounds import (
    analytic_avg_powers,
    bound_fading,
    bound_lemma1,
    bound_line_search,
    bound_theorem2,
    measured_avg_powers,
)
from .channel import (
    KIND_AWGN,
    KIND_RAYLEIGH,
    ChannelDraw,
    ChannelModel,
    Infeasible,
    avg_adapted_power,
    capacity,
    feasible_subset,
    required_power,
)
from .config import RunConfig, load_config
from .engine import (
    LifetimeRecord,
    default_max_tasks,
    exhaustive_optimal_lifetime,
    run_lifetime,
)
from .graph import (
    Partition,
    SubsetGraph,
    build_subset_graph,
    count_max_subgraphs_bruteforce,
    export_dot,
    ldip_partition,
    validate_partition,
)
from .harness import ExperimentResult, run_experiment, summarize
from .seeding import derive_seed
from .strategies import Selection, StrategyKind, SubsetSelector, round_robin_cursor
from .subsets import generate_subsets, validate_subset_system
from .swarm import (
    Robot,
    RobotParams,
    SubsetSystem,
    SwarmState,
    Terminated,
    apply_task,
    new_swarm,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelDraw",
    "ChannelModel",
    "ExperimentResult",
    "Infeasible",
    "KIND_AWGN",
    "KIND_RAYLEIGH",
    "LifetimeRecord",
    "Partition",
    "Robot",
    "RobotParams",
    "RunConfig",
    "Selection",
    "StrategyKind",
    "SubsetGraph",
    "SubsetSelector",
    "SubsetSystem",
    "SwarmState",
    "Terminated",
    "analytic_avg_powers",
    "apply_task",
    "avg_adapted_power",
    "bound_fading",
    "bound_lemma1",
    "bound_line_search",
    "bound_theorem2",
    "build_subset_graph",
    "capacity",
    "count_max_subgraphs_bruteforce",
    "default_max_tasks",
    "derive_seed",
    "exhaustive_optimal_lifetime",
    "export_dot",
    "feasible_subset",
    "generate_subsets",
    "ldip_partition",
    "load_config",
    "measured_avg_powers",
    "new_swarm",
    "required_power",
    "round_robin_cursor",
    "run_experiment",
    "run_lifetime",
    "summarize",
    "validate_partition",
    "validate_subset_system",
]
