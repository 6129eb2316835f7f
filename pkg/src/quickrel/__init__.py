"""Quickest-path reliability for multi-state flow networks.

Finds the minimal arc-capacity vectors that let ``d`` units of data cross
one source-sink path within ``T`` time units. No minimal-path list is needed
as input. Exact and Monte Carlo reliability are built on top of them.
"""

from .enumerator import TraceEvent, enumerate_all_mps, find_feasible_paths, find_minimal_vectors
from .model import (
    Arc,
    Network,
    NetworkError,
    NodeChildMatrix,
    Query,
    arc_between,
    build_node_child_matrix,
    make_network,
    validate_network,
)
from .qpath import (
    UNBOUNDED,
    MinimalPath,
    arc_transmission_time,
    min_required_capacity,
    path_capacity,
    path_lead_time,
    path_transmission_time,
)
from .reliability import (
    ArcStateDistribution,
    MonteCarloResult,
    ReliabilityResult,
    TooManyVectorsError,
    monte_carlo_reliability,
    pr_at_least,
    union_probability,
)

__all__ = [
    "Arc",
    "ArcStateDistribution",
    "MinimalPath",
    "MonteCarloResult",
    "Network",
    "NetworkError",
    "NodeChildMatrix",
    "Query",
    "ReliabilityResult",
    "TooManyVectorsError",
    "TraceEvent",
    "UNBOUNDED",
    "arc_between",
    "arc_transmission_time",
    "build_node_child_matrix",
    "enumerate_all_mps",
    "find_feasible_paths",
    "find_minimal_vectors",
    "make_network",
    "min_required_capacity",
    "monte_carlo_reliability",
    "path_capacity",
    "path_lead_time",
    "path_transmission_time",
    "pr_at_least",
    "union_probability",
    "validate_network",
]
