"""Coverage kernels of axis-aligned boxes.

A *coverage kernel* of a finite set of closed boxes is a smallest subset
covering exactly the same region of space. This package computes them
exactly (branch-and-bound after reductions), approximately (greedy,
ln N + 1 factor), and by randomized rounding over a weight-doubling game
(expected O(k log k) for kernels of size k), all in exact rational
arithmetic with optional self-auditing data structures, plus generators
for random, polygon-derived, and provably-hard instances.
"""

from .discretize import (
    DEFAULT_MAX_CELLS,
    coverage_discretization,
    covers_all_points,
    covers_same_region,
    union_volume,
)
from .errors import (
    AuditError,
    BoxKernelError,
    InvalidInputError,
    ResourceLimitError,
    StateError,
)
from .exact import (
    DEFAULT_MAX_LIVE_BOXES,
    brute_force_kernel,
    exact_kernel,
    reduce_instance,
)
from .geometry import (
    Box,
    Instance,
    analyze_graph,
    bounding_box,
    build_intersection_graph,
    coverage_depths,
)
from .greedy import greedy_kernel
from .jsonio import (
    instance_digest,
    instance_from_obj,
    instance_to_obj,
    load_instance,
    result_from_obj,
    result_to_obj,
)
from .partition import PartitionTree, build_partition_tree
from .randomized import BGConfig, bg_kernel
from .results import KernelResult

__version__ = "0.1.0"

__all__ = [
    "AuditError",
    "BGConfig",
    "Box",
    "BoxKernelError",
    "DEFAULT_MAX_CELLS",
    "DEFAULT_MAX_LIVE_BOXES",
    "Instance",
    "InvalidInputError",
    "KernelResult",
    "PartitionTree",
    "ResourceLimitError",
    "StateError",
    "analyze_graph",
    "bg_kernel",
    "bounding_box",
    "brute_force_kernel",
    "build_intersection_graph",
    "build_partition_tree",
    "coverage_depths",
    "coverage_discretization",
    "covers_all_points",
    "covers_same_region",
    "exact_kernel",
    "greedy_kernel",
    "instance_digest",
    "instance_from_obj",
    "instance_to_obj",
    "load_instance",
    "reduce_instance",
    "result_from_obj",
    "result_to_obj",
    "union_volume",
    "__version__",
]
