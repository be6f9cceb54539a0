"""Replication-rate limits of single-round map-reduce: problems, mapping schemas,
lower bounds, brute-force oracles and a simulator."""

from .bounds import (
    BoundResult,
    generic_lower_bound,
    hd1_cover_bound,
    hd1_lower_bound,
    lower_bound,
    multiway_join_bound_estimate,
    stirling_central,
    triangle_cover_bound,
    triangle_lower_bound,
    universe_counts,
    weight_cell_estimate,
)
from .executor import Instance, RunReport, generate_instance, run
from .model import (
    Kind,
    MappingSchema,
    Problem,
    SchemaReport,
    SpecError,
    UniverseTooLarge,
    enumerate_inputs,
    enumerate_outputs,
    parse_problem,
    replication_of,
    replication_rate,
    verify_schema,
)
from .oracle import BudgetExceeded, CoverSearchResult, max_coverable_outputs, solve_instance
from .problems import hd1_neighbors, local_solve
from .schemas import (
    groupby_hash_a,
    hd1_pairwise,
    hd1_single,
    hd1_splitting,
    hd1_weight,
    join_hash_b,
    parse_schema,
    triangle_partition,
)

__version__ = "0.1.0"
