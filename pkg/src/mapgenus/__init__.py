"""mapgenus: random d-regular combinatorial maps and their genus statistics.

Sampling of uniform configurations (perfect matchings on darts) and uniform
rotation systems, left-hand-turn face tracing, Euler-characteristic genus,
exact cycle-count expectation formulas, and a seeded Monte Carlo harness for
checking the growth of the expected face count and genus.
"""

__version__ = "0.1.0"

from .config_model import (
    CycleCensus,
    DartPairing,
    Multigraph,
    configuration_space_size,
    count_k_cycles,
    enumerate_configurations,
    is_simple,
    project_to_multigraph,
    sample_configuration,
)
from .expectations import (
    ExpectationTable,
    SmallFaceBound,
    a_k_asymptotic,
    a_k_exact,
    configuration_count,
    edge_set_probability,
    expectation_table,
    expected_k_cycles_exact,
    log_gamma,
    lower_bound_sum,
    potential_cycle_count,
    simple_probability_asymptotic,
    small_face_upper_bound,
)
from .experiments import (
    Aggregate,
    AggregateRow,
    BoundsReport,
    ExperimentSpec,
    TrialRecord,
    compare_bounds,
    export,
    run_trial,
    run_trials,
    svg_mean_faces,
)
from .fixtures import cube_map, disjoint_union, map_from_neighbor_lists, theta_map
from .mapio import (
    map_from_text,
    map_to_text,
    multigraph_to_dot,
    pairing_from_text,
    pairing_to_text,
    read_map,
    write_map,
)
from .roots import (
    RootPath,
    enumerate_roots,
    expected_root_count_bound,
    find_root_in_face,
    roots_of_faces,
    validate_root,
)
from .rotation_map import (
    CombinatorialMap,
    FaceDecomposition,
    RotationSystem,
    SurfaceStats,
    connected_components,
    flip_vertex,
    sample_map,
    sample_orientation,
    surface_stats,
    trace_faces,
)
