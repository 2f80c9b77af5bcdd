"""skelab: a laboratory for skeleton graphs of random 0/1-polytopes."""

from .expansion import (
    CheegerResult,
    degree_upper_bound,
    exact_cheeger,
    local_search_upper_bound,
)
from .flows import (
    CongestionLedger,
    ExpansionBound,
    PurePath,
    QndPath,
    RerouteConfig,
    count_pure_paths_through_edge,
    enumerate_pure_paths,
    expansion_lower_bound,
    pure_path,
    qnd_distance_profile,
    reroute_flow,
    sample_backbone_path,
    select_paths_randomized,
    symmetric_flow_congestion,
)
from .hypercube import (
    Vertex,
    avoids,
    ball,
    cube_points,
    grid_partition,
    hamming,
    project,
    sphere,
    support,
    xor,
)
from .rational_lp import LpOutcome, LpProblem, convex_membership, simplex_solve
from .skeleton import (
    SkeletonGraph,
    VertexSet,
    alpha_full_vertices,
    build_exact_skeleton,
    build_Gd,
    cube_criterion_edge,
    edge_length_histogram,
    full_degree_vertices,
    is_edge_exact,
    nonedge_filter_a,
    nonedge_filter_b,
    sample_vertex_set,
)

__version__ = "0.1.0"
