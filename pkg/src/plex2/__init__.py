"""Simplicial collapse, density invariants, and forbidden-surface catalogs
for finite 2-complexes, with Monte Carlo experiments over the random model
that keeps a full 1-skeleton and draws each triangle independently."""

from .catalog import (
    Catalog,
    PseudoSurface,
    canonical_key,
    embedding_minimal_flags,
    enumerate_forbidden,
    face_bound,
    star_surface,
    verify_membership,
)
from .collapse import (
    CollapseTrace,
    PathSearch,
    TERMINAL_CLOSED,
    TERMINAL_GRAPH,
    accessible_boundary,
    accessible_boundary_via,
    collapse_depth,
    collapse_number,
    collapse_sequence,
    collapse_step,
    collapse_step_tracked,
    collapsing_paths,
    is_collapsible,
)
from .complexes import INF, Complex2, Edge, Tri, are_isomorphic, complex_from_json, tri_edges
from .density import (
    EXHAUSTIVE_LIMIT,
    MuResult,
    is_balanced,
    mu,
    mu_tilde,
    mu_tilde_max,
)
from .embedding import check_embedding, contains_any, embeds
from .experiments import (
    ConsistencyError,
    ExperimentConfig,
    ExperimentRecord,
    PRule,
    ScanResult,
    ScanRow,
    load_config,
    pooled_se,
    run_experiment,
    threshold_scan,
    trial_seed,
    write_records_csv,
    write_scan_csv,
)
from .random_model import (
    DegreeHistogram,
    ModelParams,
    colex_rank,
    degree_histogram,
    expected_degree_count,
    high_degree_bound,
    sample,
    sample_complex,
)

__version__ = "0.1.0"
