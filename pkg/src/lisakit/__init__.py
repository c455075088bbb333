"""lisakit: spatiotemporal local-indicator cluster analysis.

Computes Moran, Geary, and Getis-Ord statistics (global and local) per
timestep over areal data, with conditional-permutation significance, cluster
labels, and a cross-method agreement color per location.
"""

from .aggregate import (
    AggregateAssignment,
    CoreGroup,
    PaletteConfig,
    aggregate_color,
    core_group,
    disagreement,
    high_low_membership,
)
from .data_model import (
    AreaSet,
    Dataset,
    TimeSeriesTable,
    join_dataset,
    parse_geometry,
    parse_values,
    zscore_timestep,
)
from .errors import DegenerateError, InputError, LisaKitError
from .labels import (
    ClusterLabel,
    GlobalLabel,
    assign_gi,
    assign_global,
    assign_local_geary,
    assign_local_moran,
)
from .permutation import (
    PermutationDistribution,
    distribution_sketch,
    permute_global,
    permute_local,
    pseudo_p,
    significance_cutoffs,
    znorm_statistic,
)
from .pipeline import (
    ResultSet,
    RunConfig,
    cache_lookup,
    cache_store,
    make_cache_key,
    run_analysis,
    write_results,
)
from .rng import RngPolicy
from .stats import (
    LocalContext,
    StatKind,
    general_g,
    gi,
    gi_star,
    global_geary,
    global_moran,
    local_geary,
    local_moran,
    spatial_lag,
)
from .weights import (
    NeighborGraph,
    WeightMatrix,
    adjacency_json,
    build_contiguity,
    restrict_to_present,
    row_normalize,
)

__version__ = "0.1.0"
