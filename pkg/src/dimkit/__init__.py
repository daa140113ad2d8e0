"""Exact desk-scale toolkit for boxicity, cubicity, threshold dimension and
poset dimension, with the constructive reductions linking them on split
graphs and verification suites that sweep the relationships on exhaustive
and random instances."""

from .errors import (
    CapacityError,
    InputError,
    InternalConsistencyError,
    ParseError,
    SolverTimeout,
)
from .graphs import (
    Graph,
    IntervalRep,
    NotSplit,
    SplitPartition,
    UnitIntervalRep,
    complement,
    induced_subgraph,
    intersect_graphs,
    normalize_interval_rep,
    recognize_interval,
    recognize_split,
    recognize_threshold,
    recognize_unit_interval,
    union_edges,
)
from .posets import (
    CharPosetResult,
    Poset,
    characteristic_poset,
    is_linear_extension,
    is_realizer,
    poset_dimension,
    poset_from_relation,
)
from .reductions import (
    GPrime,
    PosetSplitGraph,
    box_to_threshold_cover,
    interval_reps_from_threshold_cover,
    poset_to_split_graph,
    realizer_from_threshold_cover,
    split_interval_sandwich,
    split_to_gprime,
    threshold_graphs_from_realizer,
    threshold_sandwich,
    two_threshold_cover,
)
from .solvers import (
    IntersectionRep,
    ThresholdCover,
    boxicity,
    cubicity,
    threshold_dimension,
    threshold_intersection_number,
)
from .verify import (
    TheoremReport,
    check_cover,
    check_intersection,
    classify_factor,
    gen_random_poset,
    gen_random_split,
    verify_theorem,
)

__version__ = "0.1.0"
