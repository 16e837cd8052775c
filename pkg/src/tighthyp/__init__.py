"""Spanning cycles with fixed window overlap in uniform hypergraphs.

hypercore: the graph type and file format. motifs: path and cycle patterns,
goodness thresholds, embedding. solver: exact cycle search. extremal: exact
pattern-free maxima and degree thresholds. constructions: extremal graph
families. absorb: the randomized absorbing cycle builder. cli: the tighthyp
command.
"""

from .hypercore import Hypergraph, complete, empty, random_graph, read_graph, write_graph
from .motifs import (
    GoodTupleParams,
    TightPattern,
    build_P,
    build_pattern,
    contains_pattern,
    is_good_tuple,
    is_l_pancyclic,
    is_l_tight_ham_cycle,
)
from .solver import SearchConfig, SearchResult, count_extensions, enumerate_copies, find_hamcycle
from .extremal import (
    BudgetError,
    ExtremalResult,
    ResultCache,
    ThresholdResult,
    brute_force_ex,
    exact_ex,
    exact_h,
    formula_ex,
    known_bounds,
    sampled_h,
)
from .constructions import (
    BlockDesign,
    clique_plus_link,
    greedy_partial_steiner,
    kk_lower,
    ore_graph,
    triangle_packing,
    tuza_construction,
)
from .absorb import (
    AbsorberSet,
    ConnectorSet,
    PipelineConfig,
    StageFailure,
    absorbs,
    build_absorbers,
    build_connectors,
    connects,
    default_constants,
    extend_path,
    good_pair_fraction,
    run_pipeline,
    stitch_onepath,
    with_overrides,
)

__version__ = "0.1.0"
