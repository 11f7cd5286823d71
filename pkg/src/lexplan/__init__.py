"""Prioritized multi-criteria motion planning on probabilistic roadmaps.

The package builds roadmaps over 2D workspaces with polygonal
obstacles, prices each edge under a strict hierarchy of criteria
(threat exposure, localization denial, communication denial, distance),
and searches them with a lexicographic label-correcting algorithm.
Weighted-sum and budget-layered baselines plus a benchmark harness
round out the toolkit.
"""

from .baselines import (
    EgsFrontier,
    EgsParams,
    LayerEntry,
    WeightedSumParams,
    expanded_graph_search,
    expanded_graph_search_layered,
    weighted_sum_search,
)
from .bench import (
    AlgoSpec,
    ExperimentConfig,
    SummaryRow,
    TrialRecord,
    load_scenario,
    read_records_csv,
    read_summary_csv,
    run_experiment,
    summarize,
    write_records_csv,
    write_summary_csv,
)
from .costfield import (
    TIE_EPS,
    CriterionSpec,
    Scenario,
    evaluate_edge,
    evaluate_path,
    lex_compare,
    scenario_from_dict,
    scenario_to_dict,
)
from .geometry import (
    Configuration,
    EdgeGeometry,
    Point2,
    Polygon,
    dubins_shortest_path,
    line_of_sight,
    segment_collides,
    straight_edge,
)
from .lexsearch import (
    PathResult,
    SearchTree,
    brute_force_lex_optimum,
    extract_path,
    lexicographic_search,
)
from .roadmap import (
    BuildParams,
    Edge,
    Roadmap,
    build_roadmap,
    insert_endpoint,
    nearest_node,
)

__version__ = "0.1.0"

__all__ = [
    "AlgoSpec",
    "BuildParams",
    "Configuration",
    "CriterionSpec",
    "Edge",
    "EdgeGeometry",
    "EgsFrontier",
    "EgsParams",
    "ExperimentConfig",
    "LayerEntry",
    "PathResult",
    "Point2",
    "Polygon",
    "Roadmap",
    "Scenario",
    "SearchTree",
    "SummaryRow",
    "TIE_EPS",
    "TrialRecord",
    "WeightedSumParams",
    "brute_force_lex_optimum",
    "build_roadmap",
    "dubins_shortest_path",
    "evaluate_edge",
    "evaluate_path",
    "expanded_graph_search",
    "expanded_graph_search_layered",
    "extract_path",
    "insert_endpoint",
    "lex_compare",
    "lexicographic_search",
    "line_of_sight",
    "load_scenario",
    "nearest_node",
    "read_records_csv",
    "read_summary_csv",
    "run_experiment",
    "scenario_from_dict",
    "scenario_to_dict",
    "segment_collides",
    "straight_edge",
    "summarize",
    "weighted_sum_search",
    "write_records_csv",
    "write_summary_csv",
]
