"""Graphical transversal matroids TM(G, W) of undirected multigraphs."""

from .census import (
    ClassRow,
    OutDegreeClass,
    TableReport,
    class_weight,
    count_bases,
    enumerate_classes,
    feasible_classes,
    table_report,
)
from .graph import (
    GraphError,
    GraphParseError,
    LimitExceededError,
    Multigraph,
    Orientation,
    all_orientations,
    degree,
    edges_meeting,
    induced_subgraph,
    parse_graph,
    read_graph,
)
from .labeling import INF, exhaustive_max_height, height, is_valid_labeling, max_height
from .matroid import (
    GraphicalTransversalMatroid,
    GroundElement,
    Presentation,
    alpha_of,
    ground_set,
    parse_subset,
    perfect_subset,
    transversal_matroid,
)

__version__ = "0.1.0"
