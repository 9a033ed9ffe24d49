"""Persistent path homology of directed dissimilarity networks."""

__version__ = "0.1.0"

from .diagrams import Matching, bottleneck, bottleneck_matching, bottleneck_matrix, diagrams_equal
from .dowker import SimplicialFiltration, dowker_diagram, dowker_sink_filtration
from .estimators import (
    DowkerPersistence,
    PairwiseBottleneck,
    PathPersistence,
    SingleLinkageClustering,
)
from .filtration import Filtration, critical_values, digraph_at
from .metrics import (
    Correspondence,
    Dendrogram,
    cut_dendrogram,
    distortion,
    network_distance_exact,
    network_distance_maps,
    single_linkage,
)
from .network import (
    Digraph,
    Network,
    NetworkValidationError,
    cycle_network,
    load_network,
    preprocess_use_table,
    random_network,
    save_network,
    scale,
    transpose,
)
from .paths import OmegaBasis, allowed_paths, boundary, homology_dim, omega_basis
from .persistence import PersistenceDiagram, RankFunction, diagram, ppd, rank_function

__all__ = [
    "Correspondence",
    "Dendrogram",
    "Digraph",
    "DowkerPersistence",
    "Filtration",
    "Matching",
    "Network",
    "NetworkValidationError",
    "OmegaBasis",
    "PairwiseBottleneck",
    "PathPersistence",
    "PersistenceDiagram",
    "RankFunction",
    "SimplicialFiltration",
    "SingleLinkageClustering",
    "allowed_paths",
    "bottleneck",
    "bottleneck_matching",
    "bottleneck_matrix",
    "boundary",
    "critical_values",
    "cut_dendrogram",
    "cycle_network",
    "diagram",
    "diagrams_equal",
    "digraph_at",
    "distortion",
    "dowker_diagram",
    "dowker_sink_filtration",
    "homology_dim",
    "load_network",
    "network_distance_exact",
    "network_distance_maps",
    "omega_basis",
    "ppd",
    "preprocess_use_table",
    "random_network",
    "rank_function",
    "save_network",
    "scale",
    "single_linkage",
    "transpose",
]
