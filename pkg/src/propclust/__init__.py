"""Metric-agnostic clustering on kNN graphs via label propagation.

Pipeline: load points -> build directed kNN lists (exact or approximate)
-> close into an undirected graph -> cluster by density-ordered expansion
or by a community baseline (Louvain, LPA) on similarity weights -> score
against reference labels.
"""

from .community import (
    Partition,
    SimilarityTransform,
    WeightedGraph,
    louvain,
    lpa,
    modularity_score,
    to_weighted,
)
from .dane import Clustering, ExpansionResult, expand, join_gain
from .data import PointSet, load_labels, load_points, save_labels, save_points_csv
from .density import DensityOrder, density_order, knn_density_estimate
from .descent import nndescent_knn
from .knngraph import (
    KnnLists,
    NeighborGraph,
    build_graph,
    connected_components,
    exact_knn,
    knn_recall,
    lists_from_graph,
    load_graph,
    prefix_lists,
    save_graph,
)
from .metrics import METRICS, dist, pairwise
from .scores import ami, ari, contingency, evaluate_labels, nmi
from .synthetic import MixtureSpec, connectivity_experiment, sample_mixture

__version__ = "0.1.0"

__all__ = [
    "METRICS",
    "Clustering",
    "DensityOrder",
    "ExpansionResult",
    "KnnLists",
    "MixtureSpec",
    "NeighborGraph",
    "Partition",
    "PointSet",
    "SimilarityTransform",
    "WeightedGraph",
    "ami",
    "ari",
    "build_graph",
    "connected_components",
    "connectivity_experiment",
    "contingency",
    "density_order",
    "dist",
    "evaluate_labels",
    "exact_knn",
    "expand",
    "join_gain",
    "knn_density_estimate",
    "knn_recall",
    "lists_from_graph",
    "load_graph",
    "load_labels",
    "load_points",
    "louvain",
    "lpa",
    "modularity_score",
    "nmi",
    "nndescent_knn",
    "pairwise",
    "prefix_lists",
    "sample_mixture",
    "save_graph",
    "save_labels",
    "save_points_csv",
    "to_weighted",
]
