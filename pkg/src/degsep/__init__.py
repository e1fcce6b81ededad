"""Distance-distribution statistics: neighborhood functions, closeness
measures, average-distance lower bounds and hub-removal experiments."""

__version__ = "0.1.0"

from .graph import Graph, degree_sequence, load_edge_list, read_edge_list, remove_nodes, write_edge_list
from .sketch import HllCounter
from .nf import (
    DistanceDistribution,
    NeighborhoodFunction,
    distribution_from_nf,
    exact_nf,
    hll_nf,
)
from .metrics import (
    MetricsReport,
    average_distance,
    fraction_within,
    harmonic_diameter,
    median_all_distances,
    metrics_report,
)
from .bounds import delta, distance_lower_bound, p_census, degree_sequence_bound, p3_degree_bound, trivial_bound
from .ablation import removal_order, run_ablation
from .chains import ChainDataset, chain_harmonic_mean, chain_median, completed_mean

__all__ = [
    "ChainDataset", "DistanceDistribution", "Graph", "HllCounter", "MetricsReport",
    "NeighborhoodFunction", "average_distance", "chain_harmonic_mean", "chain_median",
    "completed_mean", "degree_sequence", "delta", "distribution_from_nf", "distance_lower_bound",
    "exact_nf", "fraction_within", "harmonic_diameter", "hll_nf", "load_edge_list",
    "median_all_distances", "metrics_report", "p_census", "read_edge_list", "remove_nodes",
    "removal_order", "run_ablation", "degree_sequence_bound", "p3_degree_bound", "trivial_bound",
    "write_edge_list",
]
