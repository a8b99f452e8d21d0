"""Granular-ball minimum-spanning-tree clustering."""

__version__ = "0.1.0"

from .baselines import kmeans, normal_mst_cluster
from .data_io import GeneratorSpec, generate, load_csv, load_fixture, normalize_minmax, write_csv
from .gb_cluster import ClusterConfig, Clustering, cluster
from .gb_core import Dataset, GenerationConfig, GranularBall, GranularBallSet, generate_granular_balls
from .gb_graph import ball_distance, build_mst, partition_outliers
from .metrics import accuracy, ari, evaluate, nmi, rand_index

__all__ = [
    "ClusterConfig", "Clustering", "Dataset", "GenerationConfig", "GeneratorSpec",
    "GranularBall", "GranularBallSet", "accuracy", "ari", "ball_distance", "build_mst",
    "cluster", "evaluate", "generate", "generate_granular_balls", "kmeans", "load_csv",
    "load_fixture", "nmi", "normal_mst_cluster", "normalize_minmax", "partition_outliers",
    "rand_index", "write_csv",
]
