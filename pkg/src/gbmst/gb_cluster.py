"""k-cut of the ball MST, component labelling and outlier re-attachment."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from .data_io import minmax_points
from .errors import InvalidK, TooManyClusters
from .gb_core import Dataset, GenerationConfig, GranularBall, generate_granular_balls
from .gb_graph import (
    MSTree,
    WeightedEdge,
    build_mst,
    center_gaps,
    partition_outliers,
)


@dataclass(frozen=True)
class ClusterConfig:
    k: int
    normalize: bool = True
    generation: GenerationConfig = field(default_factory=GenerationConfig)

    def __post_init__(self):
        if self.k < 1:
            raise InvalidK(f"k must be >= 1, got {self.k}")


@dataclass
class Clustering:
    point_labels: np.ndarray
    ball_labels: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    cut_edges: list = field(default_factory=list)
    outlier_assignments: list = field(default_factory=list)
    # provenance: ball/outlier counts, stage timings, algorithm-specific extras
    info: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return int(np.unique(self.point_labels).shape[0])


def cut_longest_edges(mst: MSTree, k: int) -> tuple[list[WeightedEdge], list[WeightedEdge]]:
    """Drop the k-1 heaviest edges; equal weights cut the larger (a, b) first."""
    if k < 1:
        raise InvalidK(f"k must be >= 1, got {k}")
    if k > len(mst.node_ids):
        raise TooManyClusters(f"k={k} exceeds the {len(mst.node_ids)} nodes of the tree")
    ranked = sorted(mst.edges, key=lambda e: e.key, reverse=True)
    cut = ranked[: k - 1]
    cut_ids = {id(e) for e in cut}
    forest = [e for e in mst.edges if id(e) not in cut_ids]
    return forest, cut


def label_components(forest: Sequence[WeightedEdge], node_ids: Sequence[int]) -> np.ndarray:
    """Component label per entry of ``node_ids``, numbered by smallest member id."""
    ds = DisjointSet(node_ids)
    for e in forest:
        ds.merge(e.a, e.b)
    roots = {}
    labels = np.empty(len(node_ids), dtype=np.int64)
    for pos, node in sorted(enumerate(node_ids), key=lambda t: t[1]):
        root = ds[node]
        if root not in roots:
            roots[root] = len(roots)
        labels[pos] = roots[root]
    return labels


def assign_outliers(
    outliers: Sequence[int],
    balls: Sequence[GranularBall],
    core: Sequence[int],
    core_labels: np.ndarray,
) -> list[tuple[int, int, int]]:
    """(outlier ball, nearest core ball, label) for each outlier ball.

    Nearness is the clamped ball gap; ties go to the lowest core ball index.
    """
    if not outliers:
        return []
    order = np.argsort(np.asarray(core), kind="stable")
    core_sorted = np.asarray(core)[order]
    centers = np.vstack([balls[i].center for i in core_sorted])
    radii = np.array([balls[i].radius for i in core_sorted])
    labels_sorted = np.asarray(core_labels)[order]
    out = []
    for j in outliers:
        gaps = center_gaps(centers, radii, balls[j].center, balls[j].radius)
        pos = int(np.argmin(gaps))
        out.append((int(j), int(core_sorted[pos]), int(labels_sorted[pos])))
    return out


def cluster(dataset: Dataset, config: ClusterConfig) -> Clustering:
    timings = {}
    t0 = time.perf_counter()

    pts = minmax_points(dataset.points) if config.normalize else dataset.points
    work = dataset.with_points(pts) if config.normalize else dataset
    t1 = time.perf_counter()
    timings["normalize"] = t1 - t0

    gbs = generate_granular_balls(work, config.generation)
    t2 = time.perf_counter()
    timings["generate"] = t2 - t1

    part = partition_outliers(gbs)
    if config.k > len(part.core):
        raise TooManyClusters(
            f"k={config.k} exceeds the {len(part.core)} core granular-balls"
        )
    mst = build_mst(gbs.balls, part.core)
    t3 = time.perf_counter()
    timings["mst"] = t3 - t2

    forest, cut = cut_longest_edges(mst, config.k)
    core_labels = label_components(forest, mst.node_ids)
    assigned = assign_outliers(part.outliers, gbs.balls, part.core, core_labels)
    ball_labels = np.full(len(gbs), -1, dtype=np.int64)
    ball_labels[list(part.core)] = core_labels
    for j, _, lab in assigned:
        ball_labels[j] = lab
    point_labels = ball_labels[gbs.point_to_ball()]
    t4 = time.perf_counter()
    timings["cut_and_label"] = t4 - t3
    timings["total"] = t4 - t0

    return Clustering(
        point_labels=point_labels,
        ball_labels=ball_labels,
        cut_edges=cut,
        outlier_assignments=[(j, target) for j, target, _ in assigned],
        info={
            "algorithm": "gbmst",
            "ball_count": len(gbs),
            "core_count": len(part.core),
            "outlier_count": len(part.outliers),
            "outlier_fallback": part.fallback,
            "cut_weights": [e.weight for e in cut],
            "stage_timings": timings,
            "balls": gbs,
            "points": work.points,
            "mst": mst,
        },
    )
