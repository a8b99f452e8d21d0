"""Point-level MST clustering and Lloyd's k-means, for comparison with GBMST."""
from __future__ import annotations

import time

import numpy as np

from .errors import InvalidK, TooManyClusters
from .gb_cluster import Clustering, cut_longest_edges, label_components
from .gb_core import Dataset
from .gb_graph import euclidean_mst


def _check_k(k: int, n: int) -> None:
    if k < 1:
        raise InvalidK(f"k must be >= 1, got {k}")
    if k > n:
        raise TooManyClusters(f"k={k} exceeds the {n} points")


def normal_mst_cluster(dataset: Dataset, k: int) -> Clustering:
    """Prim MST over the raw points, then cut the k-1 longest edges."""
    _check_k(k, dataset.n)
    t0 = time.perf_counter()
    mst = euclidean_mst(dataset.points)
    t1 = time.perf_counter()
    forest, cut = cut_longest_edges(mst, k)
    labels = label_components(forest, mst.node_ids)
    t2 = time.perf_counter()
    return Clustering(
        point_labels=labels,
        cut_edges=cut,
        info={
            "algorithm": "normal-mst",
            "cut_weights": [e.weight for e in cut],
            "stage_timings": {"mst": t1 - t0, "cut_and_label": t2 - t1, "total": t2 - t0},
            "mst": mst,
        },
    )


def _sq_dists(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    return ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)


def kmeans(dataset: Dataset, k: int, seed: int = 0, max_iter: int = 300) -> Clustering:
    """Lloyd iterations from k distinct random points.

    A cluster that empties is re-seeded with the point currently farthest
    from its own center.  ``info["inertia_history"]`` records the inertia of
    each assignment step.
    """
    _check_k(k, dataset.n)
    t0 = time.perf_counter()
    pts = dataset.points
    rng = np.random.default_rng(seed)
    centers = pts[rng.choice(dataset.n, size=k, replace=False)].copy()
    labels = None
    history = []
    iterations = 0
    for iterations in range(1, max_iter + 1):
        d2 = _sq_dists(pts, centers)
        new = np.argmin(d2, axis=1)
        history.append(float(d2[np.arange(dataset.n), new].sum()))
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        for c in range(k):
            members = labels == c
            if members.any():
                centers[c] = pts[members].mean(axis=0)
            else:
                own = d2[np.arange(dataset.n), labels]
                far = int(np.argmax(own))
                centers[c] = pts[far]
                labels[far] = c
                d2[far] = 0.0
    t1 = time.perf_counter()
    d2 = _sq_dists(pts, centers)
    inertia = float(d2[np.arange(dataset.n), labels].sum())
    return Clustering(
        point_labels=labels.astype(np.int64),
        info={
            "algorithm": "kmeans",
            "seed": seed,
            "iterations": iterations,
            "inertia": inertia,
            "inertia_history": history,
            "centers": centers,
            "stage_timings": {"total": t1 - t0},
        },
    )
