"""Ball-to-ball distance, outlier filtering and Prim's MST over core balls."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, NoCoreBalls
from .gb_core import GranularBall, GranularBallSet

OUTLIER_MAX_COUNT = 2


class OutlierFallbackWarning(UserWarning):
    pass


@dataclass(frozen=True, order=True)
class WeightedEdge:
    weight: float
    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("self-loop edge")
        if self.weight < 0:
            raise ValueError("negative edge weight")
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @property
    def key(self) -> tuple[float, int, int]:
        return (self.weight, self.a, self.b)


@dataclass(frozen=True)
class MSTree:
    node_ids: tuple[int, ...]
    edges: tuple[WeightedEdge, ...]

    @property
    def total_weight(self) -> float:
        return sum(e.weight for e in self.edges)


@dataclass(frozen=True)
class BallPartition:
    core: tuple[int, ...]
    outliers: tuple[int, ...]
    fallback: bool = False


def center_gaps(centers: np.ndarray, radii: np.ndarray, c: np.ndarray, r: float) -> np.ndarray:
    """Clamped gap between one ball (c, r) and each ball in (centers, radii)."""
    diff = centers - c
    d = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    return np.maximum(d - (radii + r), 0.0)


def ball_distance(a: GranularBall, b: GranularBall) -> float:
    """Center distance minus both radii, clamped at zero for overlapping balls."""
    if a.center.shape != b.center.shape:
        raise DimensionMismatch(f"ball dimensions {a.dim} and {b.dim} differ")
    gap = center_gaps(a.center[None, :], np.array([a.radius]), b.center, b.radius)
    return float(gap[0])


def partition_outliers(gbs: GranularBallSet) -> BallPartition:
    counts = gbs.counts
    core = tuple(int(i) for i in np.flatnonzero(counts > OUTLIER_MAX_COUNT))
    outliers = tuple(int(i) for i in np.flatnonzero(counts <= OUTLIER_MAX_COUNT))
    if not core:
        warnings.warn(
            f"every ball has <= {OUTLIER_MAX_COUNT} members; treating all balls as core",
            OutlierFallbackWarning,
            stacklevel=2,
        )
        return BallPartition(tuple(range(len(counts))), (), fallback=True)
    return BallPartition(core, outliers)


def prim_dense(node_ids: Sequence[int], centers: np.ndarray, radii=None) -> MSTree:
    """Dense O(N^2) Prim over the complete graph of clamped center gaps.

    Weights are evaluated on demand from each newly added node.  Among
    frontier edges of equal weight the smaller (tree node, new node) id pair
    wins, so the result does not depend on evaluation order.
    """
    ids = np.asarray(node_ids, dtype=np.int64)
    n = ids.shape[0]
    if n == 0:
        raise NoCoreBalls("cannot build a spanning tree over zero nodes")
    # Outside-tree nodes live in the first m slots of these buffers; a node
    # joining the tree is swapped with slot m-1.
    pts = np.array(centers, dtype=np.float64)
    rad = None if radii is None else np.array(radii, dtype=np.float64)
    rid = ids.copy()
    key = np.full(n, np.inf)
    src = np.full(n, -1, dtype=np.int64)  # id of best tree neighbour
    edges = []
    cur_pt, cur_r, cur_id = pts[0].copy(), 0.0 if rad is None else rad[0], rid[0]
    m = n

    bufs = (pts, rid, key, src) if rad is None else (pts, rid, key, src, rad)

    def remove(slot):
        last = m - 1
        for buf in bufs:
            held = buf[slot].copy()
            buf[slot] = buf[last]
            buf[last] = held

    remove(0)
    m -= 1
    while m:
        diff = pts[:m] - cur_pt
        w = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        if rad is not None:
            w = np.maximum(w - (rad[:m] + cur_r), 0.0)
        k, s = key[:m], src[:m]
        better = w < k
        eq = w == k
        if eq.any():
            better |= eq & (cur_id < s)
        k[better] = w[better]
        s[better] = cur_id
        pick = int(np.argmin(k))
        tied = np.flatnonzero(k == k[pick])
        if tied.shape[0] > 1:
            # lexicographic (source id, target id)
            pick = int(tied[np.lexsort((rid[tied], s[tied]))[0]])
        cur_id = int(rid[pick])
        edges.append(WeightedEdge(float(k[pick]), int(s[pick]), cur_id))
        cur_pt = pts[pick].copy()
        cur_r = 0.0 if rad is None else float(rad[pick])
        remove(pick)
        m -= 1
    return MSTree(tuple(int(i) for i in ids), tuple(edges))


def build_mst(balls: Sequence[GranularBall], core: Sequence[int]) -> MSTree:
    if len(core) == 0:
        raise NoCoreBalls("no core balls to connect")
    centers = np.vstack([balls[i].center for i in core])
    radii = np.array([balls[i].radius for i in core])
    return prim_dense(core, centers, radii)


def euclidean_mst(points: np.ndarray) -> MSTree:
    """Prim over raw points with Euclidean weights; node ids are row indices."""
    pts = np.asarray(points, dtype=np.float64)
    return prim_dense(range(pts.shape[0]), pts)
