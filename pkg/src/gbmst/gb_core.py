"""Points, granular-balls and adaptive granular-ball generation.

A granular-ball summarises a subset of the data by its mean (center), its
largest member-to-center distance (radius) and its mean member-to-center
distance (``dm``).  Generation starts from one ball covering the whole
dataset and keeps splitting along the two farthest points while the
size-weighted ``dm`` of the children drops below the parent's, then
force-splits balls whose radius is far above the typical radius.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Literal, Optional, Sequence

import numpy as np

from .errors import (
    CannotSplit,
    DegenerateBall,
    DimensionMismatch,
    EmptyBall,
    InvalidConfig,
    InvalidDataset,
    InvalidSplit,
)

FarthestPairMode = Literal["exact", "heuristic"]

DM_REL_TOL = 1e-12


class GenerationWarning(UserWarning):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def distances_to(points: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Euclidean distance from every row of ``points`` to the vector ``x``."""
    diff = points - x
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


@dataclass(frozen=True)
class Dataset:
    points: np.ndarray
    labels: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise InvalidDataset("dataset must be a non-empty list of points")
        if pts.shape[1] < 1:
            raise InvalidDataset("points must have dimension >= 1")
        if not np.all(np.isfinite(pts)):
            raise InvalidDataset("points must be finite")
        object.__setattr__(self, "points", _frozen(pts))
        if self.labels is not None:
            labels = np.array(self.labels, dtype=np.int64).reshape(-1)
            if labels.shape[0] != pts.shape[0]:
                raise InvalidDataset(
                    f"{labels.shape[0]} labels for {pts.shape[0]} points"
                )
            object.__setattr__(self, "labels", _frozen(labels))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def with_points(self, points: np.ndarray) -> "Dataset":
        return Dataset(points, self.labels, self.name)


def compute_center(points) -> np.ndarray:
    pts = np.asarray(points, dtype=np.float64)
    if pts.size == 0 or pts.shape[0] == 0:
        raise EmptyBall("cannot take the center of an empty ball")
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    return pts.mean(axis=0)


def compute_radius_and_sum(points, center) -> tuple[float, float]:
    pts = np.asarray(points, dtype=np.float64)
    c = np.asarray(center, dtype=np.float64)
    if pts.shape[0] == 0:
        raise EmptyBall("cannot measure an empty ball")
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    if c.ndim != 1 or c.shape[0] != pts.shape[1]:
        raise DimensionMismatch(
            f"center has shape {c.shape}, points have dimension {pts.shape[1]}"
        )
    d = distances_to(pts, c)
    return float(d.max()), float(d.sum())


def compute_dm(sum_dist: float, count: int) -> float:
    if count < 1:
        raise EmptyBall("dm of an empty ball is undefined")
    return sum_dist / count


@dataclass(frozen=True, eq=False)
class GranularBall:
    members: np.ndarray  # sorted point indices
    center: np.ndarray
    radius: float
    sum_dist: float
    dm: float

    @classmethod
    def from_members(cls, points: np.ndarray, members) -> "GranularBall":
        idx = np.array(members, dtype=np.int64)
        if idx.size == 0:
            raise EmptyBall("a granular-ball needs at least one member")
        idx.sort()
        sub = points[idx]
        center = compute_center(sub)
        radius, sum_dist = compute_radius_and_sum(sub, center)
        if idx.size == 1:
            # mean of one point is the point itself; keep it exactly zero
            radius = sum_dist = 0.0
        return cls(
            _frozen(idx),
            _frozen(center),
            radius,
            sum_dist,
            compute_dm(sum_dist, idx.size),
        )

    @property
    def count(self) -> int:
        return int(self.members.shape[0])

    @property
    def dim(self) -> int:
        return int(self.center.shape[0])

    def is_degenerate(self, points: np.ndarray) -> bool:
        if self.count < 2:
            return False
        sub = points[self.members]
        return bool(np.all(sub == sub[0]))


def weighted_dm(child1: GranularBall, child2: GranularBall, parent_count: int) -> float:
    if child1.count + child2.count != parent_count:
        raise InvalidSplit(
            f"children hold {child1.count}+{child2.count} points, parent {parent_count}"
        )
    n = parent_count
    return (child1.count / n) * child1.dm + (child2.count / n) * child2.dm


def farthest_pair(points: np.ndarray, center: np.ndarray, mode: FarthestPairMode) -> tuple[int, int]:
    """Row positions (i, j) of the two split seeds within ``points``.

    ``heuristic`` takes the point farthest from the center, then the point
    farthest from that one.  ``exact`` scans all pairs.  Ties go to the lowest
    position in both modes.
    """
    if mode == "heuristic":
        i = int(np.argmax(distances_to(points, center)))
        j = int(np.argmax(distances_to(points, points[i])))
        return (i, j) if i < j else (j, i)
    if mode != "exact":
        raise ValueError(f"unknown farthest_pair_mode {mode!r}")
    best, pair = -1.0, (0, 0)
    for i in range(points.shape[0] - 1):
        d = distances_to(points[i + 1 :], points[i])
        j = int(np.argmax(d))
        if d[j] > best:
            best, pair = float(d[j]), (i, i + 1 + j)
    return pair


def split_ball(
    ball: GranularBall, dataset: Dataset, config: "GenerationConfig"
) -> tuple[GranularBall, GranularBall]:
    if ball.count < 2:
        raise CannotSplit("a ball needs at least two members to split")
    pts = dataset.points
    sub = pts[ball.members]
    if np.all(sub == sub[0]):
        raise DegenerateBall("all members of the ball are identical")
    i, j = farthest_pair(sub, ball.center, config.farthest_pair_mode)
    to_first = distances_to(sub, sub[i]) <= distances_to(sub, sub[j])
    c1 = GranularBall.from_members(pts, ball.members[to_first])
    c2 = GranularBall.from_members(pts, ball.members[~to_first])
    return c1, c2


@dataclass(frozen=True)
class GenerationConfig:
    min_ball_size: Optional[int] = None  # None -> ceil(sqrt(n))
    oversize_factor: float = 2.0
    farthest_pair_mode: FarthestPairMode = "heuristic"
    max_iterations: Optional[int] = None  # None -> 10 * ceil(log2(n))

    def __post_init__(self):
        if self.min_ball_size is not None and self.min_ball_size < 1:
            raise InvalidConfig("min_ball_size must be >= 1")
        if not self.oversize_factor > 0:
            raise InvalidConfig("oversize_factor must be > 0")
        if self.farthest_pair_mode not in ("exact", "heuristic"):
            raise InvalidConfig(f"unknown farthest_pair_mode {self.farthest_pair_mode!r}")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise InvalidConfig("max_iterations must be >= 1")

    def resolved(self, n: int) -> "GenerationConfig":
        min_size = self.min_ball_size or math.ceil(math.sqrt(n))
        cap = self.max_iterations or max(1, 10 * math.ceil(math.log2(max(n, 2))))
        return GenerationConfig(min_size, self.oversize_factor, self.farthest_pair_mode, cap)


@dataclass(frozen=True)
class GranularBallSet:
    balls: tuple[GranularBall, ...]
    dataset_size: int
    phase1_passes: int = 0
    phase2_passes: int = 0
    config: Optional[GenerationConfig] = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.balls)

    @property
    def counts(self) -> np.ndarray:
        return np.array([b.count for b in self.balls], dtype=np.int64)

    @property
    def radii(self) -> np.ndarray:
        return np.array([b.radius for b in self.balls])

    @property
    def centers(self) -> np.ndarray:
        return np.vstack([b.center for b in self.balls])

    def point_to_ball(self) -> np.ndarray:
        owner = np.full(self.dataset_size, -1, dtype=np.int64)
        for j, b in enumerate(self.balls):
            owner[b.members] = j
        return owner

    def check(self) -> None:
        """Raise AssertionError unless the balls partition 0..n-1."""
        seen = np.concatenate([b.members for b in self.balls])
        assert 1 <= len(self.balls) <= self.dataset_size
        assert seen.shape[0] == self.dataset_size, "balls overlap or miss points"
        assert np.array_equal(np.sort(seen), np.arange(self.dataset_size))


def _accept_split(parent: GranularBall, c1: GranularBall, c2: GranularBall) -> bool:
    w = weighted_dm(c1, c2, parent.count)
    return parent.dm - w > DM_REL_TOL * max(1.0, parent.dm)


def generate_granular_balls(
    dataset: Dataset,
    config: Optional[GenerationConfig] = None,
    on_split: Optional[Callable[[str, GranularBall, GranularBall, GranularBall], None]] = None,
) -> GranularBallSet:
    """Cover ``dataset`` with granular-balls.

    ``on_split(phase, parent, child1, child2)`` is called for every split
    that is kept, with phase ``"dm"`` or ``"oversize"``.
    """
    cfg = (config or GenerationConfig()).resolved(dataset.n)
    pts = dataset.points
    # (ball, settled): a settled ball already failed the split test
    balls: list[tuple[GranularBall, bool]] = [
        (GranularBall.from_members(pts, np.arange(dataset.n)), False)
    ]

    phase1 = 0
    while True:
        phase1 += 1
        changed = False
        nxt = []
        for ball, settled in balls:
            if settled or ball.count <= cfg.min_ball_size or ball.is_degenerate(pts):
                nxt.append((ball, True))
                continue
            c1, c2 = split_ball(ball, dataset, cfg)
            if _accept_split(ball, c1, c2):
                if on_split is not None:
                    on_split("dm", ball, c1, c2)
                nxt.extend([(c1, False), (c2, False)])
                changed = True
            else:
                nxt.append((ball, True))
        balls = nxt
        if not changed:
            break
        if phase1 >= cfg.max_iterations:
            warnings.warn(
                f"DM splitting stopped at the {cfg.max_iterations}-pass cap",
                GenerationWarning,
                stacklevel=2,
            )
            break

    current = [b for b, _ in balls]
    phase2 = 0
    while True:
        phase2 += 1
        radii = np.array([b.radius for b in current])
        limit = cfg.oversize_factor * max(radii.mean(), float(np.median(radii)))
        changed = False
        nxt = []
        for ball in current:
            if ball.radius > limit and ball.count >= 2 and not ball.is_degenerate(pts):
                c1, c2 = split_ball(ball, dataset, cfg)
                if on_split is not None:
                    on_split("oversize", ball, c1, c2)
                nxt.extend([c1, c2])
                changed = True
            else:
                nxt.append(ball)
        current = nxt
        if not changed:
            break
        if phase2 >= cfg.max_iterations:
            warnings.warn(
                f"oversize splitting stopped at the {cfg.max_iterations}-pass cap",
                GenerationWarning,
                stacklevel=2,
            )
            break

    return GranularBallSet(tuple(current), dataset.n, phase1, phase2, cfg)


def ball_set_from_members(dataset: Dataset, member_lists: Sequence[Sequence[int]]) -> GranularBallSet:
    """Build a ball set from explicit member lists (fixtures, tests)."""
    balls = tuple(GranularBall.from_members(dataset.points, m) for m in member_lists)
    return GranularBallSet(balls, dataset.n)
