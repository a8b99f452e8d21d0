"""External clustering quality: ACC, NMI, Rand index and adjusted Rand index.

Everything is computed from the contingency table of predicted clusters
against true classes.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Literal, Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import LabelLengthMismatch, TooFewPoints

NMINorm = Literal["sqrt", "min", "max", "arithmetic"]


@dataclass(frozen=True)
class ContingencyTable:
    counts: np.ndarray  # predicted clusters x true classes
    n: int

    @classmethod
    def from_labels(cls, pred, truth) -> "ContingencyTable":
        p, t = _check(pred, truth)
        _, pi = np.unique(p, return_inverse=True)
        _, ti = np.unique(t, return_inverse=True)
        counts = np.zeros((pi.max() + 1, ti.max() + 1), dtype=np.int64)
        np.add.at(counts, (pi, ti), 1)
        return cls(counts, int(p.shape[0]))

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)


def _check(pred, truth) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(pred).reshape(-1)
    t = np.asarray(truth).reshape(-1)
    if p.shape[0] != t.shape[0]:
        raise LabelLengthMismatch(f"{p.shape[0]} predicted labels vs {t.shape[0]} true labels")
    if p.shape[0] == 0:
        raise LabelLengthMismatch("empty labelings")
    return p, t


def accuracy(pred, truth) -> float:
    """Best one-to-one cluster->class matching (Kuhn-Munkres), as a fraction."""
    table = ContingencyTable.from_labels(pred, truth)
    r, c = table.counts.shape
    size = max(r, c)
    square = np.zeros((size, size), dtype=np.int64)
    square[:r, :c] = table.counts
    rows, cols = linear_sum_assignment(square, maximize=True)
    return float(square[rows, cols].sum()) / table.n


def _entropy(counts: np.ndarray, n: int) -> float:
    p = counts[counts > 0] / n
    return float(-(p * np.log(p)).sum())


def mutual_information(table: ContingencyTable) -> float:
    n = table.n
    nz = table.counts > 0
    nij = table.counts[nz]
    outer = np.outer(table.row_sums, table.col_sums)[nz]
    return float((nij / n * (np.log(nij) + np.log(n) - np.log(outer))).sum())


def nmi(pred, truth, norm: NMINorm = "sqrt") -> float:
    table = ContingencyTable.from_labels(pred, truth)
    hu = _entropy(table.row_sums, table.n)
    hv = _entropy(table.col_sums, table.n)
    if hu == 0.0 and hv == 0.0:
        return 1.0
    if hu == 0.0 or hv == 0.0:
        return 0.0
    denom = {
        "sqrt": np.sqrt(hu * hv),
        "min": min(hu, hv),
        "max": max(hu, hv),
        "arithmetic": 0.5 * (hu + hv),
    }[norm]
    return float(min(1.0, max(0.0, mutual_information(table) / denom)))


def _comb2(x):
    x = np.asarray(x, dtype=np.float64)
    return x * (x - 1) / 2.0


def pair_counts(pred, truth) -> tuple[float, float, float, float]:
    """(same-same, same-diff, diff-same, diff-diff) pair counts, pred first."""
    table = ContingencyTable.from_labels(pred, truth)
    if table.n < 2:
        raise TooFewPoints("pair counting needs at least two points")
    both = _comb2(table.counts).sum()
    same_pred = _comb2(table.row_sums).sum()
    same_true = _comb2(table.col_sums).sum()
    total = table.n * (table.n - 1) / 2.0
    return both, same_pred - both, same_true - both, total - same_pred - same_true + both


def rand_index(pred, truth) -> float:
    ss, sd, ds, dd = pair_counts(pred, truth)
    return float((ss + dd) / (ss + sd + ds + dd))


def ari(pred, truth) -> float:
    table = ContingencyTable.from_labels(pred, truth)
    if table.n < 2:
        raise TooFewPoints("pair counting needs at least two points")
    index = _comb2(table.counts).sum()
    a = _comb2(table.row_sums).sum()
    b = _comb2(table.col_sums).sum()
    total = table.n * (table.n - 1) / 2.0
    expected = a * b / total
    maximum = 0.5 * (a + b)
    if maximum == expected:
        # both partitions trivial (all-singletons or one cluster)
        return 1.0
    return float((index - expected) / (maximum - expected))


def fold_noise(pred, truth, noise_label: int = -1) -> np.ndarray:
    """Ground truth in which every noise point takes the class its cluster maps to.

    Clusters are matched to classes on the non-noise points only; a noise point
    in an unmatched cluster gets a fresh class shared with that cluster.
    """
    p, t = _check(pred, truth)
    folded = t.copy()
    noise = t == noise_label
    if not noise.any():
        return folded
    clean = ~noise
    mapping = {}
    if clean.any():
        table = ContingencyTable.from_labels(p[clean], t[clean])
        pu = np.unique(p[clean])
        tu = np.unique(t[clean])
        rows, cols = linear_sum_assignment(table.counts, maximize=True)
        mapping = {pu[r]: tu[c] for r, c in zip(rows, cols)}
    fresh = int(max(t.max(), 0)) + 1
    for cl in np.unique(p[noise]):
        if cl not in mapping:
            mapping[cl] = fresh
            fresh += 1
    folded[noise] = [mapping[c] for c in p[noise]]
    return folded


@dataclass
class MetricsReport:
    acc: Optional[float] = None
    nmi: Optional[float] = None
    rand_index: Optional[float] = None
    ari: Optional[float] = None
    runtime_seconds: float = 0.0
    stage_timings: dict = field(default_factory=dict)
    # same scores with noise points dropped; present only for data with noise
    noise_excluded: Optional[dict] = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def score(pred, truth) -> dict:
    p, t = _check(pred, truth)
    out = {"acc": accuracy(p, t), "nmi": nmi(p, t)}
    if p.shape[0] >= 2:
        out["rand_index"] = rand_index(p, t)
        out["ari"] = ari(p, t)
    else:
        out["rand_index"] = out["ari"] = None
    return out


def evaluate(pred, truth, noise_label: int = -1, runtime_seconds: float = 0.0, stage_timings=None) -> MetricsReport:
    """Score a labelling; noise points are folded into whatever cluster took them."""
    p, t = _check(pred, truth)
    report = MetricsReport(runtime_seconds=runtime_seconds, stage_timings=dict(stage_timings or {}))
    noise = t == noise_label
    folded = fold_noise(p, t, noise_label) if noise.any() else t
    for key, value in score(p, folded).items():
        setattr(report, key, value)
    if noise.any() and (~noise).any():
        report.noise_excluded = score(p[~noise], t[~noise])
    return report
