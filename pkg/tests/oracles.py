"""Slow, from-definition reference computations used as test oracles.

None of these share code paths with the package under test beyond plain
numpy arithmetic.
"""
from __future__ import annotations

import itertools
import math
from collections import deque

import numpy as np


def mean_by_accumulation(points):
    acc = [0.0] * len(points[0])
    for p in points:
        for j, v in enumerate(p):
            acc[j] += v
    return [a / len(points) for a in acc]


def distance_loop(points, center):
    return [math.dist(p, center) for p in points]


def diameter_all_pairs(points):
    best = 0.0
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            best = max(best, math.dist(points[i], points[j]))
    return best


# --- spanning trees -------------------------------------------------------

def all_spanning_tree_totals(weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Every labelled spanning tree of K_n via Pruefer decoding, vectorised.

    Returns (totals, edges) where edges has shape (trees, n-1, 2).
    """
    n = weights.shape[0]
    if n == 1:
        return np.zeros(1), np.zeros((1, 0, 2), dtype=np.int64)
    if n == 2:
        return np.array([weights[0, 1]]), np.array([[[0, 1]]])
    seqs = np.array(list(itertools.product(range(n), repeat=n - 2)), dtype=np.int64)
    m = seqs.shape[0]
    rows = np.arange(m)
    degree = np.ones((m, n), dtype=np.int64)
    for col in range(n - 2):
        np.add.at(degree, (rows, seqs[:, col]), 1)
    edges = np.zeros((m, n - 1, 2), dtype=np.int64)
    for col in range(n - 2):
        leaf = np.argmax(degree == 1, axis=1)  # smallest leaf
        target = seqs[:, col]
        edges[:, col, 0] = leaf
        edges[:, col, 1] = target
        degree[rows, leaf] -= 1
        degree[rows, target] -= 1
    last = np.argsort(degree != 1, axis=1, kind="stable")[:, :2]
    edges[:, n - 2, 0] = last[:, 0]
    edges[:, n - 2, 1] = last[:, 1]
    totals = weights[edges[:, :, 0], edges[:, :, 1]].sum(axis=1)
    return totals, edges


def brute_force_mst_weight(weights: np.ndarray) -> float:
    """Exact (fsum) total of the lightest spanning tree."""
    totals, edges = all_spanning_tree_totals(weights)
    best = totals.min()
    near = np.flatnonzero(totals <= best + 1e-9 * max(1.0, abs(best)))
    return min(
        math.fsum(weights[a, b] for a, b in edges[t]) for t in near
    )


# --- clustering -----------------------------------------------------------

def single_linkage_partition(dissim: np.ndarray, k: int) -> set:
    """Naive agglomerative single linkage stopped at k clusters."""
    clusters = [{i} for i in range(dissim.shape[0])]
    while len(clusters) > k:
        best = None
        for x in range(len(clusters)):
            for y in range(x + 1, len(clusters)):
                d = min(dissim[i, j] for i in clusters[x] for j in clusters[y])
                if best is None or d < best[0]:
                    best = (d, x, y)
        _, x, y = best
        clusters[x] |= clusters.pop(y)
    return {frozenset(c) for c in clusters}


def bfs_components(n: int, edges) -> list[int]:
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    label = [-1] * n
    nxt = 0
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = nxt
        q = deque([s])
        while q:
            u = q.popleft()
            for v in adj[u]:
                if label[v] < 0:
                    label[v] = nxt
                    q.append(v)
        nxt += 1
    return label


def as_partition(labels) -> set:
    groups = {}
    for i, lab in enumerate(labels):
        groups.setdefault(int(lab), set()).add(i)
    return {frozenset(g) for g in groups.values()}


# --- metrics --------------------------------------------------------------

def accuracy_exhaustive(pred, truth) -> float:
    pu = sorted(set(pred))
    tu = sorted(set(truth))
    size = max(len(pu), len(tu))
    best = 0
    for perm in itertools.permutations(range(size), len(pu)):
        hit = 0
        for p, t in zip(pred, truth):
            j = perm[pu.index(p)]
            if j < len(tu) and tu[j] == t:
                hit += 1
        best = max(best, hit)
    return best / len(pred)


def nmi_probability_table(pred, truth) -> float:
    n = len(pred)
    joint = {}
    for p, t in zip(pred, truth):
        joint[(p, t)] = joint.get((p, t), 0) + 1
    pp, pt = {}, {}
    for (p, t), c in joint.items():
        pp[p] = pp.get(p, 0) + c
        pt[t] = pt.get(t, 0) + c
    hu = -sum(c / n * math.log(c / n) for c in pp.values())
    hv = -sum(c / n * math.log(c / n) for c in pt.values())
    mi = sum(
        c / n * math.log((c / n) / ((pp[p] / n) * (pt[t] / n)))
        for (p, t), c in joint.items()
    )
    if hu == 0 and hv == 0:
        return 1.0
    if hu == 0 or hv == 0:
        return 0.0
    return mi / math.sqrt(hu * hv)


def pair_enumeration(pred, truth) -> tuple[int, int, int, int]:
    """(both same, same in pred only, same in truth only, both different)."""
    ss = sd = ds = dd = 0
    n = len(pred)
    for i in range(n):
        for j in range(i + 1, n):
            a = pred[i] == pred[j]
            b = truth[i] == truth[j]
            if a and b:
                ss += 1
            elif a:
                sd += 1
            elif b:
                ds += 1
            else:
                dd += 1
    return ss, sd, ds, dd


def rand_index_pairs(pred, truth) -> float:
    ss, sd, ds, dd = pair_enumeration(pred, truth)
    return (ss + dd) / (ss + sd + ds + dd)


def ari_pairs(pred, truth) -> float:
    ss, sd, ds, dd = pair_enumeration(pred, truth)
    total = ss + sd + ds + dd
    same_pred = ss + sd
    same_true = ss + ds
    expected = same_pred * same_true / total
    maximum = (same_pred + same_true) / 2
    if maximum == expected:
        return 1.0
    return (ss - expected) / (maximum - expected)
