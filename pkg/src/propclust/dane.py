"""Deterministic density-ordered cluster expansion on a neighbor graph.

Points are scanned in descending density order; each still-unlabeled point
seeds a cluster and grows it through a min-priority frontier.  A frontier
entry for x' pushed from x carries priority d(x, x') + d_k(x'), so the
expansion prefers close, dense continuations.  When a popped point has no
directed neighbor in its predecessor's cluster it starts a new cluster
instead of joining, which is what splits one connected component into
several clusters along sparse boundaries.

The reachability guard keeps the frontier small: a push to x' is dropped
unless its edge is strictly shorter than the best previous push to x'.
Dropped entries would have popped after x' was already labeled, so the
guard does not change the labeling (ties between equal-distance pushes
from different predecessors excepted, which cannot occur on points in
general position).
"""

import heapq
from dataclasses import dataclass, field

import numpy as np


@dataclass
class Clustering:
    """Total labeling with contiguous cluster ids 0..num_clusters-1."""

    labels: np.ndarray
    num_clusters: int

    def validate(self):
        lab = np.asarray(self.labels)
        if lab.ndim != 1 or lab.shape[0] < 1:
            raise ValueError("labels must be a nonempty 1-d array")
        if np.any(lab < 0):
            raise ValueError("unlabeled point present")
        seen = np.unique(lab)
        if seen.shape[0] != self.num_clusters or np.any(
            seen != np.arange(self.num_clusters)
        ):
            raise ValueError("cluster ids not contiguous 0..C-1")
        return self


@dataclass
class ExpansionResult(Clustering):
    """Clustering plus the per-cluster seed ids and a frontier-size audit."""

    seed_ids: np.ndarray = field(default_factory=lambda: np.empty(0, np.int64))
    queue_insertions: int = 0


def expand(g, lists, order, use_reach_guard=True):
    """Run the density-ordered expansion.

    g is the undirected NeighborGraph, lists the directed kNN lists used for
    the join check, order a DensityOrder.  Labels come out compacted in
    first-assignment order, so cluster 0 is seeded by the densest point.
    """
    n = g.n
    if lists.ids.shape[0] != n or order.order.shape[0] != n:
        raise ValueError("graph, lists, and order disagree on n")
    labels = np.full(n, -1, dtype=np.int64)
    reach = np.full(n, np.inf)
    radius = g.k_radius
    indptr, indices, dists = g.indptr, g.indices, g.dists
    knn_ids = lists.ids
    heap = []
    seeds = []
    insertions = 0
    next_cluster = 0

    def push_from(x):
        nonlocal insertions
        cnt = 0
        for e in range(indptr[x], indptr[x + 1]):
            j = int(indices[e])
            if labels[j] >= 0:
                continue
            d = dists[e]
            if use_reach_guard:
                if not d < reach[j]:
                    continue
                reach[j] = d
            heapq.heappush(heap, (d + radius[j], j, x))
            cnt += 1
        insertions += cnt

    for x in order.order.tolist():
        if labels[x] >= 0:
            continue
        labels[x] = next_cluster
        seeds.append(x)
        next_cluster += 1
        push_from(x)
        while heap:
            _, y, pred = heapq.heappop(heap)
            if labels[y] >= 0:
                continue  # stale entry
            target = labels[pred]
            joined = False
            for j in knn_ids[y]:
                if labels[j] == target:
                    joined = True
                    break
            if joined:
                labels[y] = target
            else:
                labels[y] = next_cluster
                seeds.append(y)
                next_cluster += 1
            push_from(y)

    return ExpansionResult(
        labels=labels,
        num_clusters=next_cluster,
        seed_ids=np.asarray(seeds, dtype=np.int64),
        queue_insertions=insertions,
    ).validate()


def join_gain(g, lists, node, labels, cluster, transform=None):
    """Best similarity from node's directed list into the given cluster.

    Returns -inf when no directed neighbor carries that label.  This is the
    greedy objective the expansion's join check thresholds: it joins when
    any directed neighbor is in the predecessor's cluster, i.e. when this
    gain is finite.
    """
    if transform is None:
        from .community import SimilarityTransform

        transform = SimilarityTransform()
    best = -np.inf
    weights = transform.apply(lists.dists[node], g)
    for pos, j in enumerate(lists.ids[node]):
        if labels[j] == cluster and weights[pos] > best:
            best = float(weights[pos])
    return best
