"""Weighted modularity and the two propagation baselines.

Distances become similarities through one of two transforms:

    gaussian   w = exp(-d^2 / sigma^2), sigma defaulting to the mean edge
               distance of the graph being transformed
    inverse    w = 1 / (d + eps), eps defaulting to 1e-12

Modularity uses the ordered-pair convention: every undirected edge
contributes twice, a self-loop (which only aggregation introduces) once,
and node strength is the CSR row sum.  With that convention the volume of
an aggregated super-node equals the summed strength of its members, so
modularity is preserved exactly across aggregation levels.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from numba import njit

from .data import remap_labels
from .dane import Clustering

TRANSFORMS = ("gaussian", "inverse")


@dataclass
class SimilarityTransform:
    """Distance-to-weight map; scale=None picks the per-graph default."""

    kind: str = "gaussian"
    scale: float | None = None

    def __post_init__(self):
        if self.kind not in TRANSFORMS:
            raise ValueError(f"unknown transform {self.kind!r}; expected one of {TRANSFORMS}")
        if self.scale is not None and self.scale <= 0:
            raise ValueError("transform scale must be positive")

    def resolve_scale(self, g):
        if self.scale is not None:
            return float(self.scale)
        if self.kind == "inverse":
            return 1e-12
        mean = float(np.mean(g.dists)) if g.dists.shape[0] else 0.0
        return mean if mean > 0 else 1.0

    def apply(self, dists, g):
        s = self.resolve_scale(g)
        d = np.asarray(dists, dtype=np.float64)
        if self.kind == "gaussian":
            return np.exp(-(d * d) / (s * s))
        return 1.0 / (d + s)


@dataclass
class WeightedGraph:
    """Similarity-weighted CSR adjacency; symmetric, self-loops allowed."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray

    def strengths(self):
        out = np.zeros(self.n, dtype=np.float64)
        np.add.at(out, np.repeat(np.arange(self.n), np.diff(self.indptr)), self.weights)
        return out

    def to_csr(self):
        return sp.csr_matrix(
            (self.weights, self.indices, self.indptr), shape=(self.n, self.n)
        )


def to_weighted(g, transform=None):
    """Apply a similarity transform to a NeighborGraph's edge distances."""
    t = transform if transform is not None else SimilarityTransform()
    w = t.apply(g.dists, g)
    return WeightedGraph(
        n=g.n,
        indptr=g.indptr.astype(np.int64),
        indices=g.indices.astype(np.int32),
        weights=np.asarray(w, dtype=np.float64),
    )


@dataclass
class Partition:
    """Bookkeeping for a labeling of a WeightedGraph.

    volume[c] is the summed strength of community c, intra[c] the ordered
    intra-community weight (each internal undirected edge twice, self-loops
    once).  Supports O(deg) incremental moves so gain formulas can be
    checked against full recomputation.
    """

    graph: WeightedGraph
    community: np.ndarray
    volume: np.ndarray
    intra: np.ndarray
    two_m: float

    @classmethod
    def from_labels(cls, wg, labels):
        labels = np.asarray(labels, dtype=np.int64)
        if labels.shape != (wg.n,):
            raise ValueError("labels length mismatch")
        if np.any(labels < 0):
            raise ValueError("negative community id")
        nc = int(labels.max()) + 1 if wg.n else 0
        strength = wg.strengths()
        two_m = float(strength.sum())
        if two_m <= 0:
            raise ValueError("graph has zero total weight")
        volume = np.zeros(nc)
        np.add.at(volume, labels, strength)
        src = np.repeat(np.arange(wg.n), np.diff(wg.indptr))
        same = labels[src] == labels[wg.indices]
        intra = np.zeros(nc)
        np.add.at(intra, labels[src[same]], wg.weights[same])
        return cls(graph=wg, community=labels.copy(), volume=volume,
                   intra=intra, two_m=two_m)

    def check(self):
        if abs(self.volume.sum() - self.two_m) > 1e-6 * max(self.two_m, 1.0):
            raise ValueError("volumes do not sum to 2m")
        if np.any(self.intra > self.volume + 1e-9 * max(self.two_m, 1.0)):
            raise ValueError("intra weight exceeds volume")
        return self

    def modularity(self, resolution=1.0):
        v = self.volume / self.two_m
        return float(np.sum(self.intra) / self.two_m - resolution * np.sum(v * v))

    def _node_comm_weights(self, i):
        wg = self.graph
        lo, hi = wg.indptr[i], wg.indptr[i + 1]
        w = {}
        self_loop = 0.0
        for j, wij in zip(wg.indices[lo:hi].tolist(), wg.weights[lo:hi].tolist()):
            if j == i:
                self_loop += wij
            else:
                c = int(self.community[j])
                w[c] = w.get(c, 0.0) + wij
        return w, self_loop

    def move_gain(self, i, target, resolution=1.0):
        """Modularity change of moving node i to the target community."""
        c0 = int(self.community[i])
        if target == c0:
            return 0.0
        w, _ = self._node_comm_weights(i)
        s = self._strength(i)
        a = w.get(c0, 0.0)
        b = w.get(int(target), 0.0)
        v0 = self.volume[c0]
        v1 = self.volume[int(target)] if target < self.volume.shape[0] else 0.0
        return (2.0 / self.two_m) * (
            (b - a) - resolution * s * (v1 - v0 + s) / self.two_m
        )

    def _strength(self, i):
        wg = self.graph
        lo, hi = wg.indptr[i], wg.indptr[i + 1]
        return float(np.sum(wg.weights[lo:hi]))

    def move(self, i, target):
        """Apply the move, updating volume/intra bookkeeping in O(deg)."""
        c0 = int(self.community[i])
        target = int(target)
        if target == c0:
            return
        if target >= self.volume.shape[0]:
            grow = target + 1 - self.volume.shape[0]
            self.volume = np.concatenate([self.volume, np.zeros(grow)])
            self.intra = np.concatenate([self.intra, np.zeros(grow)])
        w, self_loop = self._node_comm_weights(i)
        s = self._strength(i)
        self.volume[c0] -= s
        self.volume[target] += s
        self.intra[c0] -= 2.0 * w.get(c0, 0.0) + self_loop
        self.intra[target] += 2.0 * w.get(target, 0.0) + self_loop
        self.community[i] = target


def modularity_score(wg, labels, resolution=1.0):
    """Weighted modularity of a labeling (any nonnegative integer labels)."""
    if isinstance(labels, Clustering):
        labels = labels.labels
    return Partition.from_labels(wg, labels).modularity(resolution)


@njit(cache=True)
def _louvain_pass(indptr, indices, weights, order, comm, strength, vol,
                  two_m, resolution, gain_floor):
    n = order.shape[0]
    ncap = vol.shape[0]
    comm_w = np.zeros(ncap)
    mark = np.full(ncap, -1, dtype=np.int64)
    touched = np.empty(ncap, dtype=np.int64)
    moved = 0
    for oi in range(n):
        i = order[oi]
        c0 = comm[i]
        nt = 0
        for e in range(indptr[i], indptr[i + 1]):
            j = indices[e]
            if j == i:
                continue
            cj = comm[j]
            if mark[cj] != i:
                mark[cj] = i
                comm_w[cj] = 0.0
                touched[nt] = cj
                nt += 1
            comm_w[cj] += weights[e]
        vol[c0] -= strength[i]
        stay_w = comm_w[c0] if mark[c0] == i else 0.0
        stay = stay_w - resolution * strength[i] * vol[c0] / two_m
        best_gain = -np.inf
        best_c = -1
        for t in range(nt):
            c = touched[t]
            if c == c0:
                continue
            g = comm_w[c] - resolution * strength[i] * vol[c] / two_m
            if g > best_gain or (g == best_gain and c < best_c):
                best_gain = g
                best_c = c
        if best_c >= 0 and 2.0 * (best_gain - stay) > gain_floor:
            comm[i] = best_c
            vol[best_c] += strength[i]
            moved += 1
        else:
            vol[c0] += strength[i]
    return moved


def louvain(wg, seed=0, resolution=1.0, min_gain=1e-9):
    """Greedy modularity maximization with aggregation levels.

    Node visit order is reshuffled every pass from the given seed.  A move
    happens only when it raises modularity by more than min_gain, so the
    result is invariant under uniform weight scaling.
    """
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed))
    a = wg.to_csr().astype(np.float64)
    a.sum_duplicates()
    a.sort_indices()
    node_map = np.arange(wg.n, dtype=np.int64)
    history = []
    while True:
        n_cur = a.shape[0]
        strength = np.asarray(a.sum(axis=1)).ravel()
        two_m = float(strength.sum())
        if two_m <= 0:
            raise ValueError("graph has zero total weight")
        comm = np.arange(n_cur, dtype=np.int64)
        vol = strength.copy()
        gain_floor = min_gain * two_m
        while True:
            order = rng.permutation(n_cur).astype(np.int64)
            moved = _louvain_pass(
                a.indptr.astype(np.int64), a.indices.astype(np.int64), a.data,
                order, comm, strength, vol, two_m, resolution, gain_floor,
            )
            if moved == 0:
                break
        uniq, compact = np.unique(comm, return_inverse=True)
        node_map = compact[node_map]
        history.append(modularity_score(wg, node_map, resolution))
        if uniq.shape[0] == n_cur:
            break
        p = sp.csr_matrix(
            (np.ones(n_cur), (np.arange(n_cur), compact)),
            shape=(n_cur, uniq.shape[0]),
        )
        a = (p.T @ a @ p).tocsr()
        a.sum_duplicates()
        a.sort_indices()
    labels = remap_labels(node_map)
    result = Clustering(labels=labels, num_clusters=int(labels.max()) + 1)
    result.level_modularity = history
    return result.validate()


@njit(cache=True)
def _lpa_pass(indptr, indices, weights, order, labels):
    n = order.shape[0]
    lw = np.zeros(n)
    mark = np.full(n, -1, dtype=np.int64)
    touched = np.empty(n, dtype=np.int64)
    changes = 0
    for oi in range(n):
        i = order[oi]
        nt = 0
        for e in range(indptr[i], indptr[i + 1]):
            j = indices[e]
            if j == i:
                continue
            lj = labels[j]
            if mark[lj] != i:
                mark[lj] = i
                lw[lj] = 0.0
                touched[nt] = lj
                nt += 1
            lw[lj] += weights[e]
        if nt == 0:
            continue
        best_l = -1
        best_w = -1.0
        for t in range(nt):
            lab = touched[t]
            w = lw[lab]
            if w > best_w or (w == best_w and lab < best_l):
                best_l = lab
                best_w = w
        if best_l != labels[i]:
            labels[i] = best_l
            changes += 1
    return changes


def lpa(wg, seed=0, max_iters=100):
    """Asynchronous weighted label propagation.

    Each node adopts the neighboring label with the largest incident
    weight sum (ties to the smallest label id); stops on a pass with no
    change or after max_iters passes.
    """
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed))
    labels = np.arange(wg.n, dtype=np.int64)
    indptr = wg.indptr.astype(np.int64)
    indices = wg.indices.astype(np.int64)
    weights = wg.weights.astype(np.float64)
    for _ in range(max_iters):
        order = rng.permutation(wg.n).astype(np.int64)
        if _lpa_pass(indptr, indices, weights, order, labels) == 0:
            break
    labels = remap_labels(labels)
    return Clustering(labels=labels, num_clusters=int(labels.max()) + 1).validate()
