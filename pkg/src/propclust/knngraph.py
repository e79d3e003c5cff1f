"""Exact kNN lists and undirected neighbor graphs.

The directed kNN lists exclude self by id (duplicate points at distance 0
are kept) and break distance ties by smaller neighbor id.  An undirected
graph is the union of the directed edges (``symmetric`` mode: edge iff
either endpoint lists the other) or their intersection (``mutual`` mode).
Stored edge distances are symmetric by construction: when both directions
of a pair were computed, the record from the smaller source id wins.
"""

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .metrics import METRICS, check_metric, pairwise

MODES = ("symmetric", "mutual")


@dataclass
class KnnLists:
    """Directed k-nearest-neighbor lists, rows sorted by (distance, id)."""

    k: int
    ids: np.ndarray    # (n, k) int32, no self, no duplicates within a row
    dists: np.ndarray  # (n, k) float64, nondecreasing along each row

    @property
    def n(self):
        return self.ids.shape[0]

    def validate(self):
        n, k = self.ids.shape
        if k != self.k or self.dists.shape != (n, k):
            raise ValueError("inconsistent KnnLists shapes")
        if k == 0:
            return self
        if np.any(self.ids == np.arange(n)[:, None]):
            raise ValueError("self listed as neighbor")
        if np.any((self.ids < 0) | (self.ids >= n)):
            raise ValueError("neighbor id out of range")
        if np.any(np.diff(self.dists, axis=1) < 0):
            raise ValueError("row distances not sorted")
        for i in range(n):
            if len(set(self.ids[i].tolist())) != k:
                raise ValueError(f"duplicate neighbor ids in row {i}")
        return self


@dataclass
class NeighborGraph:
    """Undirected weighted-by-distance graph in CSR form.

    indices/dists hold both directions of every edge; each node's slice is
    sorted by neighbor id.  k_radius[i] is the distance to i's k-th nearest
    neighbor (from the directed lists the graph was built from).
    """

    n: int
    k: int
    mode: str
    indptr: np.ndarray    # (n+1,) int64
    indices: np.ndarray   # (2E,) int32
    dists: np.ndarray     # (2E,) float64
    k_radius: np.ndarray  # (n,) float64
    metric: str | None = None

    @property
    def num_edges(self):
        return self.indices.shape[0] // 2

    def neighbors(self, i):
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.indices[lo:hi], self.dists[lo:hi]

    def validate(self):
        if self.mode not in MODES:
            raise ValueError(f"bad mode {self.mode!r}")
        if self.indptr.shape != (self.n + 1,) or self.indptr[0] != 0:
            raise ValueError("bad indptr")
        if self.indptr[-1] != self.indices.shape[0]:
            raise ValueError("indptr does not cover indices")
        m = sp.csr_matrix(
            (self.dists, self.indices, self.indptr), shape=(self.n, self.n)
        )
        if (m != m.T).nnz != 0:
            raise ValueError("adjacency not symmetric with equal stored distances")
        if np.any(self.indices == np.repeat(np.arange(self.n), np.diff(self.indptr))):
            raise ValueError("self-loop present")
        return self


def exact_knn(ps, k, metric, n_jobs=1, block_rows=None):
    """Brute-force exact kNN lists for every point of ps.

    Work is split over fixed-size row blocks, so the result is identical
    for any n_jobs.  Each block computes a dense distance slab, widens the
    k-th-value boundary to catch ties, and resolves them by (dist, id).
    """
    check_metric(metric)
    x = ps.points if hasattr(ps, "points") else np.asarray(ps)
    n = x.shape[0]
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, n-1]; got k={k}, n={n}")
    xq = x.astype(np.float64)
    if block_rows is None:
        # keep each distance slab near 64MB
        block_rows = max(1, min(n, int(8e6 / max(n, 1))))
    ids = np.empty((n, k), dtype=np.int32)
    dd = np.empty((n, k), dtype=np.float64)
    starts = range(0, n, block_rows)

    def run_block(lo):
        hi = min(lo + block_rows, n)
        d = pairwise(metric, xq[lo:hi], xq)
        d[np.arange(hi - lo), np.arange(lo, hi)] = np.inf
        kth = np.partition(d, k - 1, axis=1)[:, k - 1]
        for r in range(hi - lo):
            row = d[r]
            cand = np.flatnonzero(row <= kth[r])
            order = np.lexsort((cand, row[cand]))[:k]
            sel = cand[order]
            ids[lo + r] = sel
            dd[lo + r] = row[sel]

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as ex:
            list(ex.map(run_block, starts))
    else:
        for lo in starts:
            run_block(lo)
    return KnnLists(k=k, ids=ids, dists=dd)


def prefix_lists(lists, k):
    """First k columns of sorted lists; for exact lists this is exact_knn at k."""
    if not 1 <= k <= lists.k:
        raise ValueError(f"k must be in [1, {lists.k}]")
    return KnnLists(k=k, ids=lists.ids[:, :k].copy(), dists=lists.dists[:, :k].copy())


def knn_recall(approx, exact):
    """Fraction of true kNN pairs recovered by the approximate lists."""
    if approx.ids.shape != exact.ids.shape:
        raise ValueError("shape mismatch between lists")
    n, k = exact.ids.shape
    hits = 0
    for i in range(n):
        hits += len(np.intersect1d(approx.ids[i], exact.ids[i]))
    return hits / float(n * k)


def build_graph(lists, mode, metric=None):
    """Close directed lists into an undirected NeighborGraph."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    n, k = lists.ids.shape
    src = np.repeat(np.arange(n, dtype=np.int64), k)
    dst = lists.ids.ravel().astype(np.int64)
    dd = lists.dists.ravel()
    lo = np.minimum(src, dst)
    hi = np.maximum(src, dst)
    key = lo * n + hi
    # order records by (pair, source id): first record per pair is the
    # canonical one, and a pair with 2 records is present in both directions
    order = np.lexsort((src, key))
    key = key[order]
    src_o = src[order]
    dd_o = dd[order]
    uniq, first, counts = np.unique(key, return_index=True, return_counts=True)
    if mode == "mutual":
        keep = counts == 2
        uniq, first = uniq[keep], first[keep]
    eu = (uniq // n).astype(np.int32)
    ev = (uniq % n).astype(np.int32)
    ew = dd_o[first]
    return _graph_from_edges(n, k, mode, eu, ev, ew, lists.dists, metric)


def _graph_from_edges(n, k, mode, eu, ev, ew, directed_dists=None, metric=None):
    heads = np.concatenate([eu, ev])
    tails = np.concatenate([ev, eu])
    ww = np.concatenate([ew, ew])
    order = np.lexsort((tails, heads))
    heads, tails, ww = heads[order], tails[order], ww[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, heads + 1, 1)
    np.cumsum(indptr, out=indptr)
    if directed_dists is not None and directed_dists.shape[1] > 0:
        k_radius = directed_dists[:, -1].astype(np.float64).copy()
    else:
        k_radius = _radius_from_adjacency(n, k, indptr, ww)
    return NeighborGraph(
        n=n, k=k, mode=mode, indptr=indptr,
        indices=tails.astype(np.int32), dists=ww.astype(np.float64),
        k_radius=k_radius, metric=metric,
    )


def _radius_from_adjacency(n, k, indptr, dists):
    r = np.zeros(n, dtype=np.float64)
    for i in range(n):
        d = dists[indptr[i]:indptr[i + 1]]
        if d.shape[0] == 0:
            r[i] = np.inf
        elif d.shape[0] >= k:
            r[i] = np.partition(d, k - 1)[k - 1]
        else:
            r[i] = d.max()
    return r


def connected_components(g, node_mask=None):
    """Component labels, numbered by smallest contained node id.

    With node_mask, only masked nodes participate; excluded nodes get -1.
    """
    full = sp.csr_matrix((g.dists + 1.0, g.indices, g.indptr), shape=(g.n, g.n))
    if node_mask is None:
        _, raw = sp.csgraph.connected_components(full, directed=False)
        return _first_occurrence_relabel(raw)
    node_mask = np.asarray(node_mask, dtype=bool)
    if node_mask.shape != (g.n,):
        raise ValueError("node_mask length mismatch")
    sub = full[node_mask][:, node_mask]
    _, raw = sp.csgraph.connected_components(sub, directed=False)
    out = np.full(g.n, -1, dtype=np.int64)
    out[node_mask] = _first_occurrence_relabel(raw)
    return out


def _first_occurrence_relabel(raw):
    mapping = {}
    out = np.empty(raw.shape[0], dtype=np.int64)
    for i, v in enumerate(raw.tolist()):
        if v not in mapping:
            mapping[v] = len(mapping)
        out[i] = mapping[v]
    return out


def save_graph(g, path):
    """Text serialization: header 'n k mode metric', lines 'i j dist' (i<j).

    Distances use %.9g, which round-trips the float32-derived values the
    library produces; loading and re-saving is byte-identical.
    """
    buf = io.StringIO()
    metric = g.metric if g.metric is not None else "none"
    buf.write(f"{g.n} {g.k} {g.mode} {metric}\n")
    for i in range(g.n):
        nbrs, dd = g.neighbors(i)
        sel = nbrs > i
        for j, d in zip(nbrs[sel].tolist(), dd[sel].tolist()):
            buf.write("%d %d %.9g\n" % (i, j, d))
    with open(path, "w", encoding="utf-8") as f:
        f.write(buf.getvalue())


def load_graph(path):
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().split()
        if len(header) != 4:
            raise ValueError(f"{path}: bad graph header")
        n, k, mode, metric = int(header[0]), int(header[1]), header[2], header[3]
        if mode not in MODES:
            raise ValueError(f"{path}: bad mode {mode!r}")
        metric = None if metric == "none" else check_metric(metric)
        eu, ev, ew = [], [], []
        for lineno, line in enumerate(f, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"{path}: line {lineno}: expected 'i j dist'")
            i, j, d = int(parts[0]), int(parts[1]), float(parts[2])
            if not 0 <= i < j < n:
                raise ValueError(f"{path}: line {lineno}: bad edge ({i}, {j})")
            eu.append(i)
            ev.append(j)
            ew.append(d)
    eu = np.asarray(eu, dtype=np.int32)
    ev = np.asarray(ev, dtype=np.int32)
    ew = np.asarray(ew, dtype=np.float64)
    return _graph_from_edges(n, k, mode, eu, ev, ew, None, metric)


def lists_from_graph(g):
    """Reconstruct directed lists from a symmetric-mode graph.

    For graphs built from exact lists this is exact: each node's k nearest
    under (dist, id) within its adjacency are precisely its directed list.
    """
    if g.mode != "symmetric":
        raise ValueError("directed lists can only be reconstructed from symmetric mode")
    n, k = g.n, g.k
    ids = np.empty((n, k), dtype=np.int32)
    dd = np.empty((n, k), dtype=np.float64)
    for i in range(n):
        nbrs, dists = g.neighbors(i)
        if nbrs.shape[0] < k:
            raise ValueError(f"node {i} has degree {nbrs.shape[0]} < k={k}")
        order = np.lexsort((nbrs, dists))[:k]
        ids[i] = nbrs[order]
        dd[i] = dists[order]
    return KnnLists(k=k, ids=ids, dists=dd)
