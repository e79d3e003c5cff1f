"""Approximate kNN lists via random-projection trees + neighbor descent.

Seeding: n_trees random-projection trees are built with median splits on
random directions; every leaf is brute-forced into per-point bounded
max-heaps keyed by (distance, id).  Refinement: each iteration samples up
to 2k flagged-new and 2k old candidates per point (random priorities, as
in the canonical algorithm), then joins candidate pairs that share a
point, pushing improvements into both heaps.  Iteration stops early when
an iteration improves fewer than delta * n * k entries.

Everything below the tree build runs in single-threaded numba kernels
seeded from one root seed, so results are reproducible bit-for-bit.  With
one tree, zero iterations, and leaf_size >= n the single leaf brute-forces
every pair and the output equals the exact lists.
"""

import numpy as np
from numba import njit

from .knngraph import KnnLists
from .metrics import METRIC_CODES, check_metric, prepare_rows

_LN2 = float(np.log(2.0))


@njit(cache=True)
def _dist(code, data, i, j):
    d = data.shape[1]
    s = 0.0
    if code == 0:  # l2
        for t in range(d):
            diff = np.float64(data[i, t]) - np.float64(data[j, t])
            s += diff * diff
        return np.sqrt(s)
    elif code == 1:  # l1
        for t in range(d):
            diff = np.float64(data[i, t]) - np.float64(data[j, t])
            s += abs(diff)
        return s
    elif code == 2:  # cosine, rows pre-normalized to unit length
        for t in range(d):
            s += np.float64(data[i, t]) * np.float64(data[j, t])
        out = 1.0 - s
        if out < 0.0:
            out = 0.0
        elif out > 2.0:
            out = 2.0
        return out
    elif code == 3:  # js, rows pre-normalized to sum 1
        for t in range(d):
            p = np.float64(data[i, t])
            q = np.float64(data[j, t])
            m = 0.5 * (p + q)
            if p > 0.0:
                s += p * np.log(p / m)
            if q > 0.0:
                s += q * np.log(q / m)
        v = s / (2.0 * _LN2)
        if v < 0.0:
            v = 0.0
        elif v > 1.0:
            v = 1.0
        return np.sqrt(v)
    else:  # canberra
        for t in range(d):
            p = np.float64(data[i, t])
            q = np.float64(data[j, t])
            den = abs(p) + abs(q)
            if den > 0.0:
                s += abs(p - q) / den
        return s


@njit(cache=True)
def _heap_push(ids, dd, flg, row, j, d, flag):
    """Bounded max-root heap on (dist, id); returns 1 if inserted."""
    if d > dd[row, 0] or (d == dd[row, 0] and ids[row, 0] >= 0 and j >= ids[row, 0]):
        return 0
    k = ids.shape[1]
    for t in range(k):
        if ids[row, t] == j:
            return 0
    pos = 0
    while True:
        left = 2 * pos + 1
        if left >= k:
            break
        swap = left
        sd = dd[row, left]
        si = ids[row, left]
        right = left + 1
        if right < k:
            rd = dd[row, right]
            ri = ids[row, right]
            if rd > sd or (rd == sd and ri > si):
                swap = right
                sd = rd
                si = ri
        if sd > d or (sd == d and si > j):
            dd[row, pos] = sd
            ids[row, pos] = si
            flg[row, pos] = flg[row, swap]
            pos = swap
        else:
            break
    dd[row, pos] = d
    ids[row, pos] = j
    flg[row, pos] = flag
    return 1


@njit(cache=True)
def _leaf_scan(code, data, leaf_idx, leaf_ptr, ids, dd, flg):
    for leaf in range(leaf_ptr.shape[0] - 1):
        for a in range(leaf_ptr[leaf], leaf_ptr[leaf + 1]):
            ia = leaf_idx[a]
            for b in range(a + 1, leaf_ptr[leaf + 1]):
                ib = leaf_idx[b]
                d = _dist(code, data, ia, ib)
                _heap_push(ids, dd, flg, ia, ib, d, 1)
                _heap_push(ids, dd, flg, ib, ia, d, 1)


@njit(cache=True)
def _random_fill(code, data, ids, dd, flg, seed):
    np.random.seed(seed)
    n, k = ids.shape
    for i in range(n):
        missing = 0
        for t in range(k):
            if ids[i, t] < 0:
                missing += 1
        attempts = 0
        while missing > 0 and attempts < 20 * k:
            attempts += 1
            j = np.random.randint(0, n)
            if j == i:
                continue
            d = _dist(code, data, i, j)
            missing -= _heap_push(ids, dd, flg, i, j, d, 1)
        if missing > 0:  # deterministic sweep; k <= n-1 guarantees success
            for j in range(n):
                if missing == 0:
                    break
                if j == i:
                    continue
                d = _dist(code, data, i, j)
                missing -= _heap_push(ids, dd, flg, i, j, d, 1)


@njit(cache=True)
def _cand_push(cid, cpri, row, j, pri):
    """Keep the max_cand smallest-priority candidates per row."""
    if pri >= cpri[row, 0]:
        return
    mc = cid.shape[1]
    for t in range(mc):
        if cid[row, t] == j:
            return
    pos = 0
    while True:
        left = 2 * pos + 1
        if left >= mc:
            break
        swap = left
        sp = cpri[row, left]
        right = left + 1
        if right < mc and cpri[row, right] > sp:
            swap = right
            sp = cpri[row, right]
        if sp > pri:
            cpri[row, pos] = sp
            cid[row, pos] = cid[row, swap]
            pos = swap
        else:
            break
    cpri[row, pos] = pri
    cid[row, pos] = j


@njit(cache=True)
def _build_candidates(ids, flg, max_cand, seed):
    np.random.seed(seed)
    n, k = ids.shape
    new_ids = np.full((n, max_cand), -1, dtype=np.int32)
    new_pri = np.full((n, max_cand), np.inf)
    old_ids = np.full((n, max_cand), -1, dtype=np.int32)
    old_pri = np.full((n, max_cand), np.inf)
    for i in range(n):
        for t in range(k):
            j = ids[i, t]
            if j < 0:
                continue
            pri = np.random.random()
            if flg[i, t] == 1:
                _cand_push(new_ids, new_pri, i, j, pri)
                _cand_push(new_ids, new_pri, j, i, pri)
            else:
                _cand_push(old_ids, old_pri, i, j, pri)
                _cand_push(old_ids, old_pri, j, i, pri)
    for i in range(n):
        for t in range(k):
            j = ids[i, t]
            if j < 0 or flg[i, t] == 0:
                continue
            for s in range(max_cand):
                if new_ids[i, s] == j:
                    flg[i, t] = 0  # sampled this round; old from now on
                    break
    return new_ids, old_ids


@njit(cache=True)
def _join(code, data, ids, dd, flg, new_ids, old_ids):
    n = new_ids.shape[0]
    mc = new_ids.shape[1]
    pushed = 0
    for i in range(n):
        for s in range(mc):
            p = new_ids[i, s]
            if p < 0:
                continue
            for t in range(s + 1, mc):
                q = new_ids[i, t]
                if q < 0 or q == p:
                    continue
                d = _dist(code, data, p, q)
                pushed += _heap_push(ids, dd, flg, p, q, d, 1)
                pushed += _heap_push(ids, dd, flg, q, p, d, 1)
            for t in range(mc):
                q = old_ids[i, t]
                if q < 0 or q == p:
                    continue
                d = _dist(code, data, p, q)
                pushed += _heap_push(ids, dd, flg, p, q, d, 1)
                pushed += _heap_push(ids, dd, flg, q, p, d, 1)
    return pushed


@njit(cache=True)
def _sort_rows(ids, dd):
    n, k = ids.shape
    for i in range(n):
        for a in range(1, k):
            d0 = dd[i, a]
            j0 = ids[i, a]
            b = a - 1
            while b >= 0 and (dd[i, b] > d0 or (dd[i, b] == d0 and ids[i, b] > j0)):
                dd[i, b + 1] = dd[i, b]
                ids[i, b + 1] = ids[i, b]
                b -= 1
            dd[i, b + 1] = d0
            ids[i, b + 1] = j0


def _rp_tree_leaves(data, leaf_size, rng):
    """Index arrays of the leaves of one random-projection tree."""
    n, d = data.shape
    leaves = []
    stack = [np.arange(n, dtype=np.int64)]
    while stack:
        idx = stack.pop()
        if idx.shape[0] <= leaf_size:
            leaves.append(idx)
            continue
        direction = rng.standard_normal(d).astype(np.float32)
        proj = data[idx] @ direction
        med = np.median(proj)
        left = proj < med
        ln = int(left.sum())
        if ln == 0 or ln == idx.shape[0]:
            half = idx.shape[0] // 2  # all projections equal; split by order
            stack.append(idx[:half])
            stack.append(idx[half:])
        else:
            stack.append(idx[left])
            stack.append(idx[~left])
    return leaves


def nndescent_knn(ps, k, metric, n_trees=8, n_iters=5, leaf_size=50,
                  seed=0, n_jobs=1, delta=0.001):
    """Approximate kNN lists; same shape/sorting contract as exact_knn.

    One root seed drives tree directions, heap fill, and candidate
    sampling; the refinement loop is single-threaded regardless of n_jobs,
    so equal seeds give identical lists.
    """
    check_metric(metric)
    x = ps.points if hasattr(ps, "points") else np.asarray(ps)
    n = x.shape[0]
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, n-1]; got k={k}, n={n}")
    if leaf_size < k:
        raise ValueError(f"leaf_size must be >= k; got {leaf_size} < {k}")
    if n_trees < 1:
        raise ValueError("n_trees must be >= 1")
    if n_iters < 0:
        raise ValueError("n_iters must be >= 0")
    data = prepare_rows(x, metric)
    code = METRIC_CODES[metric]
    root = np.random.SeedSequence(entropy=seed)
    tree_seeds = root.spawn(n_trees)
    kernel_seeds = root.generate_state(1 + max(n_iters, 0)).astype(np.int64)
    kernel_seeds &= 0x7FFFFFFF

    ids = np.full((n, k), -1, dtype=np.int32)
    dd = np.full((n, k), np.inf, dtype=np.float64)
    flg = np.zeros((n, k), dtype=np.uint8)
    for t in range(n_trees):
        rng = np.random.default_rng(tree_seeds[t])
        leaves = _rp_tree_leaves(data, leaf_size, rng)
        flat = np.concatenate(leaves)
        ptr = np.zeros(len(leaves) + 1, dtype=np.int64)
        np.cumsum([leaf.shape[0] for leaf in leaves], out=ptr[1:])
        _leaf_scan(code, data, flat, ptr, ids, dd, flg)
    _random_fill(code, data, ids, dd, flg, kernel_seeds[0])

    max_cand = max(2 * k, 32)  # small-k floor keeps the join pool useful
    for it in range(n_iters):
        new_ids, old_ids = _build_candidates(ids, flg, max_cand, kernel_seeds[1 + it])
        pushed = _join(code, data, ids, dd, flg, new_ids, old_ids)
        if pushed <= delta * n * k:
            break
    _sort_rows(ids, dd)
    return KnnLists(k=k, ids=ids, dists=dd)
