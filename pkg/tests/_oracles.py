"""Independent reference implementations used to check the library.

Everything here is written directly from the defining formulas with plain
loops and dicts, deliberately sharing no code with the package: distance
functions, brute-force kNN with (dist, id) ties, set-based graph closure,
BFS components, dense modularity, direct ARI/NMI, and an exact expected
mutual information by enumerating all contingency tables with the given
margins (exact rational probabilities).
"""

import math
from collections import deque
from fractions import Fraction

import numpy as np


# distance formulas


def o_l2(a, b):
    return math.sqrt(sum((float(x) - float(y)) ** 2 for x, y in zip(a, b)))


def o_l1(a, b):
    return sum(abs(float(x) - float(y)) for x, y in zip(a, b))


def o_cosine(a, b):
    na = math.sqrt(sum(float(x) ** 2 for x in a))
    nb = math.sqrt(sum(float(y) ** 2 for y in b))
    if na == 0.0 or nb == 0.0:
        return 1.0
    dot = sum(float(x) * float(y) for x, y in zip(a, b))
    return min(max(1.0 - dot / (na * nb), 0.0), 2.0)


def o_js(a, b):
    sa = sum(float(x) for x in a)
    sb = sum(float(y) for y in b)
    p = [float(x) / sa for x in a]
    q = [float(y) / sb for y in b]
    total = 0.0
    for pi, qi in zip(p, q):
        mi = 0.5 * (pi + qi)
        if pi > 0:
            total += 0.5 * pi * math.log2(pi / mi)
        if qi > 0:
            total += 0.5 * qi * math.log2(qi / mi)
    return math.sqrt(min(max(total, 0.0), 1.0))


def o_canberra(a, b):
    total = 0.0
    for x, y in zip(a, b):
        x, y = float(x), float(y)
        den = abs(x) + abs(y)
        if den > 0:
            total += abs(x - y) / den
    return total


ORACLE_METRICS = {
    "l2": o_l2,
    "l1": o_l1,
    "cosine": o_cosine,
    "js": o_js,
    "canberra": o_canberra,
}


def brute_knn(points, k, metric):
    """Per-point full scan; ties resolved by smaller id. Returns (ids, dists)."""
    fn = ORACLE_METRICS[metric]
    n = len(points)
    ids = np.empty((n, k), dtype=np.int64)
    dists = np.empty((n, k), dtype=np.float64)
    for i in range(n):
        cand = []
        for j in range(n):
            if j == i:
                continue
            cand.append((fn(points[i], points[j]), j))
        cand.sort()
        ids[i] = [c[1] for c in cand[:k]]
        dists[i] = [c[0] for c in cand[:k]]
    return ids, dists


# graph closure and components


def closure_edges(ids, mode):
    """Set of undirected pairs (i < j) from directed lists."""
    n = len(ids)
    directed = set()
    for i in range(n):
        for j in ids[i]:
            directed.add((i, int(j)))
    pairs = set()
    for i, j in directed:
        a, b = min(i, j), max(i, j)
        if mode == "symmetric":
            pairs.add((a, b))
        else:
            if (j, i) in directed:
                pairs.add((a, b))
    return pairs


def bfs_components(n, pairs, mask=None):
    """Component labels numbered by smallest contained node; -1 outside mask."""
    adj = {i: [] for i in range(n)}
    for i, j in pairs:
        if mask is None or (mask[i] and mask[j]):
            adj[i].append(j)
            adj[j].append(i)
    labels = [-1] * n
    cur = 0
    for s in range(n):
        if labels[s] >= 0 or (mask is not None and not mask[s]):
            continue
        labels[s] = cur
        q = deque([s])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if labels[y] < 0:
                    labels[y] = cur
                    q.append(y)
        cur += 1
    return np.asarray(labels, dtype=np.int64)


# modularity from the dense definition


def dense_modularity(weights, labels, resolution=1.0):
    """(1/2m) * sum_ij (w_ij - r * s_i s_j / 2m) [L_i == L_j], ordered pairs."""
    w = np.asarray(weights, dtype=np.float64)
    labels = np.asarray(labels)
    s = w.sum(axis=1)
    two_m = s.sum()
    total = 0.0
    n = w.shape[0]
    for i in range(n):
        for j in range(n):
            if labels[i] == labels[j]:
                total += w[i, j] - resolution * s[i] * s[j] / two_m
    return total / two_m


# score formulas


def direct_ari(u, v):
    table = _table(u, v)
    n = len(u)
    s_cells = sum(x * (x - 1) // 2 for x in table.values())
    s_a = sum(x * (x - 1) // 2 for x in _margin(u).values())
    s_b = sum(x * (x - 1) // 2 for x in _margin(v).values())
    total = n * (n - 1) // 2
    if total == 0:
        return 1.0
    exp = s_a * s_b / total
    half = (s_a + s_b) / 2
    if half - exp == 0:
        return 1.0 if _same_partition(u, v) else 0.0
    return (s_cells - exp) / (half - exp)


def direct_nmi(u, v):
    n = len(u)
    hu = _h(_margin(u), n)
    hv = _h(_margin(v), n)
    if hu == 0 or hv == 0:
        return 1.0 if _same_partition(u, v) else 0.0
    return _mi(u, v) / math.sqrt(hu * hv)


def direct_ami(u, v):
    """AMI using the enumeration EMI; exact but only feasible for small n."""
    n = len(u)
    hu = _h(_margin(u), n)
    hv = _h(_margin(v), n)
    if hu == 0 or hv == 0:
        return 1.0 if _same_partition(u, v) else 0.0
    emi = enumerate_emi(sorted(_margin(u).values()), sorted(_margin(v).values()))
    denom = math.sqrt(hu * hv) - emi
    if abs(denom) < 1e-15:
        return 1.0 if _same_partition(u, v) else 0.0
    return (_mi(u, v) - emi) / denom


def _table(u, v):
    t = {}
    for a, b in zip(u, v):
        t[(a, b)] = t.get((a, b), 0) + 1
    return t


def _margin(u):
    m = {}
    for a in u:
        m[a] = m.get(a, 0) + 1
    return m


def _h(margin, n):
    return -sum((c / n) * math.log(c / n) for c in margin.values())


def _mi(u, v):
    n = len(u)
    table = _table(u, v)
    ma, mb = _margin(u), _margin(v)
    total = 0.0
    for (a, b), nij in table.items():
        total += (nij / n) * math.log(n * nij / (ma[a] * mb[b]))
    return total


def _same_partition(u, v):
    return len(set(zip(u, v))) == len(set(u)) == len(set(v))


def enumerate_emi(a_margins, b_margins):
    """Exact E[I] by summing MI over every table with the given margins.

    P(table) = prod(a_i!) prod(b_j!) / (n! prod(n_ij!)) as exact Fractions.
    Only usable for small n / few clusters; that is the point: it shares
    nothing with the hypergeometric cell-marginal formula.
    """
    a = list(a_margins)
    b = list(b_margins)
    n = sum(a)
    assert n == sum(b)
    rows, cols = len(a), len(b)
    const = Fraction(1)
    for x in a:
        const *= math.factorial(x)
    for x in b:
        const *= math.factorial(x)
    const /= math.factorial(n)
    mass = Fraction(0)
    total_mi = 0.0

    cells = [(i, j) for i in range(rows) for j in range(cols)]

    def fill(pos, row_left, col_left, prob_denom, table):
        nonlocal mass, total_mi
        if pos == len(cells):
            if any(row_left) or any(col_left):
                return
            p = const / prob_denom
            mass += p
            mi = 0.0
            for (i, j), nij in zip(cells, table):
                if nij > 0:
                    mi += (nij / n) * math.log(n * nij / (a[i] * b[j]))
            total_mi += float(p) * mi
            return
        i, j = cells[pos]
        # remaining capacity bounds the cell count
        later_in_row = sum(1 for (ii, _) in cells[pos + 1:] if ii == i)
        hi = min(row_left[i], col_left[j])
        for nij in range(hi + 1):
            if later_in_row == 0 and nij != row_left[i]:
                continue  # last cell of the row must absorb the remainder
            row_left[i] -= nij
            col_left[j] -= nij
            fill(pos + 1, row_left, col_left, prob_denom * math.factorial(nij), table + [nij])
            row_left[i] += nij
            col_left[j] += nij

    fill(0, list(a), list(b), Fraction(1), [])
    assert abs(float(mass) - 1.0) < 1e-9, f"table probabilities sum to {float(mass)}"
    return total_mi
