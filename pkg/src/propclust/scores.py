"""Partition agreement scores: ARI, NMI, AMI.

All three are computed from the contingency table of two labelings, are
symmetric, and are invariant to label permutations.  Entropies and mutual
information use natural logs; the ratios that come out are base-free.
AMI subtracts the exact expected mutual information under the permutation
model (hypergeometric cell marginals, no approximation) and normalizes by
sqrt(H(U) H(V)), matching the NMI normalization.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln


@dataclass
class ContingencyTable:
    counts: np.ndarray  # (R, C) int64
    a: np.ndarray       # row sums
    b: np.ndarray       # column sums
    n: int

    def identical_partitions(self):
        """True when the two labelings induce the same partition."""
        nz = self.counts > 0
        return bool(np.all(nz.sum(axis=0) == 1) and np.all(nz.sum(axis=1) == 1))


def contingency(u, v):
    u = np.asarray(u).ravel()
    v = np.asarray(v).ravel()
    if u.shape != v.shape:
        raise ValueError(f"label length mismatch: {u.shape[0]} vs {v.shape[0]}")
    if u.shape[0] < 1:
        raise ValueError("empty labelings")
    _, ui = np.unique(u, return_inverse=True)
    _, vi = np.unique(v, return_inverse=True)
    r = int(ui.max()) + 1
    c = int(vi.max()) + 1
    counts = np.bincount(ui * c + vi, minlength=r * c).reshape(r, c).astype(np.int64)
    return ContingencyTable(
        counts=counts, a=counts.sum(axis=1), b=counts.sum(axis=0), n=int(u.shape[0])
    )


def _pair_sum(x):
    x = x.astype(np.int64)
    return int(np.sum(x * (x - 1) // 2))


def ari(table):
    """Adjusted Rand index (pair-counting, hypergeometric adjustment)."""
    t = table
    sum_cells = _pair_sum(t.counts.ravel())
    sum_a = _pair_sum(t.a)
    sum_b = _pair_sum(t.b)
    total = t.n * (t.n - 1) // 2
    if total == 0:
        return 1.0
    expected = sum_a * sum_b / total
    max_index = 0.5 * (sum_a + sum_b)
    denom = max_index - expected
    if denom == 0.0:
        # both trivial partitions (all-singletons or single cluster)
        return 1.0 if t.identical_partitions() else 0.0
    return float((sum_cells - expected) / denom)


def _entropy(margins, n):
    p = margins[margins > 0] / n
    return float(-np.sum(p * np.log(p)))


def _mutual_information(table):
    t = table
    nz = t.counts > 0
    nij = t.counts[nz].astype(np.float64)
    ai = np.broadcast_to(t.a[:, None], t.counts.shape)[nz].astype(np.float64)
    bj = np.broadcast_to(t.b[None, :], t.counts.shape)[nz].astype(np.float64)
    return float(np.sum((nij / t.n) * np.log(t.n * nij / (ai * bj))))


def nmi(table):
    """Mutual information normalized by sqrt(H(U) H(V))."""
    hu = _entropy(table.a, table.n)
    hv = _entropy(table.b, table.n)
    if hu == 0.0 or hv == 0.0:
        return 1.0 if table.identical_partitions() else 0.0
    return float(_mutual_information(table) / np.sqrt(hu * hv))


def expected_mutual_information(table):
    """Exact E[I] under random tables with the observed margins.

    For each cell (i, j) the count follows a hypergeometric law; the
    expectation sums (nij/n) log(n nij / (ai bj)) times the exact pmf over
    the feasible nij range.  Log-gamma keeps the factorials stable.
    """
    t = table
    n = t.n
    log_n = np.log(n)
    base = gammaln(n + 1)
    emi = 0.0
    for ai in t.a.tolist():
        ga = gammaln(ai + 1) + gammaln(n - ai + 1)
        for bj in t.b.tolist():
            lo = max(1, ai + bj - n)
            hi = min(ai, bj)
            if hi < lo:
                continue
            nij = np.arange(lo, hi + 1, dtype=np.float64)
            log_pmf = (
                ga
                + gammaln(bj + 1)
                + gammaln(n - bj + 1)
                - base
                - gammaln(nij + 1)
                - gammaln(ai - nij + 1)
                - gammaln(bj - nij + 1)
                - gammaln(n - ai - bj + nij + 1)
            )
            terms = (nij / n) * (log_n + np.log(nij) - np.log(ai * bj))
            emi += float(np.sum(np.exp(log_pmf) * terms))
    return emi


def ami(table):
    """Adjusted mutual information with exact chance correction."""
    hu = _entropy(table.a, table.n)
    hv = _entropy(table.b, table.n)
    if hu == 0.0 or hv == 0.0:
        return 1.0 if table.identical_partitions() else 0.0
    mi = _mutual_information(table)
    emi = expected_mutual_information(table)
    denom = np.sqrt(hu * hv) - emi
    if abs(denom) < 1e-15:
        return 1.0 if table.identical_partitions() else 0.0
    return float((mi - emi) / denom)


def evaluate_labels(u, v):
    """All three scores plus cluster counts, as a JSON-friendly dict."""
    t = contingency(u, v)
    return {
        "ami": ami(t),
        "nmi": nmi(t),
        "ari": ari(t),
        "numClustersU": int(t.a.shape[0]),
        "numClustersV": int(t.b.shape[0]),
    }
