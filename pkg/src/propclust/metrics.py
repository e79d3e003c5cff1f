"""Distance functions shared by every graph builder.

Five metrics are supported, addressed by short string names:

    l2        Euclidean distance
    l1        Manhattan distance
    cosine    1 - cos(a, b); a zero vector is at distance 1 from everything
    js        Jensen-Shannon distance, base 2, inputs L1-normalized
    canberra  sum |a_i - b_i| / (|a_i| + |b_i|), 0/0 terms contribute 0

All of them satisfy d(a, a) = 0 and d(a, b) = d(b, a).  ``js`` requires
nonnegative vectors with at least one positive entry.  Inputs may be stored
as float32; accumulation is always float64.
"""

import numpy as np
from scipy.spatial import distance as _sdist

METRICS = ("l2", "l1", "cosine", "js", "canberra")

_LN2 = float(np.log(2.0))


def check_metric(name):
    if name not in METRICS:
        raise ValueError(f"unknown metric {name!r}; expected one of {METRICS}")
    return name


def check_js_domain(x):
    """Raise if x is unusable under the js metric (rows as distributions)."""
    x = np.asarray(x)
    if np.any(x < 0):
        raise ValueError("js metric requires nonnegative vectors")
    sums = x.sum(axis=-1)
    if np.any(sums <= 0):
        raise ValueError("js metric requires at least one positive entry per vector")


def dist(metric, a, b):
    """Distance between two vectors. Scalar reference path, float64."""
    check_metric(metric)
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    if metric == "l2":
        return float(np.sqrt(np.sum((a - b) ** 2)))
    if metric == "l1":
        return float(np.sum(np.abs(a - b)))
    if metric == "cosine":
        na = np.sqrt(np.sum(a * a))
        nb = np.sqrt(np.sum(b * b))
        if na == 0.0 or nb == 0.0:
            return 1.0
        c = np.dot(a / na, b / nb)
        return float(min(max(1.0 - c, 0.0), 2.0))
    if metric == "js":
        check_js_domain(a)
        check_js_domain(b)
        p = a / a.sum()
        q = b / b.sum()
        m = 0.5 * (p + q)
        s = 0.0
        for v, w in ((p, m), (q, m)):
            nz = v > 0
            s += float(np.sum(v[nz] * np.log(v[nz] / w[nz])))
        # s is 2 * JSD in nats; convert to base 2 and clamp rounding.
        jsd = max(s / (2.0 * _LN2), 0.0)
        return float(min(np.sqrt(jsd), 1.0))
    # canberra
    num = np.abs(a - b)
    den = np.abs(a) + np.abs(b)
    nz = den > 0
    return float(np.sum(num[nz] / den[nz]))


def pairwise(metric, a, b=None):
    """Dense distance matrix between rows of a and rows of b (or a itself).

    Returns float64 of shape (len(a), len(b)).  This is the block kernel
    used by the exact kNN search; cosine goes through a normalized matmul,
    the rest through scipy's C loops.
    """
    check_metric(metric)
    a = np.atleast_2d(np.asarray(a, dtype=np.float64))
    self_mode = b is None
    b = a if self_mode else np.atleast_2d(np.asarray(b, dtype=np.float64))
    if a.shape[1] != b.shape[1]:
        raise ValueError(f"dimension mismatch: {a.shape[1]} vs {b.shape[1]}")
    if metric == "l2":
        return _sdist.cdist(a, b, "euclidean")
    if metric == "l1":
        return _sdist.cdist(a, b, "cityblock")
    if metric == "canberra":
        return _sdist.cdist(a, b, "canberra")
    if metric == "js":
        check_js_domain(a)
        if not self_mode:
            check_js_domain(b)
        d = _sdist.cdist(a, b, "jensenshannon") / np.sqrt(_LN2)
        return np.clip(d, 0.0, 1.0)
    # cosine: normalize rows once, one matmul per block
    ua, za = _unit_rows(a)
    ub, zb = (ua, za) if self_mode else _unit_rows(b)
    d = 1.0 - ua @ ub.T
    np.clip(d, 0.0, 2.0, out=d)
    if za.any():
        d[za, :] = 1.0
    if zb.any():
        d[:, zb] = 1.0
    return d


def _unit_rows(x):
    norms = np.sqrt(np.einsum("ij,ij->i", x, x))
    zero = norms == 0.0
    safe = np.where(zero, 1.0, norms)
    return x / safe[:, None], zero


def prepare_rows(points, metric):
    """Per-metric preprocessed float32 copy for the numba distance kernels.

    cosine rows are unit-normalized and js rows sum-normalized so the
    kernels reduce to a dot product / entropy loop; other metrics use the
    raw values.  Zero cosine rows stay zero, which makes their dot products
    0 and their distance exactly 1, matching the convention above.
    """
    check_metric(metric)
    x = np.ascontiguousarray(points, dtype=np.float32)
    if metric == "cosine":
        u, _ = _unit_rows(x.astype(np.float64))
        return np.ascontiguousarray(u, dtype=np.float32)
    if metric == "js":
        check_js_domain(x)
        s = x.astype(np.float64).sum(axis=1)
        return np.ascontiguousarray(x / s[:, None], dtype=np.float32)
    return x


METRIC_CODES = {name: i for i, name in enumerate(METRICS)}
