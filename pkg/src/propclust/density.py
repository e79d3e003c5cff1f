"""kNN density ranking and the pointwise density estimate."""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln


@dataclass
class DensityOrder:
    """Point ids sorted by descending density 1/d_k, ties by id."""

    order: np.ndarray    # (n,) int64 permutation
    density: np.ndarray  # (n,) float64, +inf where d_k = 0

    def validate(self):
        n = self.order.shape[0]
        if sorted(self.order.tolist()) != list(range(n)):
            raise ValueError("order is not a permutation")
        d = self.density[self.order]
        if np.any(d[:-1] < d[1:]):
            raise ValueError("densities not nonincreasing along order")
        return self


def density_order(g):
    """Rank points of a NeighborGraph by descending 1/k_radius.

    Zero radius means duplicates filled the whole neighbor list; those
    points get +inf density and rank first, among themselves by id.
    """
    r = np.asarray(g.k_radius, dtype=np.float64)
    with np.errstate(divide="ignore"):
        dens = np.where(r > 0, 1.0 / r, np.inf)
    dens[r == np.inf] = 0.0
    order = np.lexsort((np.arange(r.shape[0]), -dens))
    return DensityOrder(order=order, density=dens)


def knn_density_estimate(g, n, d):
    """Pointwise kNN density k / (n * V_d * d_k^d), V_d the unit-ball volume.

    Computed in log space so large d does not overflow the V_d factor;
    d_k = 0 still maps to +inf.
    """
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    r = np.asarray(g.k_radius, dtype=np.float64)
    log_vd = 0.5 * d * np.log(np.pi) - gammaln(0.5 * d + 1.0)
    out = np.empty(r.shape[0], dtype=np.float64)
    pos = r > 0
    with np.errstate(over="ignore"):
        out[pos] = np.exp(
            np.log(g.k) - np.log(n) - log_vd - d * np.log(r[pos])
        )
    out[~pos] = np.inf
    return out
