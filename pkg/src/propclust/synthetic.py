"""Gaussian mixture sampling and the planted-recovery experiment.

The experiment checks two things on samples from a planted mixture: that a
mutual kNN graph with k = max(k, ceil(c ln n)) restricted to the densest
quantile of points splits into connected components matching the planted
labels (ARI exactly 1), and that a single-component mixture stays one
connected component.  Trial t of a run with seed s draws from an RNG
seeded by (s, t), so any trial can be reproduced alone.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .data import PointSet
from .density import density_order
from .knngraph import build_graph, connected_components, exact_knn
from .scores import ari, contingency


@dataclass
class MixtureSpec:
    """Isotropic Gaussian mixture: one (mean, std, weight) per component."""

    means: np.ndarray    # (C, d)
    stds: np.ndarray     # (C,) positive
    weights: np.ndarray  # (C,) positive, summing to 1
    n: int
    seed: int = 0

    def __post_init__(self):
        self.means = np.atleast_2d(np.asarray(self.means, dtype=np.float64))
        self.stds = np.asarray(self.stds, dtype=np.float64).ravel()
        self.weights = np.asarray(self.weights, dtype=np.float64).ravel()
        c = self.means.shape[0]
        if self.stds.shape != (c,) or self.weights.shape != (c,):
            raise ValueError("means, stds, weights must agree on component count")
        if np.any(self.stds <= 0) or np.any(self.weights <= 0):
            raise ValueError("stds and weights must be positive")
        if abs(self.weights.sum() - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")
        self.weights = self.weights / self.weights.sum()
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def num_components(self):
        return self.means.shape[0]


def sample_mixture(spec, trial=None):
    """Draw spec.n labeled points; trial selects an independent substream."""
    entropy = spec.seed if trial is None else (spec.seed, trial)
    rng = np.random.default_rng(np.random.SeedSequence(entropy))
    comp = rng.choice(spec.num_components, size=spec.n, p=spec.weights)
    noise = rng.standard_normal((spec.n, spec.means.shape[1]))
    pts = spec.means[comp] + spec.stds[comp, None] * noise
    return PointSet(pts.astype(np.float32), name="mixture", true_labels=comp)


def connectivity_experiment(spec, k, density_quantile, trials,
                            c=2.0, metric="l2"):
    """Run the planted-recovery trials; returns a JSON-friendly report."""
    if not 0 < density_quantile <= 1:
        raise ValueError("density_quantile must be in (0, 1]")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    per_trial = []
    for t in range(trials):
        ps = sample_mixture(spec, trial=t)
        k_used = max(k, math.ceil(c * math.log(ps.n)))
        lists = exact_knn(ps, k_used, metric)
        g = build_graph(lists, "mutual", metric=metric)
        dens = density_order(g)
        m = max(1, math.ceil(density_quantile * ps.n))
        keep = np.zeros(ps.n, dtype=bool)
        keep[dens.order[:m]] = True
        comp = connected_components(g, node_mask=keep)
        n_comp = int(comp[keep].max()) + 1
        score = ari(contingency(comp[keep], ps.true_labels[keep]))
        per_trial.append({
            "trial": t,
            "kUsed": k_used,
            "kept": int(m),
            "numComponents": n_comp,
            "ari": score,
            "exactRecovery": bool(score == 1.0),
        })
    rate = sum(r["exactRecovery"] for r in per_trial) / trials
    return {
        "trials": trials,
        "k": k,
        "c": c,
        "densityQuantile": density_quantile,
        "metric": metric,
        "numComponents": spec.num_components,
        "passRate": rate,
        "meanAri": float(np.mean([r["ari"] for r in per_trial])),
        "perTrial": per_trial,
    }


def two_blob_spec(n, d, separation, std=1.0, seed=0):
    """Convenience: two equal-weight blobs separated along the first axis."""
    means = np.zeros((2, d))
    means[1, 0] = separation
    return MixtureSpec(
        means=means, stds=np.full(2, std), weights=np.full(2, 0.5), n=n, seed=seed
    )
