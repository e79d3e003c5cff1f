"""End-to-end pipeline on the scikit-learn 8x8 digit images.

1797 points, 64 dimensions, 10 classes nobody told the pipeline about.
Sweeps k, clusters the graph three ways, and scores each against the
true digit identity. Needs scikit-learn (only for the dataset).
"""

import numpy as np
from sklearn.datasets import load_digits

from propclust import (
    build_graph,
    density_order,
    evaluate_labels,
    exact_knn,
    expand,
    louvain,
    lpa,
    prefix_lists,
    to_weighted,
)

digits = load_digits()
points = digits.data.astype(np.float32)
truth = digits.target
print(f"{points.shape[0]} images, {points.shape[1]} pixels, {len(set(truth))} digits")
print()

# one exact search at the largest k serves every sweep step via prefixes
ks = range(4, 21, 2)
full = exact_knn(points, max(ks), "cosine")

rows = {"louvain": [], "expansion": [], "lpa": []}
for k in ks:
    lists = prefix_lists(full, k)
    g = build_graph(lists, "symmetric", metric="cosine")
    wg = to_weighted(g)
    rows["louvain"].append(evaluate_labels(louvain(wg, seed=0).labels, truth)["ami"])
    rows["lpa"].append(evaluate_labels(lpa(wg, seed=0).labels, truth)["ami"])
    res = expand(g, lists, density_order(g))
    rows["expansion"].append(evaluate_labels(res.labels, truth)["ami"])

print(f"{'k':>9} " + "".join(f"{k:>6} " for k in ks))
for name, vals in rows.items():
    line = f"{name:>9} " + "".join(f"{v:6.3f} " for v in vals)
    best = max(vals)
    print(line + f"  best {best:.3f} at k={list(ks)[vals.index(best)]}")
