"""Tour of the five point metrics.

Every downstream stage (kNN search, graphs, density, clustering) is
parameterized by one of these names, so this is the vocabulary the rest
of the demos build on.
"""

import numpy as np

from propclust import METRICS, dist, pairwise

print("available metrics:", ", ".join(METRICS))
print()

a = np.array([1.0, 0.0, 2.0])
b = np.array([0.0, 1.0, 2.0])
for m in METRICS:
    # js needs nonnegative coordinates, which a and b already are
    print(f"{m:>10}  d(a, b) = {dist(m, a, b):.6f}")
print()

# cosine is scale invariant: rescaling a row does not move it
print("cosine d(a, b)    =", f"{dist('cosine', a, b):.6f}")
print("cosine d(10a, b)  =", f"{dist('cosine', 10 * a, b):.6f}")
print()

# pairwise computes the full rectangular distance matrix in one call
rng = np.random.default_rng(0)
x = rng.standard_normal((4, 3))
y = rng.standard_normal((2, 3))
d = pairwise("l2", x, y)
print("pairwise l2, 4 x 2 block:")
print(np.array_str(d, precision=4))
print()

# with one argument the matrix is square and has a zero diagonal
sq = pairwise("l1", x)
print("square l1 diagonal:", sq.diagonal())
print()

# js treats rows as distributions; negative mass is rejected up front
neg = np.array([[0.5, -0.5], [0.2, 0.8]])
try:
    pairwise("js", neg)
except ValueError as err:
    print("js on a negative row ->", err)
