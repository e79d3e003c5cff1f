"""Comparing labelings: ARI, NMI, and chance-adjusted mutual information.

The scores all read off one contingency table, built once per pair of
labelings. The point of AMI over plain NMI is the chance floor: random
labelings score near zero instead of inheriting a spurious positive
baseline.
"""

import numpy as np

from propclust import ami, ari, contingency, evaluate_labels, nmi

u = np.array([0, 0, 1, 2])
v = np.array([0, 0, 1, 1])
t = contingency(u, v)
print(f"u = {u.tolist()}, v = {v.tolist()}")
print("contingency counts:")
print(t.counts)
print(f"  ari = {ari(t):.6f}   nmi = {nmi(t):.6f}   ami = {ami(t):.6f}")
print()

# all three scores ignore label names
perm = np.array([5, 5, 0, 3])
print("permuted labels, same partition:", ami(contingency(u, perm)) == 1.0)
print()

# chance behavior: shuffle 1000 points into 10 fake clusters twice
rng = np.random.default_rng(11)
a = rng.integers(0, 10, size=1000)
b = rng.integers(0, 10, size=1000)
rt = contingency(a, b)
print("independent random labelings, n = 1000:")
print(f"  nmi = {nmi(rt):+.4f}   (positive bias, never adjusted away)")
print(f"  ami = {ami(rt):+.4f}   (hugs zero)")
print(f"  ari = {ari(rt):+.4f}")
print()

# evaluate_labels is the two-array convenience wrapper that results
# tables use: it builds the table and reports everything at once
report = evaluate_labels(u, v)
for key, val in report.items():
    print(f"  {key}: {val}")
