"""Connectivity experiment on a planted Gaussian mixture.

Samples a two-component mixture, builds the mutual kNN graph on the
densest quantile of points, and asks whether the surviving components
recover the planted assignment exactly. With k at least logarithmic in
n this succeeds essentially always; the experiment also shows the k
floor doing that enforcement.
"""

import json
import math

from propclust import connectivity_experiment
from propclust.synthetic import two_blob_spec

spec = two_blob_spec(n=2000, d=3, separation=20.0, seed=5)
print(f"mixture: {spec.num_components} components, n = {spec.n}, d = {spec.means.shape[1]}")

report = connectivity_experiment(spec, k=4, density_quantile=0.8, trials=8)

# asking for k=4 is below the c*ln(n) floor, so the experiment bumps it
floor = math.ceil(2.0 * math.log(spec.n))
print(f"requested k = 4, floor = {floor}, used k = {report['perTrial'][0]['kUsed']}")
print()

print(f"pass rate: {report['passRate']:.3f} over {report['trials']} trials")
print(f"mean ARI:  {report['meanAri']:.4f}")
print("per trial:")
for row in report["perTrial"][:4]:
    print(
        f"  trial {row['trial']}: kept {row['kept']} points, "
        f"{row['numComponents']} components, ari {row['ari']:.4f}"
    )
print("  ...")
print()

# with c=1.0 the floor drops to ln(n) = 8 and small k is honored, which
# is exactly the regime where recovery starts to crack
low = connectivity_experiment(spec, k=8, density_quantile=0.8, trials=8, c=1.0)
print(f"k = 8 (no floor): pass rate {low['passRate']:.3f}, mean ari {low['meanAri']:.4f}")
print()

print("full report is json-serializable:")
print(json.dumps({k: v for k, v in report.items() if k != "perTrial"}, indent=2))
