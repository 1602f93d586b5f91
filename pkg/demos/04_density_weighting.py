"""Density weighting: why the most uncertain point is not always the best ask.

Builds a pool with a dense cluster and a single far-away outlier that the
model is maximally unsure about.  Plain entropy picks the outlier; the
density-weighted score discounts it and queries inside the cluster instead.
"""

import numpy as np

from alpool import (AcquisitionScore, DensityConfig, LabeledData, TrainConfig,
                    density_multiplier, fit, predict_proba, score_entropy,
                    select_query)

rng = np.random.default_rng(3)
lobes = rng.choice([-1.2, 1.2], size=40)
cluster = np.column_stack([rng.normal(lobes, 0.3), rng.normal(0, 0.7, 40)])
outlier = np.array([[0.0, 8.0]])          # dead on the boundary, miles away
X_pool = np.vstack([cluster, outlier])

X_lab = np.array([[-1.5, 0.0], [1.5, 0.0]])
y_lab = np.array([0, 1])
model = fit(2, LabeledData(X_lab, y_lab), TrainConfig(learning_rate=0.5, epochs=300))

base = [AcquisitionScore(i, score_entropy(predict_proba(model, x)))
        for i, x in enumerate(X_pool)]
plain_pick = select_query(base)

cfg = DensityConfig(beta=1.0)
weighted = [AcquisitionScore(
    s.sample_id,
    s.value * density_multiplier(X_pool[i], np.delete(X_pool, i, axis=0), cfg))
    for i, s in enumerate(base)]
dens_pick = select_query(weighted)

print(f"pool: 40 clustered points + outlier at {outlier[0]} (id 40)\n")
for name, pick, scores in [("plain entropy", plain_pick, base),
                           ("density-weighted", dens_pick, weighted)]:
    val = next(s.value for s in scores if s.sample_id == pick)
    where = "the outlier" if pick == 40 else "inside the cluster"
    print(f"{name:17s} picks sample {pick:2d} (score {val:.4f}) -- {where}")

mult = density_multiplier(X_pool[40], np.delete(X_pool, 40, axis=0), cfg)
print(f"\nthe outlier's density multiplier is {mult:.2e}: informative to the "
      "model,\nbut representative of nothing, so beta > 0 pushes it down the queue.")
