"""Uncertainty sampling on a 2-D gaussian-blob pool, step by step.

Generates a 3-class pool, labels ten seed points, trains the softmax
learner, and walks through what least-confidence, margin, and entropy say
about the remaining pool before taking a few active queries.
"""

import numpy as np

from alpool import (AcquisitionScore, DatasetConfig, LabeledData, TrainConfig,
                    fit, generate, predict_proba, score_entropy,
                    score_least_confidence, score_margin, select_query)

cfg = DatasetConfig(kind="blobs", n_pool=300, n_test=200, n_classes=3)
data = generate(cfg, seed=0)
pool = data.pool

rng = np.random.default_rng([0, 1])
labeled = sorted(rng.choice(pool.unlabeled_ids, size=10, replace=False).tolist())
X = np.array([pool.samples[i].features for i in labeled])
y = np.array([data.pool_labels[i] for i in labeled])
model = fit(3, LabeledData(X, y), TrainConfig(learning_rate=0.5, epochs=200))

print(f"pool of {len(pool.samples)} points, {len(labeled)} labeled to start\n")

candidates = [i for i in pool.unlabeled_ids if i not in labeled][:5]
print("sample   p(y|x)                     LC      margin  entropy")
for i in candidates:
    p = predict_proba(model, pool.samples[i].features)
    print(f"{i:6d}   {np.round(p, 3)!s:26s} "
          f"{score_least_confidence(p):.4f}  {score_margin(p):.4f}  "
          f"{score_entropy(p):.4f}")

print("\nrunning 5 entropy-driven queries:")
for step in range(5):
    scores = [AcquisitionScore(i, score_entropy(
        predict_proba(model, pool.samples[i].features)))
        for i in pool.unlabeled_ids if i not in labeled]
    pick = select_query(scores)
    labeled.append(pick)
    X = np.vstack([X, pool.samples[pick].features])
    y = np.append(y, data.pool_labels[pick])
    model = fit(3, LabeledData(X, y), TrainConfig(learning_rate=0.5, epochs=200))
    acc = float(np.mean([int(np.argmax(predict_proba(model, f))) == t
                         for f, t in zip(data.test_features, data.test_labels)]))
    print(f"  query {step + 1}: sample {pick:4d}  ->  test accuracy {acc:.3f}")
