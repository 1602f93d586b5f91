"""The quantum oracle: projective vs weak measurement and the fidelity bill.

Prepares a qubit near the equator (the hard-to-label region), measures it
both ways at several strengths, and shows how the per-shot fidelity loss,
label error rate, and ledger spend trade off.
"""

import math

import numpy as np

from alpool import (FidelityLedger, MeasureConfig, charge, estimate_label,
                    expected_loss_per_shot, measure, prepare_qubit, true_label)

theta = 2 * math.acos(math.sqrt(0.7))     # p0 = 0.7
state = prepare_qubit(theta, 0.3)
print(f"qubit with p0 = {state.probs()[0]:.2f}, true label {true_label(state)}\n")

rng = np.random.default_rng(11)
shots = 25
print("kind        kappa  exp. loss/shot  est. label  error rate (200 trials)")
for kind, kappa in [("projective", 1.0), ("weak", 1.0), ("weak", 0.5),
                    ("weak", 0.2)]:
    cfg = MeasureConfig(kind=kind, kappa=kappa, shots=shots)
    errors = 0
    for _ in range(200):
        result = measure(state, cfg, rng)
        if estimate_label(result.counts, cfg) != true_label(state):
            errors += 1
    loss = expected_loss_per_shot(state, cfg)
    print(f"{kind:10s}  {kappa:.1f}    {loss:.4f}          "
          f"{estimate_label(result.counts, cfg)}           {errors / 200:.3f}")

print("\ngentler measurements cost less fidelity but mislabel more often.")

ledger = FidelityLedger(threshold=5.0)
cfg = MeasureConfig(kind="weak", kappa=0.5, shots=shots)
per_query = shots * expected_loss_per_shot(state, cfg)
n = 0
while True:
    try:
        charge(ledger, per_query)
        n += 1
    except Exception as exc:
        print(f"\nledger: {n} queries at {per_query:.3f} each, "
              f"spent {ledger.spent:.3f} of {ledger.threshold}")
        print(f"query {n + 1} rejected: {exc}")
        break
