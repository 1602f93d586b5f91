"""Active learning when every label damages the thing you are labeling.

Runs entropy sampling on a qubit pool where labels come from simulated
measurements, under a hard fidelity budget.  Weak measurements (kappa=0.6)
are noisier per query but cheaper, so the same budget buys more labels
than projective readout.
"""

from alpool import (DatasetConfig, ExperimentConfig, MeasureConfig,
                    TrainConfig, run_session)


def make(measure: MeasureConfig) -> ExperimentConfig:
    return ExperimentConfig(
        dataset=DatasetConfig(kind="qubit", n_pool=500, n_test=300),
        strategy="entropy", init_labels=5, label_budget=80, eval_every=10,
        shots_per_query=25, measure=measure, fidelity_threshold=150.0,
        learner=TrainConfig(learning_rate=1.0, epochs=150, l2=1e-3),
        seeds=[0], name="budgeted")


print("same fidelity budget (150.0), two measurement back-ends:\n")
for measure in (MeasureConfig(kind="projective", shots=25),
                MeasureConfig(kind="weak", kappa=0.6, shots=25)):
    curve, session = run_session(make(measure), seed=0)
    labels, acc, spent = curve.points[-1]
    name = measure.kind if measure.kind == "projective" \
        else f"weak (kappa={measure.kappa})"
    print(f"{name:17s}  {labels:3d} labels bought, "
          f"fidelity spent {spent:7.2f}, accuracy {acc:.3f}")

print("\nthe run stops cleanly when the next query would overspend; the "
      "ledger\nnever goes past its threshold and the curve keeps every "
      "completed round.")
