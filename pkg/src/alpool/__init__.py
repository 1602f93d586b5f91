"""Pool-based active learning with classical and quantum-measurement oracles."""

from .core import (Pool, QueryRecord, Sample, SessionState, TrainingSet,
                   session_from_json, session_to_json, transfer_sample,
                   validate_session)
from .datasets import Dataset, DatasetConfig, generate
from .gateway import create_app
from .harness import (ComparisonReport, ExperimentConfig, LearningCurve,
                      compare_strategies, evaluate_accuracy, export_results,
                      run_session)
from .learners import (Committee, LabeledData, ModelParams, TrainConfig,
                       committee_distributions, fit, init_model, labeled_data,
                       loss, loss_gradient, predict_proba, predict_proba_batch,
                       train, train_committee)
from .quantum import (FidelityLedger, MeasureConfig, MeasureResult, PureState,
                      bloch_features, charge, estimate_label,
                      expected_loss_per_shot, fidelity, infidelity_multiplier,
                      measure, prepare_qubit, prepare_qudit, true_label)
from .strategies import (AcquisitionScore, DensityConfig, density_multiplier,
                         random_select, score_density_weighted, score_egl,
                         score_entropy, score_kl_consensus,
                         score_least_confidence, score_margin,
                         score_vote_entropy, select_query, self_training_pick)

__version__ = "0.1.0"
