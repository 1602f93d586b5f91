"""Multinomial logistic regression trained by full-batch gradient descent.

Kept deliberately simple: an exact analytic gradient (needed by the
expected-gradient-length strategy) and bit-for-bit deterministic training
given a seed.  A committee is just a list of these models trained from
different seeds, optionally on bootstrap resamples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Pool, TrainingSet
from .errors import DimensionMismatch, DivergenceDetected, EmptySet, TooFewMembers

PROB_SUM_TOL = 1e-9


@dataclass
class ModelParams:
    """Weight matrix K x (d+1); the last column is the bias."""

    weights: np.ndarray

    @property
    def k_classes(self) -> int:
        return self.weights.shape[0]

    @property
    def dim(self) -> int:
        return self.weights.shape[1] - 1


@dataclass
class TrainConfig:
    learning_rate: float = 0.5
    epochs: int = 500
    l2: float = 1e-4
    tolerance: float = 1e-8
    init_seed: int = 0


@dataclass
class Committee:
    members: list[ModelParams]
    member_seeds: list[int]
    resample: bool = False


@dataclass
class LabeledData:
    """Feature matrix and label vector materialized from a training set."""

    X: np.ndarray  # (n, d)
    y: np.ndarray  # (n,) int

    def __len__(self) -> int:
        return self.X.shape[0]


def labeled_data(pool: Pool, training: TrainingSet) -> LabeledData:
    ids = training.ids()
    return LabeledData(X=pool.feature_matrix(ids),
                       y=np.array(training.labels(), dtype=int))


def init_model(k_classes: int, dim: int, seed: int) -> ModelParams:
    rng = np.random.default_rng(seed)
    return ModelParams(weights=rng.uniform(-0.01, 0.01, size=(k_classes, dim + 1)))


def _with_bias(X: np.ndarray) -> np.ndarray:
    return np.hstack([X, np.ones((X.shape[0], 1))])


def _softmax(logits: np.ndarray) -> np.ndarray:
    z = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def predict_proba(model: ModelParams, features: np.ndarray) -> np.ndarray:
    """Class distribution P(y|x) for a single feature vector."""
    features = np.asarray(features, dtype=float)
    if features.shape != (model.dim,):
        raise DimensionMismatch(
            f"expected {model.dim} features, got {features.shape}")
    logits = model.weights[:, :-1] @ features + model.weights[:, -1]
    return _softmax(logits)


def predict_proba_batch(model: ModelParams, X: np.ndarray) -> np.ndarray:
    """Vectorized predict_proba over the rows of X, shape (n, K)."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != model.dim:
        raise DimensionMismatch(f"expected (n, {model.dim}), got {X.shape}")
    return _softmax(X @ model.weights[:, :-1].T + model.weights[:, -1])


def loss(model: ModelParams, data: LabeledData, l2: float = 0.0) -> float:
    """Mean cross-entropy plus (l2/2) * squared norm of the non-bias weights."""
    if len(data) == 0:
        raise EmptySet("loss of an empty set")
    probs = predict_proba_batch(model, data.X)
    picked = probs[np.arange(len(data)), data.y]
    ce = -np.mean(np.log(np.maximum(picked, 1e-300)))
    return float(ce + 0.5 * l2 * np.sum(model.weights[:, :-1] ** 2))


def loss_gradient(model: ModelParams, data: LabeledData,
                  l2: float = 0.0) -> np.ndarray:
    """Exact gradient of :func:`loss` w.r.t. the weight matrix, K x (d+1)."""
    if len(data) == 0:
        raise EmptySet("gradient of an empty set")
    Xb = _with_bias(data.X)
    probs = predict_proba_batch(model, data.X)
    delta = probs.copy()
    delta[np.arange(len(data)), data.y] -= 1.0
    grad = delta.T @ Xb / len(data)
    grad[:, :-1] += l2 * model.weights[:, :-1]
    return grad


def train(model: ModelParams | None, data: LabeledData,
          config: TrainConfig) -> ModelParams:
    """Full-batch gradient descent; deterministic given config.init_seed.

    Starts from ``model`` when given, otherwise from a fresh seeded init.
    Stops early once the gradient norm drops below config.tolerance.
    """
    if len(data) == 0:
        raise EmptySet("cannot train on an empty set")
    if model is None:
        k = int(data.y.max()) + 1 if len(data) else 2
        model = init_model(k, data.X.shape[1], config.init_seed)
    weights = model.weights.copy()
    for _ in range(config.epochs):
        grad = loss_gradient(ModelParams(weights), data, config.l2)
        if np.linalg.norm(grad) <= config.tolerance:
            break
        weights -= config.learning_rate * grad
        if not np.all(np.isfinite(weights)):
            raise DivergenceDetected("weights became non-finite during training")
    out = ModelParams(weights)
    if not np.isfinite(loss(out, data, config.l2)):
        raise DivergenceDetected("loss became non-finite during training")
    return out


def fit(k_classes: int, data: LabeledData, config: TrainConfig) -> ModelParams:
    """Train from a fresh seeded initialization with a fixed class count."""
    if len(data) == 0:
        raise EmptySet("cannot train on an empty set")
    return train(init_model(k_classes, data.X.shape[1], config.init_seed),
                 data, config)


def train_committee(seeds: list[int], k_classes: int, data: LabeledData,
                    config: TrainConfig, resample: bool = False) -> Committee:
    """Train one member per seed; with resample, each on a seeded bootstrap."""
    if len(seeds) < 2:
        raise TooFewMembers(f"committee needs >= 2 members, got {len(seeds)}")
    if len(data) == 0:
        raise EmptySet("cannot train a committee on an empty set")
    members = []
    for seed in seeds:
        member_cfg = TrainConfig(learning_rate=config.learning_rate,
                                 epochs=config.epochs, l2=config.l2,
                                 tolerance=config.tolerance, init_seed=seed)
        member_data = data
        if resample:
            rng = np.random.default_rng(seed)
            idx = rng.integers(0, len(data), size=len(data))
            member_data = LabeledData(X=data.X[idx], y=data.y[idx])
        members.append(fit(k_classes, member_data, member_cfg))
    return Committee(members=members, member_seeds=list(seeds), resample=resample)


def committee_distributions(committee: Committee,
                            features: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
    """Per-member class distributions and hard vote counts V(y) per class.

    Argmax ties break toward the lowest class index, so vote counts are
    deterministic.
    """
    dists = [predict_proba(m, features) for m in committee.members]
    k = committee.members[0].k_classes
    votes = np.zeros(k, dtype=int)
    for dist in dists:
        votes[int(np.argmax(dist))] += 1
    return dists, votes
