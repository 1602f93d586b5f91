"""Seeded dataset generators for the benchmark harness.

Three kinds: classical gaussian blobs, qubit samples drawn uniformly on
the Bloch sphere, and random qudit states.  Quantum samples carry their
pure state (for the measurement oracle) plus real-valued features for the
classical learner: Bloch coordinates for qubits, squared moduli for
qudits.  Ground-truth labels are used only for held-out evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import Pool, Sample
from .errors import ConfigInvalid
from .quantum import PureState, bloch_features, prepare_qubit, prepare_qudit, true_label

DATASET_KINDS = ("blobs", "qubit", "qudit")


@dataclass
class Dataset:
    kind: str
    pool: Pool
    pool_labels: dict[int, int]            # ground truth, oracle-side only
    test_features: np.ndarray
    test_labels: np.ndarray
    n_classes: int
    states: list[PureState] = field(default_factory=list)   # indexed by quantum_ref

    @property
    def n_pool(self) -> int:
        return len(self.pool.samples)


@dataclass
class DatasetConfig:
    kind: str = "qubit"
    n_pool: int = 2000
    n_test: int = 500
    n_classes: int = 2      # blobs only
    qudit_dim: int = 2      # qudit only
    blob_spread: float = 1.0
    label_rule: str = "argmax_amplitude"

    def validate(self):
        if self.kind not in DATASET_KINDS:
            raise ConfigInvalid(f"unknown dataset kind {self.kind!r}")
        if self.n_pool < 1 or self.n_test < 1:
            raise ConfigInvalid("n_pool and n_test must be positive")
        if self.kind == "blobs" and self.n_classes < 2:
            raise ConfigInvalid("blobs need >= 2 classes")
        if self.kind == "qudit" and self.qudit_dim < 2:
            raise ConfigInvalid("qudit_dim must be >= 2")
        if self.label_rule != "argmax_amplitude" and self.kind != "blobs":
            raise ConfigInvalid(f"unknown label rule {self.label_rule!r}")


def _blob_centers(k: int) -> np.ndarray:
    angles = 2 * np.pi * np.arange(k) / k
    return 3.0 * np.column_stack([np.cos(angles), np.sin(angles)])


def make_blobs(cfg: DatasetConfig, seed: int) -> Dataset:
    """K gaussian blobs on a circle in 2D; spread controls the overlap."""
    rng = np.random.default_rng(seed)
    centers = _blob_centers(cfg.n_classes)

    def draw(n):
        labels = rng.integers(cfg.n_classes, size=n)
        X = centers[labels] + cfg.blob_spread * rng.standard_normal((n, 2))
        return X, labels

    Xp, yp = draw(cfg.n_pool)
    Xt, yt = draw(cfg.n_test)
    samples = [Sample(id=i, features=Xp[i]) for i in range(cfg.n_pool)]
    return Dataset(kind="blobs", pool=Pool.from_samples(samples),
                   pool_labels={i: int(yp[i]) for i in range(cfg.n_pool)},
                   test_features=Xt, test_labels=yt, n_classes=cfg.n_classes)


def _uniform_sphere_angles(rng: np.random.Generator, n: int):
    theta = np.arccos(1.0 - 2.0 * rng.random(n))
    phi = 2.0 * np.pi * rng.random(n)
    return theta, phi


def make_qubit_dataset(cfg: DatasetConfig, seed: int) -> Dataset:
    """Qubits uniform on the Bloch sphere; class = dominant basis state."""
    rng = np.random.default_rng(seed)
    theta_p, phi_p = _uniform_sphere_angles(rng, cfg.n_pool)
    theta_t, phi_t = _uniform_sphere_angles(rng, cfg.n_test)

    states, samples, pool_labels = [], [], {}
    for i in range(cfg.n_pool):
        state = prepare_qubit(theta_p[i], phi_p[i])
        states.append(state)
        samples.append(Sample(id=i, features=bloch_features(theta_p[i], phi_p[i]),
                              quantum_ref=i))
        pool_labels[i] = true_label(state)

    Xt = np.array([bloch_features(t, p) for t, p in zip(theta_t, phi_t)])
    yt = np.array([true_label(prepare_qubit(t, p)) for t, p in zip(theta_t, phi_t)])
    return Dataset(kind="qubit", pool=Pool.from_samples(samples),
                   pool_labels=pool_labels, test_features=Xt, test_labels=yt,
                   n_classes=2, states=states)


def make_qudit_dataset(cfg: DatasetConfig, seed: int) -> Dataset:
    """Random D-level states; features are squared moduli per basis state."""
    rng = np.random.default_rng(seed)
    d = cfg.qudit_dim

    def draw_state():
        raw = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        return prepare_qudit(raw)

    states, samples, pool_labels = [], [], {}
    for i in range(cfg.n_pool):
        state = draw_state()
        states.append(state)
        samples.append(Sample(id=i, features=state.probs(), quantum_ref=i))
        pool_labels[i] = true_label(state)

    test_states = [draw_state() for _ in range(cfg.n_test)]
    Xt = np.array([s.probs() for s in test_states])
    yt = np.array([true_label(s) for s in test_states])
    return Dataset(kind="qudit", pool=Pool.from_samples(samples),
                   pool_labels=pool_labels, test_features=Xt, test_labels=yt,
                   n_classes=d, states=states)


def generate(cfg: DatasetConfig, seed: int) -> Dataset:
    cfg.validate()
    if cfg.kind == "blobs":
        return make_blobs(cfg, seed)
    if cfg.kind == "qubit":
        return make_qubit_dataset(cfg, seed)
    return make_qudit_dataset(cfg, seed)
