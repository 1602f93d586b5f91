"""Samples, pools, labeled sets, and the session state of the labeling loop.

The only operation that moves a sample between the unlabeled pool and the
training set is :func:`transfer_sample`; everything else reads.  Sessions
are replayable: the seed plus the recorded history determine the state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import AlreadyLabeled, LabelOutOfRange, UnknownSample

SNAPSHOT_VERSION = 1


@dataclass(frozen=True)
class Sample:
    """A feature vector with an identity and an optional quantum-state ref."""

    id: int
    features: np.ndarray
    quantum_ref: Optional[int] = None


@dataclass
class Pool:
    """All known samples plus the ordered set of ids still unlabeled."""

    samples: dict[int, Sample]
    unlabeled_ids: list[int]

    @classmethod
    def from_samples(cls, samples: list[Sample]) -> "Pool":
        return cls(samples={s.id: s for s in samples},
                   unlabeled_ids=[s.id for s in samples])

    def feature_matrix(self, ids: list[int]) -> np.ndarray:
        return np.array([self.samples[i].features for i in ids], dtype=float)


@dataclass
class TrainingSet:
    """Ordered (sample id, label) pairs; duplicates are rejected upstream."""

    entries: list[tuple[int, int]] = field(default_factory=list)

    def ids(self) -> list[int]:
        return [i for i, _ in self.entries]

    def labels(self) -> list[int]:
        return [y for _, y in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class QueryRecord:
    round: int
    sample_id: int
    strategy: str
    score: float
    assigned_label: int
    oracle_cost: float


@dataclass
class SessionState:
    """Full mutable state of one labeling session (single writer)."""

    pool: Pool
    training: TrainingSet
    n_classes: int
    rng_seed: int
    model: object = None          # learners.ModelParams once trained
    committee: object = None
    ledger: object = None         # quantum.FidelityLedger when budgeted
    history: list[QueryRecord] = field(default_factory=list)
    round: int = 0
    pending_query: Optional[int] = None


def transfer_sample(session: SessionState, sample_id: int, label: int,
                    strategy: str = "manual", score: float = 0.0,
                    oracle_cost: float = 0.0) -> SessionState:
    """Move one sample from the pool to the training set with its label.

    Appends a history record and clears any pending query.  Raises rather
    than silently ignoring bad ids so callers cannot desynchronize.
    """
    if sample_id not in session.pool.samples:
        raise UnknownSample(f"sample {sample_id} not in pool")
    if any(sample_id == i for i, _ in session.training.entries):
        raise AlreadyLabeled(f"sample {sample_id} already labeled")
    if sample_id not in session.pool.unlabeled_ids:
        raise UnknownSample(f"sample {sample_id} not unlabeled")
    if not (0 <= label < session.n_classes):
        raise LabelOutOfRange(f"label {label} not in [0, {session.n_classes})")

    session.pool.unlabeled_ids.remove(sample_id)
    session.training.entries.append((sample_id, label))
    session.history.append(QueryRecord(
        round=session.round, sample_id=sample_id, strategy=strategy,
        score=float(score), assigned_label=label, oracle_cost=float(oracle_cost)))
    session.round += 1
    session.pending_query = None
    return session


def validate_session(session: SessionState) -> list[str]:
    """Return a list of invariant violations; empty means the state is sound."""
    violations = []
    pool_ids = set(session.pool.samples)
    unlabeled = set(session.pool.unlabeled_ids)
    labeled = set(session.training.ids())

    if not unlabeled <= pool_ids:
        violations.append("unlabeled_ids not a subset of pool sample ids")
    if len(session.pool.unlabeled_ids) != len(unlabeled):
        violations.append("duplicate ids in unlabeled_ids")
    if unlabeled & labeled:
        violations.append(f"ids both unlabeled and labeled: {sorted(unlabeled & labeled)}")
    if len(session.training.ids()) != len(labeled):
        violations.append("duplicate ids in training set")
    if any(not (0 <= y < session.n_classes) for y in session.training.labels()):
        violations.append("training label out of range")
    if session.round != len(session.history):
        violations.append(f"round {session.round} != history length {len(session.history)}")
    if session.pending_query is not None and session.pending_query not in unlabeled:
        violations.append("pending_query not in unlabeled pool")
    for rec in session.history:
        if not np.isfinite(rec.score):
            violations.append(f"non-finite score in history round {rec.round}")
        if rec.oracle_cost < 0:
            violations.append(f"negative oracle cost in history round {rec.round}")
    feature_lengths = {len(s.features) for s in session.pool.samples.values()}
    if len(feature_lengths) > 1:
        violations.append("inconsistent feature lengths across samples")
    return violations


def session_to_json(session: SessionState) -> str:
    """Serialize a session snapshot to versioned JSON (lossless round-trip)."""
    doc = {
        "version": SNAPSHOT_VERSION,
        "seed": session.rng_seed,
        "round": session.round,
        "n_classes": session.n_classes,
        "pending_query": session.pending_query,
        "pool": {
            "samples": [
                {"id": s.id, "features": [float(v) for v in s.features],
                 "quantum_ref": s.quantum_ref}
                for s in sorted(session.pool.samples.values(), key=lambda s: s.id)
            ],
            "unlabeled_ids": list(session.pool.unlabeled_ids),
        },
        "training": [[i, y] for i, y in session.training.entries],
        "history": [
            {"round": r.round, "sample_id": r.sample_id, "strategy": r.strategy,
             "score": r.score, "assigned_label": r.assigned_label,
             "oracle_cost": r.oracle_cost}
            for r in session.history
        ],
    }
    if session.model is not None:
        doc["model"] = {
            "shape": list(session.model.weights.shape),
            "weights": [float(v) for v in session.model.weights.ravel()],
        }
    if session.ledger is not None:
        doc["ledger"] = {
            "threshold": session.ledger.threshold,
            "per_query": list(session.ledger.per_query),
        }
    return json.dumps(doc)


def session_from_json(text: str) -> SessionState:
    from .learners import ModelParams
    from .quantum import FidelityLedger

    doc = json.loads(text)
    if doc.get("version") != SNAPSHOT_VERSION:
        raise ValueError(f"unsupported snapshot version {doc.get('version')}")
    samples = [Sample(id=s["id"], features=np.array(s["features"], dtype=float),
                      quantum_ref=s["quantum_ref"]) for s in doc["pool"]["samples"]]
    pool = Pool(samples={s.id: s for s in samples},
                unlabeled_ids=list(doc["pool"]["unlabeled_ids"]))
    training = TrainingSet(entries=[(i, y) for i, y in doc["training"]])
    history = [QueryRecord(**r) for r in doc["history"]]
    session = SessionState(
        pool=pool, training=training, n_classes=doc["n_classes"],
        rng_seed=doc["seed"], history=history, round=doc["round"],
        pending_query=doc["pending_query"])
    if "model" in doc:
        k, d1 = doc["model"]["shape"]
        session.model = ModelParams(
            weights=np.array(doc["model"]["weights"], dtype=float).reshape(k, d1))
    if "ledger" in doc:
        ledger = FidelityLedger(threshold=doc["ledger"]["threshold"])
        ledger.per_query = list(doc["ledger"]["per_query"])
        ledger.spent = float(sum(ledger.per_query))
        session.ledger = ledger
    return session
