"""Acquisition scores and the selection rule.

Every score follows one convention: higher means "query this first".  The
margin criterion is therefore flipped to 1 - margin, so a single argmax
with a single tie-break (lowest sample id) serves all strategies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Pool
from .errors import (EmptyPool, EmptyScores, InvalidDistribution, MixedDimensions,
                     NegativeBaseScore, SingleClass, VoteCountMismatch)
from .learners import (LabeledData, ModelParams, loss_gradient, predict_proba,
                       predict_proba_batch)

STRATEGY_IDS = ("random", "least_confidence", "margin", "entropy",
                "vote_entropy", "kl_consensus", "egl", "egl_exact",
                "self_training")


@dataclass(frozen=True)
class AcquisitionScore:
    sample_id: int
    value: float


@dataclass
class DensityConfig:
    """Density multiplier parameters: exponent beta and the similarity kernel."""

    beta: float = 1.0
    similarity: str = "gaussian_kernel"  # or "quantum_infidelity"
    sigma: Optional[float] = None        # gaussian bandwidth; None = median heuristic


def _check_dist(probs: np.ndarray) -> np.ndarray:
    probs = np.asarray(probs, dtype=float)
    if probs.ndim != 1 or probs.size < 1:
        raise InvalidDistribution("expected a 1-d probability vector")
    if np.any(probs < -1e-12) or np.any(probs > 1 + 1e-12):
        raise InvalidDistribution("entries outside [0, 1]")
    if abs(probs.sum() - 1.0) > 1e-9:
        raise InvalidDistribution(f"probabilities sum to {probs.sum()}")
    return probs


def _xlogx(p: np.ndarray) -> np.ndarray:
    # 0 * ln 0 := 0
    out = np.zeros_like(p)
    nz = p > 0
    out[nz] = p[nz] * np.log(p[nz])
    return out


def score_least_confidence(probs: np.ndarray) -> float:
    """1 - max_i p_i, in [0, 1 - 1/K]."""
    probs = _check_dist(probs)
    return float(1.0 - probs.max())


def score_margin(probs: np.ndarray) -> float:
    """1 - (p(top) - p(second)); maximal for ambiguous samples."""
    probs = _check_dist(probs)
    if probs.size < 2:
        raise SingleClass("margin needs at least two classes")
    top = np.sort(probs)[::-1]
    return float(1.0 - (top[0] - top[1]))


def score_entropy(probs: np.ndarray) -> float:
    """Shannon entropy -sum p ln p, in [0, ln K]."""
    probs = _check_dist(probs)
    return float(-_xlogx(probs).sum())


def score_vote_entropy(votes: np.ndarray, committee_size: int) -> float:
    """Entropy of the committee's hard-vote fractions V(y)/C."""
    votes = np.asarray(votes, dtype=float)
    if committee_size < 2 or votes.sum() != committee_size:
        raise VoteCountMismatch(
            f"votes sum to {votes.sum()}, expected C = {committee_size}")
    frac = votes / committee_size
    return float(-_xlogx(frac).sum())


def score_kl_consensus(member_dists: list[np.ndarray]) -> float:
    """Mean KL divergence of each member's distribution from the consensus.

    The consensus is the per-class average over members; zero-probability
    member entries contribute nothing.
    """
    if len(member_dists) < 2:
        raise VoteCountMismatch("KL consensus needs >= 2 members")
    dists = [_check_dist(d) for d in member_dists]
    sizes = {d.size for d in dists}
    if len(sizes) > 1:
        raise MixedDimensions(f"mixed class counts: {sorted(sizes)}")
    P = np.array(dists)                     # (C, K)
    if np.all(P == P[0]):
        return 0.0  # identical members; mean(axis=0) would add float noise
    consensus = P.mean(axis=0)
    total = 0.0
    for row in P:
        nz = row > 0
        total += float(np.sum(row[nz] * np.log(row[nz] / consensus[nz])))
    return total / len(dists)


def score_egl(model: ModelParams, data: LabeledData, features: np.ndarray,
              exact: bool = False, l2: float = 0.0) -> float:
    """Expected gradient length of adding the candidate under each label.

    sum_y P(y|x) * ||grad||, where the gradient is taken over the
    augmented training set (exact) or over the single candidate alone
    (the converged-model approximation, the default).
    """
    probs = predict_proba(model, features)
    x = np.asarray(features, dtype=float).reshape(1, -1)
    total = 0.0
    for label, p in enumerate(probs):
        if exact:
            aug = LabeledData(X=np.vstack([data.X, x]),
                              y=np.append(data.y, label))
        else:
            aug = LabeledData(X=x, y=np.array([label]))
        total += p * float(np.linalg.norm(loss_gradient(model, aug, l2)))
    return total


def median_pairwise_distance(X: np.ndarray) -> float:
    """Median euclidean distance over all pairs; the default kernel bandwidth."""
    n = X.shape[0]
    if n < 2:
        return 1.0
    d2 = np.sum((X[:, None, :] - X[None, :, :]) ** 2, axis=-1)
    iu = np.triu_indices(n, k=1)
    med = float(np.median(np.sqrt(d2[iu])))
    return med if med > 0 else 1.0


def density_multiplier(candidate: np.ndarray, others: np.ndarray,
                       cfg: DensityConfig) -> float:
    """Mean gaussian similarity of the candidate to the rest of the pool, ^beta."""
    if others.shape[0] == 0:
        raise EmptyPool("density needs at least one other pool sample")
    if cfg.beta == 0:
        return 1.0
    sigma = cfg.sigma if cfg.sigma is not None else median_pairwise_distance(others)
    d2 = np.sum((others - np.asarray(candidate, dtype=float)) ** 2, axis=1)
    sims = np.exp(-d2 / (2.0 * sigma ** 2))
    return float(np.mean(sims) ** cfg.beta)


def score_density_weighted(base: AcquisitionScore, multiplier: float) -> float:
    if base.value < 0:
        raise NegativeBaseScore(f"base score {base.value} < 0")
    return base.value * multiplier


def select_query(scores: list[AcquisitionScore]) -> int:
    """Sample id with the maximal score; ties break toward the lowest id."""
    if not scores:
        raise EmptyScores("no candidates to select from")
    best = scores[0]
    for s in scores[1:]:
        if s.value > best.value or (s.value == best.value and s.sample_id < best.sample_id):
            best = s
    return best.sample_id


def random_select(pool: Pool, rng: np.random.Generator) -> int:
    """Uniform baseline draw over the unlabeled ids."""
    if not pool.unlabeled_ids:
        raise EmptyPool("no unlabeled samples")
    return int(pool.unlabeled_ids[rng.integers(len(pool.unlabeled_ids))])


def self_training_pick(model: ModelParams, pool: Pool) -> tuple[int, int]:
    """Most confidently predicted unlabeled sample and its pseudo-label.

    No oracle is consulted; this is the semisupervised mode.
    """
    if not pool.unlabeled_ids:
        raise EmptyPool("no unlabeled samples")
    ids = list(pool.unlabeled_ids)
    probs = predict_proba_batch(model, pool.feature_matrix(ids))
    conf = probs.max(axis=1)
    # argmax with tie-break toward the lowest sample id
    best = 0
    for i in range(1, len(ids)):
        if conf[i] > conf[best] or (conf[i] == conf[best] and ids[i] < ids[best]):
            best = i
    return ids[best], int(np.argmax(probs[best]))
