"""Simulated quantum samples and the measurement oracle.

Labels of quantum samples live in their amplitudes: the true class is the
basis state with the largest squared modulus.  Extracting a label costs
fidelity.  A projective measurement collapses each shot fully; the weak
variant uses a one-parameter Kraus pair

    M_plus/minus = sqrt((1 +/- kappa)/2) P0 + sqrt((1 -/+ kappa)/2) P1

on qubits, which reproduces the projective statistics at kappa = 1 and
extracts nothing (disturbing nothing) as kappa -> 0.  Budgets are tracked
in a ledger that rejects charges past its threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (AngleOutOfRange, BudgetExhausted, EmptyTrainingSet,
                     InvalidStrength, MixedDimensions, NoCounts,
                     WeakUnsupportedDimension, ZeroVector)

NORM_TOL = 1e-10


@dataclass
class PureState:
    """Normalized complex amplitude vector in the computational basis."""

    amps: np.ndarray

    def __post_init__(self):
        self.amps = np.asarray(self.amps, dtype=complex)
        norm2 = float(np.sum(np.abs(self.amps) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ZeroVector(f"state norm^2 = {norm2}, expected 1")

    @property
    def dim(self) -> int:
        return self.amps.size

    def probs(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


@dataclass
class FidelityLedger:
    """Cumulative fidelity-loss budget; charges past the threshold bounce."""

    threshold: float
    spent: float = 0.0
    per_query: list = field(default_factory=list)

    def remaining(self) -> float:
        return self.threshold - self.spent


@dataclass
class MeasureConfig:
    kind: str = "projective"  # "projective" | "weak"
    kappa: float = 1.0        # weak strength; 1 is the projective limit
    shots: int = 25

    def __post_init__(self):
        if self.kind not in ("projective", "weak"):
            raise InvalidStrength(f"unknown measurement kind {self.kind!r}")
        if not (0 < self.kappa <= 1):
            raise InvalidStrength(f"kappa {self.kappa} not in (0, 1]")
        if self.kind == "projective" and self.kappa != 1.0:
            raise InvalidStrength("projective measurement requires kappa = 1")


@dataclass
class MeasureResult:
    counts: np.ndarray              # per-outcome shot counts
    expected_loss_per_shot: float   # analytic 1 - E[fidelity(pre, post)]
    post_fidelities: np.ndarray     # sampled fidelity(pre, post) per shot


def prepare_qubit(theta: float, phi: float) -> PureState:
    """Bloch-sphere qubit (cos(theta/2), e^{i phi} sin(theta/2))."""
    if not (0 <= theta <= math.pi):
        raise AngleOutOfRange(f"theta {theta} not in [0, pi]")
    if not (0 <= phi < 2 * math.pi):
        raise AngleOutOfRange(f"phi {phi} not in [0, 2 pi)")
    return PureState(np.array([math.cos(theta / 2),
                               np.exp(1j * phi) * math.sin(theta / 2)]))


def prepare_qudit(raw: np.ndarray) -> PureState:
    raw = np.asarray(raw, dtype=complex)
    norm = float(np.linalg.norm(raw))
    if norm == 0:
        raise ZeroVector("cannot normalize the zero vector")
    return PureState(raw / norm)


def bloch_features(theta: float, phi: float) -> np.ndarray:
    """Cartesian Bloch coordinates, the real features fed to the learner."""
    if not (0 <= theta <= math.pi):
        raise AngleOutOfRange(f"theta {theta} not in [0, pi]")
    if not (0 <= phi < 2 * math.pi):
        raise AngleOutOfRange(f"phi {phi} not in [0, 2 pi)")
    return np.array([math.sin(theta) * math.cos(phi),
                     math.sin(theta) * math.sin(phi),
                     math.cos(theta)])


def true_label(state: PureState) -> int:
    """Ground-truth class: argmax squared modulus, ties to the lowest index."""
    return int(np.argmax(state.probs()))


def fidelity(a: PureState, b: PureState) -> float:
    """|<a|b>|^2 for pure states; symmetric, global-phase invariant."""
    if a.dim != b.dim:
        raise MixedDimensions(f"dims {a.dim} vs {b.dim}")
    return float(np.abs(np.vdot(a.amps, b.amps)) ** 2)


def infidelity_multiplier(candidate: PureState, labeled_states: list[PureState],
                          beta: float) -> float:
    """Mean infidelity of the candidate to the labeled states, ^beta."""
    if not labeled_states:
        raise EmptyTrainingSet("no labeled states to compare against")
    if beta == 0:
        return 1.0
    avg = float(np.mean([1.0 - fidelity(candidate, s) for s in labeled_states]))
    return avg ** beta


def _weak_kraus(kappa: float) -> tuple[np.ndarray, np.ndarray]:
    hi = math.sqrt((1 + kappa) / 2)
    lo = math.sqrt((1 - kappa) / 2)
    m_plus = np.diag([hi, lo]).astype(complex)
    m_minus = np.diag([lo, hi]).astype(complex)
    return m_plus, m_minus


def expected_loss_per_shot(state: PureState, cfg: MeasureConfig) -> float:
    """Analytic expected fidelity loss of one shot.

    Projective: 1 - sum_i p_i^2.  Weak (qubit): 2 p0 p1 (1 - sqrt(1 - k^2)),
    which is the Kraus-pair expectation in closed form.
    """
    p = state.probs()
    if cfg.kind == "projective":
        return float(1.0 - np.sum(p ** 2))
    if state.dim != 2:
        raise WeakUnsupportedDimension("weak measurement is qubit-only")
    return float(2.0 * p[0] * p[1] * (1.0 - math.sqrt(1.0 - cfg.kappa ** 2)))


def measure(state: PureState, cfg: MeasureConfig,
            rng: np.random.Generator) -> MeasureResult:
    """Simulate cfg.shots measurements on fresh copies of the state.

    Each shot starts from the original state (one copy per shot); the
    per-shot post-measurement fidelity is recorded for diagnostics while
    the ledger-facing loss is the analytic expectation.
    """
    p = state.probs()
    loss = expected_loss_per_shot(state, cfg)
    if cfg.kind == "projective":
        outcomes = rng.choice(state.dim, size=cfg.shots, p=p / p.sum())
        counts = np.bincount(outcomes, minlength=state.dim)
        post_fid = p[outcomes]  # collapsing to basis i leaves overlap p_i
        return MeasureResult(counts=counts, expected_loss_per_shot=loss,
                             post_fidelities=post_fid)

    if state.dim != 2:
        raise WeakUnsupportedDimension("weak measurement is qubit-only")
    m_plus, m_minus = _weak_kraus(cfg.kappa)
    p_plus = (1.0 + cfg.kappa * (2.0 * p[0] - 1.0)) / 2.0
    outcomes = (rng.random(cfg.shots) >= p_plus).astype(int)  # 0 = "+", 1 = "-"
    counts = np.bincount(outcomes, minlength=2)
    post_fid = np.empty(cfg.shots)
    for i, o in enumerate(outcomes):
        m = m_plus if o == 0 else m_minus
        post = m @ state.amps
        post = post / np.linalg.norm(post)
        post_fid[i] = float(np.abs(np.vdot(state.amps, post)) ** 2)
    return MeasureResult(counts=counts, expected_loss_per_shot=loss,
                         post_fidelities=post_fid)


def estimate_label(counts: np.ndarray, cfg: MeasureConfig) -> int:
    """Label estimate from shot counts.

    Projective: majority outcome.  Weak: debias the "+"-fraction by
    p0_hat = (f_plus - (1-kappa)/2) / kappa, clip to [0, 1], threshold at
    1/2.  Ties go to the lowest index in both cases.
    """
    counts = np.asarray(counts)
    total = int(counts.sum())
    if total < 1:
        raise NoCounts("no shots recorded")
    if cfg.kind == "projective":
        return int(np.argmax(counts))
    f_plus = counts[0] / total
    p0_hat = (f_plus - (1 - cfg.kappa) / 2) / cfg.kappa
    p0_hat = min(1.0, max(0.0, p0_hat))
    return 0 if p0_hat >= 0.5 else 1


def charge(ledger: FidelityLedger, amount: float) -> FidelityLedger:
    """Record a fidelity-loss charge; reject (unchanged) past the threshold."""
    if amount < 0:
        raise InvalidStrength(f"negative charge {amount}")
    if ledger.spent + amount > ledger.threshold:
        raise BudgetExhausted(
            f"charge {amount} would exceed threshold {ledger.threshold} "
            f"(spent {ledger.spent})")
    ledger.spent += amount
    ledger.per_query.append(float(amount))
    return ledger
