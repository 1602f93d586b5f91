"""Seeded experiment driver: full sessions, learning curves, comparisons.

A (config, seed) pair determines every byte of the output.  Strategies in
a comparison share the dataset and the initial labeled set per seed, so
curve differences are attributable to the acquisition rule alone.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, asdict
from typing import Optional

import numpy as np

from . import strategies as strat
from .core import SessionState, TrainingSet, transfer_sample
from .datasets import Dataset, DatasetConfig, generate
from .errors import (ActiveLearningError, BudgetExhausted, ConfigInvalid,
                     EmptySet, MismatchedSeeds, UnknownStrategy,
                     UnsupportedFormat)
from .learners import (Committee, LabeledData, ModelParams, TrainConfig,
                       committee_distributions, fit, labeled_data,
                       predict_proba_batch, train_committee)
from .quantum import (FidelityLedger, MeasureConfig, charge, estimate_label,
                      expected_loss_per_shot, infidelity_multiplier, measure)

CSV_HEADER = ["strategy", "seed", "labels_used", "accuracy", "fidelity_spent"]


@dataclass
class ExperimentConfig:
    dataset: DatasetConfig = field(default_factory=DatasetConfig)
    strategy: str = "least_confidence"
    density: Optional[strat.DensityConfig] = None
    learner: TrainConfig = field(default_factory=TrainConfig)
    committee_size: int = 5
    committee_resample: bool = True
    init_labels: int = 10
    label_budget: int = 90
    fidelity_threshold: Optional[float] = None
    shots_per_query: int = 25
    measure: MeasureConfig = field(default_factory=MeasureConfig)
    seeds: list[int] = field(default_factory=lambda: [0])
    eval_every: int = 1
    name: str = "experiment"

    def validate(self):
        self.dataset.validate()
        base = self.strategy.removesuffix("+density")
        if base not in strat.STRATEGY_IDS:
            raise UnknownStrategy(f"unknown strategy {self.strategy!r}")
        if self.strategy.endswith("+density") and self.density is None:
            raise ConfigInvalid("density strategy requires a DensityConfig")
        if self.init_labels < 1:
            raise ConfigInvalid("init_labels must be >= 1")
        if self.label_budget < 0:
            raise ConfigInvalid("label_budget must be >= 0")
        if self.init_labels + self.label_budget > self.dataset.n_pool:
            raise ConfigInvalid("init_labels + label_budget exceeds pool size")
        if self.eval_every < 1:
            raise ConfigInvalid("eval_every must be >= 1")
        if self.shots_per_query < 1:
            raise ConfigInvalid("shots_per_query must be >= 1")


@dataclass
class LearningCurve:
    points: list[tuple[int, float, float]] = field(default_factory=list)
    partial: bool = False   # set when an error truncated the run

    def add(self, labels_used: int, accuracy: float, fidelity_spent: float):
        if self.points and labels_used <= self.points[-1][0]:
            return  # labels_used must stay strictly increasing
        self.points.append((int(labels_used), float(accuracy), float(fidelity_spent)))

    def labels(self) -> list[int]:
        return [p[0] for p in self.points]

    def accuracies(self) -> list[float]:
        return [p[1] for p in self.points]


@dataclass
class StrategyResult:
    strategy: str
    seeds: list[int]
    curves: list[LearningCurve]
    mean_accuracy: list[float]
    std_accuracy: list[float]
    labels_used: list[int]
    aulc_per_seed: list[float]
    mean_aulc: float
    labels_to_target: Optional[int]


@dataclass
class ComparisonReport:
    target_accuracy: Optional[float]
    results: list[StrategyResult]


def evaluate_accuracy(model: ModelParams, X_test: np.ndarray,
                      y_test: np.ndarray) -> float:
    """Fraction of argmax predictions matching the ground truth."""
    if len(X_test) == 0:
        raise EmptySet("empty test set")
    preds = np.argmax(predict_proba_batch(model, X_test), axis=1)
    return float(np.mean(preds == np.asarray(y_test)))


def _oracle_label(config: ExperimentConfig, dataset: Dataset, sample_id: int,
                  rng: np.random.Generator) -> tuple[int, float]:
    """Label a sample: ground truth for classical data (unit abstract cost),
    measurement-estimated for quantum data (fidelity cost per shot, summed)."""
    sample = dataset.pool.samples[sample_id]
    if sample.quantum_ref is None:
        return dataset.pool_labels[sample_id], 1.0
    state = dataset.states[sample.quantum_ref]
    cfg = MeasureConfig(kind=config.measure.kind, kappa=config.measure.kappa,
                        shots=config.shots_per_query)
    result = measure(state, cfg, rng)
    cost = cfg.shots * result.expected_loss_per_shot
    return estimate_label(result.counts, cfg), cost


def _entropy_rows(probs: np.ndarray) -> np.ndarray:
    out = np.zeros_like(probs)
    nz = probs > 0
    out[nz] = probs[nz] * np.log(probs[nz])
    return -out.sum(axis=1)


def _pool_scores(config: ExperimentConfig, dataset: Dataset,
                 session: SessionState, model: ModelParams,
                 committee: Optional[Committee]) -> list[strat.AcquisitionScore]:
    """Vectorized scoring of every unlabeled sample under the base strategy."""
    ids = list(session.pool.unlabeled_ids)
    X = session.pool.feature_matrix(ids)
    base = config.strategy.removesuffix("+density")

    if base in ("least_confidence", "margin", "entropy", "self_training"):
        probs = predict_proba_batch(model, X)
        if base == "least_confidence":
            values = 1.0 - probs.max(axis=1)
        elif base == "margin":
            top = np.sort(probs, axis=1)
            values = 1.0 - (top[:, -1] - top[:, -2])
        else:  # entropy
            values = _entropy_rows(probs)
    elif base in ("vote_entropy", "kl_consensus"):
        member_probs = np.stack([predict_proba_batch(m, X)
                                 for m in committee.members])  # (C, n, K)
        C = member_probs.shape[0]
        if base == "vote_entropy":
            hard = member_probs.argmax(axis=2)                 # (C, n)
            votes = np.stack([(hard == k).sum(axis=0)
                              for k in range(session.n_classes)], axis=1)
            values = _entropy_rows(votes / C)
        else:
            consensus = member_probs.mean(axis=0)              # (n, K)
            ratio = np.zeros_like(member_probs)
            nz = member_probs > 0
            ratio[nz] = member_probs[nz] * np.log(
                member_probs[nz] / np.broadcast_to(consensus, member_probs.shape)[nz])
            values = ratio.sum(axis=2).mean(axis=0)
    elif base in ("egl", "egl_exact"):
        data = labeled_data(session.pool, session.training)
        values = np.array([
            strat.score_egl(model, data, session.pool.samples[i].features,
                            exact=(base == "egl_exact"), l2=config.learner.l2)
            for i in ids])
    else:
        raise UnknownStrategy(f"strategy {base!r} has no pool scorer")

    if config.strategy.endswith("+density"):
        dc = config.density
        if dc.similarity == "quantum_infidelity":
            labeled_states = [dataset.states[session.pool.samples[i].quantum_ref]
                              for i in session.training.ids()]
            mult = np.array([
                infidelity_multiplier(dataset.states[session.pool.samples[i].quantum_ref],
                                      labeled_states, dc.beta)
                for i in ids])
        else:
            sigma = dc.sigma if dc.sigma is not None \
                else strat.median_pairwise_distance(X)
            cfg = strat.DensityConfig(beta=dc.beta, similarity="gaussian_kernel",
                                      sigma=sigma)
            mult = np.empty(len(ids))
            for j in range(len(ids)):
                others = np.delete(X, j, axis=0)
                mult[j] = strat.density_multiplier(X[j], others, cfg)
        values = values * mult

    return [strat.AcquisitionScore(sample_id=i, value=float(v))
            for i, v in zip(ids, values)]


def _retrain(config: ExperimentConfig, dataset: Dataset, session: SessionState,
             seed: int) -> tuple[ModelParams, Optional[Committee]]:
    data = labeled_data(session.pool, session.training)
    cfg = TrainConfig(learning_rate=config.learner.learning_rate,
                      epochs=config.learner.epochs, l2=config.learner.l2,
                      tolerance=config.learner.tolerance,
                      init_seed=config.learner.init_seed + seed)
    model = fit(session.n_classes, data, cfg)
    committee = None
    base = config.strategy.removesuffix("+density")
    if base in ("vote_entropy", "kl_consensus"):
        member_seeds = [cfg.init_seed * 1000 + m for m in range(config.committee_size)]
        committee = train_committee(member_seeds, session.n_classes, data, cfg,
                                    resample=config.committee_resample)
    return model, committee


def run_session(config: ExperimentConfig, seed: int) -> tuple[LearningCurve, SessionState]:
    """Run one full labeling session; deterministic per (config, seed).

    The initial labeled set depends only on the dataset and seed (not the
    strategy), so paired comparisons start from identical footing.
    """
    config.validate()
    dataset = generate(config.dataset, seed)
    init_rng = np.random.default_rng([seed, 1])
    oracle_rng = np.random.default_rng([seed, 2])
    pick_rng = np.random.default_rng([seed, 3])

    session = SessionState(pool=dataset.pool, training=TrainingSet(),
                           n_classes=dataset.n_classes, rng_seed=seed)
    if config.fidelity_threshold is not None:
        session.ledger = FidelityLedger(threshold=config.fidelity_threshold)

    curve = LearningCurve()

    def spent() -> float:
        if session.ledger is not None:
            return session.ledger.spent
        if dataset.kind == "blobs":
            return 0.0  # classical oracle costs are abstract, not fidelity
        return sum(r.oracle_cost for r in session.history)

    # seed labels, drawn uniformly; same set for every strategy at this seed
    init_ids = sorted(init_rng.choice(session.pool.unlabeled_ids,
                                      size=config.init_labels, replace=False))
    for sid in init_ids:
        label, cost = _oracle_label(config, dataset, int(sid), oracle_rng)
        if session.ledger is not None:
            try:
                charge(session.ledger, cost)
            except BudgetExhausted:
                break  # strapped budget: start with fewer seed labels
        transfer_sample(session, int(sid), label, strategy="init",
                        oracle_cost=cost)
    if len(session.training) == 0:
        raise ConfigInvalid("fidelity threshold too small for any seed label")

    model, committee = _retrain(config, dataset, session, seed)
    session.model = model
    curve.add(len(session.training), evaluate_accuracy(
        model, dataset.test_features, dataset.test_labels), spent())

    base = config.strategy.removesuffix("+density")
    try:
        for q in range(config.label_budget):
            if not session.pool.unlabeled_ids:
                break
            if base == "random":
                sid = strat.random_select(session.pool, pick_rng)
                score = 0.0
            elif base == "self_training":
                sid, pseudo = strat.self_training_pick(model, session.pool)
                score = 0.0
            else:
                scores = _pool_scores(config, dataset, session, model, committee)
                sid = strat.select_query(scores)
                score = next(s.value for s in scores if s.sample_id == sid)

            if base == "self_training":
                transfer_sample(session, sid, pseudo, strategy=base,
                                score=score, oracle_cost=0.0)
            else:
                label, cost = _oracle_label(config, dataset, sid, oracle_rng)
                if session.ledger is not None:
                    try:
                        charge(session.ledger, cost)
                    except BudgetExhausted:
                        break  # cost became prohibitive; stop cleanly
                transfer_sample(session, sid, label, strategy=config.strategy,
                                score=score, oracle_cost=cost)

            model, committee = _retrain(config, dataset, session, seed)
            session.model = model
            if (q + 1) % config.eval_every == 0 or q == config.label_budget - 1:
                curve.add(len(session.training), evaluate_accuracy(
                    model, dataset.test_features, dataset.test_labels), spent())
    except ActiveLearningError:
        curve.partial = True

    return curve, session


def _aulc(curve: LearningCurve) -> float:
    labels = np.array(curve.labels(), dtype=float)
    accs = np.array(curve.accuracies())
    if len(labels) < 2:
        return 0.0
    return float(np.trapezoid(accs, labels))


def compare_strategies(configs: list[ExperimentConfig],
                       target_accuracy: Optional[float] = None) -> ComparisonReport:
    """Run several strategies on identical datasets/seeds and report curves."""
    if len(configs) < 2:
        raise ConfigInvalid("comparison needs >= 2 configs")
    ref = configs[0]
    for cfg in configs[1:]:
        if cfg.seeds != ref.seeds:
            raise MismatchedSeeds("all configs must share the same seed list")
        if asdict(cfg.dataset) != asdict(ref.dataset):
            raise MismatchedSeeds("all configs must share the dataset generator")

    results = []
    for cfg in configs:
        curves = [run_session(cfg, s)[0] for s in cfg.seeds]
        n = min(len(c.points) for c in curves)
        acc = np.array([c.accuracies()[:n] for c in curves])
        aulcs = [_aulc(c) for c in curves]
        labels_axis = curves[0].labels()[:n]
        mean_acc = acc.mean(axis=0)
        target_hit = None
        if target_accuracy is not None:
            hits = np.nonzero(mean_acc >= target_accuracy)[0]
            if hits.size:
                target_hit = int(labels_axis[hits[0]])
        results.append(StrategyResult(
            strategy=cfg.strategy, seeds=list(cfg.seeds), curves=curves,
            mean_accuracy=[float(v) for v in mean_acc],
            std_accuracy=[float(v) for v in acc.std(axis=0)],
            labels_used=[int(v) for v in labels_axis],
            aulc_per_seed=[float(v) for v in aulcs],
            mean_aulc=float(np.mean(aulcs)),
            labels_to_target=target_hit))
    return ComparisonReport(target_accuracy=target_accuracy, results=results)


def curve_to_csv(curve: LearningCurve, strategy: str, seed: int) -> str:
    """CSV with the exact columns strategy,seed,labels_used,accuracy,fidelity_spent."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for labels_used, accuracy, fidelity_spent in curve.points:
        writer.writerow([strategy, seed, labels_used,
                         repr(accuracy), repr(fidelity_spent)])
    return buf.getvalue()


def curve_from_csv(text: str) -> tuple[str, int, LearningCurve]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != CSV_HEADER:
        raise UnsupportedFormat(f"bad CSV header: {rows[:1]}")
    curve = LearningCurve()
    strategy, seed = "", 0
    for row in rows[1:]:
        strategy, seed = row[0], int(row[1])
        curve.points.append((int(row[2]), float(row[3]), float(row[4])))
    return strategy, seed, curve


def report_to_json(report: ComparisonReport) -> str:
    doc = {
        "target_accuracy": report.target_accuracy,
        "results": [
            {
                "strategy": r.strategy,
                "seeds": r.seeds,
                "labels_used": r.labels_used,
                "mean_accuracy": r.mean_accuracy,
                "std_accuracy": r.std_accuracy,
                "aulc_per_seed": r.aulc_per_seed,
                "mean_aulc": r.mean_aulc,
                "labels_to_target": r.labels_to_target,
                "curves": [
                    {"seed": s, "partial": c.partial, "points": c.points}
                    for s, c in zip(r.seeds, r.curves)
                ],
            }
            for r in report.results
        ],
    }
    return json.dumps(doc, indent=2)


def report_from_json(text: str) -> ComparisonReport:
    doc = json.loads(text)
    results = []
    for r in doc["results"]:
        curves = []
        for c in r["curves"]:
            curve = LearningCurve(partial=c["partial"])
            curve.points = [(int(a), float(b), float(f)) for a, b, f in c["points"]]
            curves.append(curve)
        results.append(StrategyResult(
            strategy=r["strategy"], seeds=r["seeds"], curves=curves,
            mean_accuracy=r["mean_accuracy"], std_accuracy=r["std_accuracy"],
            labels_used=r["labels_used"], aulc_per_seed=r["aulc_per_seed"],
            mean_aulc=r["mean_aulc"], labels_to_target=r["labels_to_target"]))
    return ComparisonReport(target_accuracy=doc["target_accuracy"], results=results)


def export_results(obj, fmt: str, strategy: str = "", seed: int = 0) -> str:
    """Serialize a curve (csv) or a comparison report (json)."""
    if fmt == "csv" and isinstance(obj, LearningCurve):
        return curve_to_csv(obj, strategy, seed)
    if fmt == "json" and isinstance(obj, ComparisonReport):
        return report_to_json(obj)
    if fmt == "json" and isinstance(obj, LearningCurve):
        return json.dumps({"strategy": strategy, "seed": seed,
                           "partial": obj.partial, "points": obj.points})
    raise UnsupportedFormat(f"cannot export {type(obj).__name__} as {fmt!r}")


def config_from_dict(doc: dict) -> ExperimentConfig:
    cfg = ExperimentConfig()
    if "dataset" in doc:
        cfg.dataset = DatasetConfig(**doc["dataset"])
    if "learner" in doc:
        cfg.learner = TrainConfig(**doc["learner"])
    if "measure" in doc:
        cfg.measure = MeasureConfig(**doc["measure"])
    if "density" in doc and doc["density"] is not None:
        cfg.density = strat.DensityConfig(**doc["density"])
    for key in ("strategy", "committee_size", "committee_resample", "init_labels",
                "label_budget", "fidelity_threshold", "shots_per_query",
                "seeds", "eval_every", "name"):
        if key in doc:
            setattr(cfg, key, doc[key])
    cfg.validate()
    return cfg


def config_from_file(path: str) -> ExperimentConfig:
    """Load an ExperimentConfig from a .json or .toml file."""
    if path.endswith(".toml"):
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib
        with open(path, "rb") as fh:
            return config_from_dict(tomllib.load(fh))
    with open(path) as fh:
        return config_from_dict(json.load(fh))
