"""HTTP service for interactive labeling sessions.

Endpoints:
    POST /sessions                      create a session (simulated or human oracle)
    GET  /sessions/{id}/query           next pending query (idempotent while pending)
    POST /sessions/{id}/label           answer the pending query
    GET  /sessions/{id}/curve           learning-curve snapshot
    GET  /sessions/{id}/export?format=  csv or json dump of the curve

Errors come back as {"error_code": ..., "message": ...}.  Per-session
mutations are serialized behind a lock; a human-oracle session never
labels anything on its own.
"""

from __future__ import annotations

import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from . import strategies as strat
from .core import SessionState, TrainingSet, session_to_json, transfer_sample
from .datasets import Dataset, generate
from .errors import (ActiveLearningError, BudgetExhausted, ConfigInvalid,
                     LabelOutOfRange, PoolExhausted, StaleQuery,
                     UnknownSession, UnsupportedFormat)
from .harness import (ExperimentConfig, LearningCurve, _oracle_label,
                      _pool_scores, _retrain, charge, config_from_dict,
                      curve_to_csv, evaluate_accuracy)
from .quantum import FidelityLedger

RENDER_HINTS = {"blobs": "scatter2d", "qubit": "bloch", "qudit": "bar"}


@dataclass
class SessionHandle:
    session_id: str
    created_at: float
    mode: str                       # "simulated_oracle" | "human_oracle"
    config: ExperimentConfig
    dataset: Dataset
    state: SessionState
    curve: LearningCurve
    seed: int
    model: object = None
    committee: object = None
    pending_score: float = 0.0
    queries_issued: int = 0
    oracle_rng: object = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    def class_names(self) -> list[str]:
        if self.dataset.kind == "qubit":
            return ["|0>-dominant", "|1>-dominant"]
        if self.dataset.kind == "qudit":
            return [f"|{i}>-dominant" for i in range(self.dataset.n_classes)]
        return [f"class {i}" for i in range(self.dataset.n_classes)]


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, SessionHandle] = {}
        self._lock = threading.Lock()

    def add(self, handle: SessionHandle):
        with self._lock:
            self._sessions[handle.session_id] = handle

    def get(self, session_id: str) -> SessionHandle:
        with self._lock:
            handle = self._sessions.get(session_id)
        if handle is None:
            raise UnknownSession(f"no session {session_id!r}")
        return handle


def _fidelity_spent(handle: SessionHandle) -> float:
    if handle.state.ledger is not None:
        return handle.state.ledger.spent
    if handle.dataset.kind == "blobs":
        return 0.0
    return sum(r.oracle_cost for r in handle.state.history)


def _labels_remaining(handle: SessionHandle) -> int:
    cfg = handle.config
    return cfg.init_labels + cfg.label_budget - len(handle.state.training)


def _maybe_retrain(handle: SessionHandle):
    if len(handle.state.training) == 0:
        return
    handle.model, handle.committee = _retrain(
        handle.config, handle.dataset, handle.state, handle.seed)
    handle.state.model = handle.model


def _record_eval(handle: SessionHandle, force: bool = False):
    if handle.model is None:
        return
    n = len(handle.state.training)
    if force or n % handle.config.eval_every == 0:
        acc = evaluate_accuracy(handle.model, handle.dataset.test_features,
                                handle.dataset.test_labels)
        handle.curve.add(n, acc, _fidelity_spent(handle))


def create_handle(config: ExperimentConfig, mode: str,
                  seed: Optional[int] = None) -> SessionHandle:
    config.validate()
    if mode not in ("simulated_oracle", "human_oracle"):
        raise ConfigInvalid(f"unknown mode {mode!r}")
    seed = seed if seed is not None else config.seeds[0]
    dataset = generate(config.dataset, seed)
    state = SessionState(pool=dataset.pool, training=TrainingSet(),
                         n_classes=dataset.n_classes, rng_seed=seed)
    if config.fidelity_threshold is not None:
        state.ledger = FidelityLedger(threshold=config.fidelity_threshold)
    handle = SessionHandle(session_id=uuid.uuid4().hex, created_at=time.time(),
                           mode=mode, config=config, dataset=dataset,
                           state=state, curve=LearningCurve(), seed=seed)

    if mode == "simulated_oracle":
        init_rng = np.random.default_rng([seed, 1])
        oracle_rng = np.random.default_rng([seed, 2])
        handle.oracle_rng = oracle_rng
        init_ids = sorted(init_rng.choice(state.pool.unlabeled_ids,
                                          size=config.init_labels, replace=False))
        for sid in init_ids:
            label, cost = _oracle_label(config, dataset, int(sid), oracle_rng)
            if state.ledger is not None:
                charge(state.ledger, cost)
            transfer_sample(state, int(sid), label, strategy="init",
                            oracle_cost=cost)
        _maybe_retrain(handle)
        _record_eval(handle, force=True)
    else:
        # the human supplies every label, including the seed set
        handle.curve.add(0, 1.0 / dataset.n_classes, 0.0)
    return handle


def next_query_payload(handle: SessionHandle) -> dict:
    with handle.lock:
        state = handle.state
        if state.pending_query is None:
            if not state.pool.unlabeled_ids:
                raise PoolExhausted("pool is empty")
            if _labels_remaining(handle) <= 0:
                raise BudgetExhausted("label budget consumed")
            base = handle.config.strategy.removesuffix("+density")
            if handle.model is None or base == "random":
                rng = np.random.default_rng([handle.seed, 3, handle.queries_issued])
                sid = strat.random_select(state.pool, rng)
                score = 0.0
            else:
                scores = _pool_scores(handle.config, handle.dataset, state,
                                      handle.model, handle.committee)
                sid = strat.select_query(scores)
                score = next(s.value for s in scores if s.sample_id == sid)
            state.pending_query = sid
            handle.pending_score = float(score)
            handle.queries_issued += 1
        sid = state.pending_query
        sample = state.pool.samples[sid]
        return {
            "sample_id": sid,
            "features": [float(v) for v in sample.features],
            "render_hint": RENDER_HINTS[handle.dataset.kind],
            "strategy_score": handle.pending_score,
            "round": state.round,
            "labels_used": len(state.training),
            "budget_remaining": _labels_remaining(handle),
            "class_names": handle.class_names(),
            "pool_features": [[float(v) for v in state.pool.samples[i].features]
                              for i in state.pool.unlabeled_ids[:500]],
        }


def submit_label(handle: SessionHandle, sample_id: int, label: int) -> dict:
    with handle.lock:
        state = handle.state
        if state.pending_query is None or sample_id != state.pending_query:
            raise StaleQuery(
                f"sample {sample_id} is not the pending query "
                f"({state.pending_query})")
        if not (0 <= label < state.n_classes):
            raise LabelOutOfRange(f"label {label} not in [0, {state.n_classes})")
        transfer_sample(state, sample_id, label,
                        strategy=handle.config.strategy,
                        score=handle.pending_score, oracle_cost=0.0)
        _maybe_retrain(handle)
        _record_eval(handle)
        acc = None
        if handle.model is not None:
            acc = evaluate_accuracy(handle.model, handle.dataset.test_features,
                                    handle.dataset.test_labels)
        return {
            "labels_used": len(state.training),
            "current_accuracy": acc,
            "curve_tail": list(handle.curve.points[-3:]),
        }


def curve_payload(handle: SessionHandle) -> dict:
    with handle.lock:
        return {"points": list(handle.curve.points),
                "partial": handle.curve.partial}


def create_app(data_dir: Optional[str] = None) -> FastAPI:
    """Build the service; data_dir (or $OL_DATA_DIR) receives session snapshots."""
    app = FastAPI(title="active-learning gateway")
    store = SessionStore()
    app.state.store = store
    app.state.data_dir = os.environ.get("OL_DATA_DIR", data_dir)

    status_codes = {"unknown_session": 404, "config_invalid": 400,
                    "label_out_of_range": 400, "stale_query": 409,
                    "pool_exhausted": 409, "budget_exhausted": 409,
                    "unsupported_format": 400}

    @app.exception_handler(ActiveLearningError)
    async def _domain_error(request: Request, exc: ActiveLearningError):
        return JSONResponse(status_code=status_codes.get(exc.code, 422),
                            content={"error_code": exc.code, "message": str(exc)})

    @app.middleware("http")
    async def _cors(request: Request, call_next):
        if request.method == "OPTIONS":
            response = PlainTextResponse("")
        else:
            response = await call_next(request)
        response.headers["Access-Control-Allow-Origin"] = "*"
        response.headers["Access-Control-Allow-Methods"] = "GET, POST, OPTIONS"
        response.headers["Access-Control-Allow-Headers"] = "Content-Type"
        return response

    @app.post("/sessions")
    async def create_session(body: dict):
        mode = body.pop("mode", "human_oracle")
        seed = body.pop("seed", None)
        config = config_from_dict(body)
        handle = create_handle(config, mode, seed)
        store.add(handle)
        if app.state.data_dir:
            os.makedirs(app.state.data_dir, exist_ok=True)
            path = os.path.join(app.state.data_dir, f"{handle.session_id}.json")
            with open(path, "w") as fh:
                fh.write(session_to_json(handle.state))
        return {"session_id": handle.session_id, "mode": mode,
                "created_at": handle.created_at,
                "n_classes": handle.dataset.n_classes,
                "class_names": handle.class_names(),
                "render_hint": RENDER_HINTS[handle.dataset.kind],
                "labels_used": len(handle.state.training),
                "budget_remaining": _labels_remaining(handle)}

    @app.get("/sessions/{session_id}/query")
    async def get_query(session_id: str):
        return next_query_payload(store.get(session_id))

    @app.post("/sessions/{session_id}/label")
    async def post_label(session_id: str, body: dict):
        return submit_label(store.get(session_id),
                            int(body["sample_id"]), int(body["label"]))

    @app.get("/sessions/{session_id}/curve")
    async def get_curve(session_id: str):
        return curve_payload(store.get(session_id))

    @app.get("/sessions/{session_id}/export")
    async def export_session(session_id: str, format: str = "csv"):
        handle = store.get(session_id)
        if format == "csv":
            with handle.lock:
                text = curve_to_csv(handle.curve, handle.config.strategy,
                                    handle.seed)
            return PlainTextResponse(text, media_type="text/csv")
        if format == "json":
            return curve_payload(handle)
        raise UnsupportedFormat(f"format {format!r} not supported")

    return app
