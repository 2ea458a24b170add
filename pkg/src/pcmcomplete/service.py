"""Session-based HTTP service consumed by the browser companion.

Endpoints (JSON):
    POST /sessions {"order": n}
    GET  /sessions/{id}
    PUT  /sessions/{id}/judgments {"i": i, "j": j, "value": v | null}
    GET  /sessions/{id}/completion?method=llsm|ev|both&tol=T
    GET  /sessions/{id}/suggestion
    GET  /healthz

Sessions persist in an append-only JSONL journal so a restart replays state.
"""

from __future__ import annotations

import json
import math
import threading
import time
import uuid
from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel

from .core import IncompletePCM, PcmError, comparison_graph
from .eigen import ev_completion
from .experiments import compare_completions
from .llsm import CompletionResult, llsm_completion

SAATY_LO, SAATY_HI = 1.0 / 9.0, 9.0


class UnknownSession(PcmError):
    pass


class BadOrder(PcmError):
    pass


class BadValue(PcmError):
    pass


@dataclass
class Session:
    id: str
    order: int
    judgments: dict = field(default_factory=dict)  # (i, j) with i < j -> value
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def pcm(self) -> IncompletePCM:
        a = np.full((self.order, self.order), math.nan)
        np.fill_diagonal(a, 1.0)
        for (i, j), v in self.judgments.items():
            a[i - 1, j - 1] = v
            a[j - 1, i - 1] = 1.0 / v
        return IncompletePCM(a)

    def state(self) -> dict:
        graph = comparison_graph(self.pcm())
        components = graph.components()
        return {
            "id": self.id,
            "order": self.order,
            "judgments": [[i, j, v] for (i, j), v in sorted(self.judgments.items())],
            "connected": len(components) == 1,
            "components": components,
            "warnings": [
                f"judgment ({i},{j}) = {v:g} is outside the [1/9, 9] scale"
                for (i, j), v in sorted(self.judgments.items())
                if not SAATY_LO - 1e-12 <= v <= SAATY_HI + 1e-12
            ],
            "created": self.created,
            "updated": self.updated,
        }


class SessionStore:
    """In-memory sessions backed by an append-only journal file."""

    def __init__(self, journal_path=None):
        self.journal_path = journal_path
        self.sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        if journal_path:
            self._replay()

    def _replay(self):
        try:
            fh = open(self.journal_path)
        except FileNotFoundError:
            return
        with fh:
            for line in fh:
                if not line.strip():
                    continue
                rec = json.loads(line)
                if rec["event"] == "create":
                    self.sessions[rec["id"]] = Session(id=rec["id"], order=rec["order"],
                                                       created=rec["ts"], updated=rec["ts"])
                elif rec["event"] == "judgment":
                    s = self.sessions[rec["id"]]
                    key = (rec["i"], rec["j"])
                    if rec["value"] is None:
                        s.judgments.pop(key, None)
                    else:
                        s.judgments[key] = rec["value"]
                    s.updated = rec["ts"]

    def _journal(self, record: dict):
        if self.journal_path:
            with open(self.journal_path, "a") as fh:
                fh.write(json.dumps(record) + "\n")

    def create_session(self, order: int) -> Session:
        if not isinstance(order, int) or not 2 <= order <= 50:
            raise BadOrder(f"order must be an integer in 2..50, got {order!r}")
        session = Session(id=uuid.uuid4().hex, order=order)
        with self._lock:
            self.sessions[session.id] = session
        self._journal({"event": "create", "id": session.id, "order": order,
                       "ts": session.created})
        return session

    def get(self, session_id: str) -> Session:
        try:
            return self.sessions[session_id]
        except KeyError:
            raise UnknownSession(f"no session {session_id!r}") from None

    def submit_judgment(self, session_id: str, i: int, j: int, value) -> dict:
        session = self.get(session_id)
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= session.order):
            raise BadValue(f"expected 1 <= i < j <= {session.order}, got i={i!r}, j={j!r}")
        if value is not None:
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise BadValue(f"judgment value must be a positive number, got {value!r}") from None
            if not (value > 0 and math.isfinite(value)):
                raise BadValue(f"judgment value must be a positive number, got {value}")
        with session.lock:
            if value is None:
                session.judgments.pop((i, j), None)
            else:
                session.judgments[(i, j)] = value
            session.updated = time.time()
            self._journal({"event": "judgment", "id": session_id, "i": i, "j": j,
                           "value": value, "ts": session.updated})
            return session.state()


def _result_payload(result: CompletionResult) -> dict:
    return {
        "matrix": {"order": result.matrix.shape[0],
                   "entries": [[float(v) for v in row] for row in result.matrix]},
        "filled": [[i, j, result.fill_value(i, j)] for i, j in sorted(result.filled)],
        "weights": [float(w) for w in result.weights.weights],
        "lambda_max": result.lambda_max,
        "ci": result.ci,
        "gci": result.gci,
    }


def get_completion(store: SessionStore, session_id: str, method: str = "both",
                   tol: float = 1e-6) -> dict:
    session = store.get(session_id)
    state = session.state()
    payload = {"id": session.id, "order": session.order, "method": method,
               "connected": state["connected"], "warnings": state["warnings"],
               "given": [[i, j, v] for i, j, v in state["judgments"]]}
    if not state["connected"]:
        payload["components"] = state["components"]
        return payload
    pcm = session.pcm()
    if method in ("llsm", "both"):
        payload["llsm"] = _result_payload(llsm_completion(pcm))
    if method in ("ev", "both"):
        payload["ev"] = _result_payload(ev_completion(pcm)[0])
    if method == "both":
        comparison = compare_completions(pcm, tolerance=tol)
        payload["comparison"] = {
            "per_entry": [[i, j, d] for (i, j), d in sorted(comparison.per_entry_log_divergence.items())],
            "max_divergence": comparison.max_divergence,
            "max_position": list(comparison.max_position),
            "coincide": comparison.coincide,
            "tolerance": comparison.tolerance,
        }
    return payload


def suggest_next_comparison(store: SessionStore, session_id: str):
    """Next pair to elicit: bridge components first, then largest divergence
    (order >= 5) or the fill farthest from 1 in log-distance (order <= 4)."""
    session = store.get(session_id)
    pcm = session.pcm()
    graph = comparison_graph(pcm)
    components = graph.components()
    if len(components) > 1:
        a, b = components[0], components[1]  # two largest
        i, j = a[0], b[0]
        return (i, j) if i < j else (j, i)
    missing = pcm.missing_pairs
    if not missing:
        return None
    if session.order >= 5:
        comparison = compare_completions(pcm)
        return max(missing, key=lambda p: comparison.per_entry_log_divergence[p])
    result = llsm_completion(pcm)
    return max(missing, key=lambda p: abs(math.log(result.fill_value(*p))))


class CreateSessionBody(BaseModel):
    order: int


class JudgmentBody(BaseModel):
    i: int
    j: int
    value: float | None = None  # null removes the judgment


def create_app(journal_path=None):
    from fastapi import FastAPI
    from fastapi.responses import JSONResponse

    app = FastAPI(title="pcmcomplete service")
    store = SessionStore(journal_path=journal_path)
    app.state.store = store

    @app.exception_handler(PcmError)
    async def pcm_error_handler(request, exc: PcmError):
        status = 404 if isinstance(exc, UnknownSession) else 400
        return JSONResponse(status_code=status,
                            content={"error": type(exc).__name__, "detail": str(exc)})

    @app.get("/healthz")
    def healthz():
        return {"ok": True}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        return store.create_session(body.order).state()

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return store.get(session_id).state()

    @app.put("/sessions/{session_id}/judgments")
    def put_judgment(session_id: str, body: JudgmentBody):
        return store.submit_judgment(session_id, body.i, body.j, body.value)

    @app.get("/sessions/{session_id}/completion")
    def completion(session_id: str, method: str = "both", tol: float = 1e-6):
        if method not in ("llsm", "ev", "both"):
            raise BadValue(f"method must be llsm, ev or both, got {method!r}")
        return get_completion(store, session_id, method=method, tol=tol)

    @app.get("/sessions/{session_id}/suggestion")
    def suggestion(session_id: str):
        pair = suggest_next_comparison(store, session_id)
        return {"suggestion": list(pair) if pair else None}

    return app
