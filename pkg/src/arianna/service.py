"""HTTP API over models, scoring, and cleaning sessions.

Storage is plain files under one root directory: each model as an
arianna-model v1 file named ``<id>.model``, each session as a JSON session
document named ``<id>.session.json``. Everything reloads lazily after a
restart. Models are immutable once created; edits to one session are
serialized behind a per-session lock with an optimistic ``expected_seq``
check, so concurrent writers get exactly one winner and one 409.
"""

from __future__ import annotations

import json
import re
import threading
from pathlib import Path
from typing import Any, Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .errors import (
    AriannaError,
    EditError,
    EmptyTextError,
    MissingTrigramsError,
    ModelFormatError,
    NothingToUndoError,
)
from .model import ConsistencyModel, build_model, load_model, save_model
from .scorer import report_to_dict, score, score_strict
from .session import (
    CleaningSession,
    export_session,
    import_session,
    open_session,
)

MODEL_ID = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")
DEFAULT_ENTRY_CAP = 1000
DEFAULT_MAX_TEXT_BYTES = 10_000_000


class ApiError(Exception):
    """Carries the {code, message, detail} error body."""

    def __init__(self, code: int, message: str, detail: Any = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.detail = detail


class ModelStore:
    """Disk-backed registry of models and sessions."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._models: dict[str, ConsistencyModel] = {}
        self._sessions: dict[str, CleaningSession] = {}
        self._session_locks: dict[str, threading.Lock] = {}
        self._lock = threading.Lock()

    # -- models ------------------------------------------------------------

    def _model_path(self, model_id: str) -> Path:
        return self.root / f"{model_id}.model"

    def list_model_ids(self) -> list[str]:
        on_disk = {p.name[: -len(".model")] for p in self.root.glob("*.model")}
        return sorted(on_disk | set(self._models))

    def add_model(self, model: ConsistencyModel) -> None:
        with self._lock:
            if model.name in self._models or self._model_path(model.name).exists():
                raise ApiError(400, f"model {model.name!r} already exists")
            save_model(model, self._model_path(model.name))
            self._models[model.name] = model

    def get_model(self, model_id: str) -> ConsistencyModel:
        with self._lock:
            if model_id in self._models:
                return self._models[model_id]
        path = self._model_path(model_id)
        if not MODEL_ID.match(model_id) or not path.exists():
            raise ApiError(404, f"unknown model {model_id!r}")
        try:
            model = load_model(path)
        except ModelFormatError as exc:
            raise ApiError(500, f"stored model {model_id!r} is unreadable", str(exc))
        with self._lock:
            self._models.setdefault(model_id, model)
        return model

    # -- sessions ----------------------------------------------------------

    def _session_path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.session.json"

    def persist_session(self, session: CleaningSession) -> None:
        path = self._session_path(session.id)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(export_session(session)), encoding="utf-8")
        tmp.replace(path)

    def add_session(self, session: CleaningSession) -> None:
        with self._lock:
            self._sessions[session.id] = session
            self._session_locks[session.id] = threading.Lock()
        self.persist_session(session)

    def get_session(self, session_id: str) -> tuple[CleaningSession, threading.Lock]:
        with self._lock:
            if session_id in self._sessions:
                return self._sessions[session_id], self._session_locks[session_id]
        path = self._session_path(session_id)
        if not path.exists():
            raise ApiError(404, f"unknown session {session_id!r}")
        doc = json.loads(path.read_text(encoding="utf-8"))
        model = self.get_model(doc.get("model", {}).get("name", ""))
        session = import_session(doc, model)
        with self._lock:
            self._sessions.setdefault(session_id, session)
            lock = self._session_locks.setdefault(session_id, threading.Lock())
        return self._sessions[session_id], lock


# -- request bodies ---------------------------------------------------------


class BuildModelRequest(BaseModel):
    name: str
    kind: Literal["internal", "external"] = "internal"
    text: str
    orders: list[int] = Field(default=[3, 4, 5])
    min_frequency: int = 2


class ScoreRequest(BaseModel):
    text: str
    model_id: str
    mode: Literal["paper", "strict"] = "paper"


class CreateSessionRequest(BaseModel):
    text: str
    model_id: str


class EditRequest(BaseModel):
    position: int
    new_word: str
    source: Literal["accepted-candidate", "manual"] = "manual"
    expected_seq: int


class UndoRequest(BaseModel):
    expected_seq: int | None = None


# -- response helpers ---------------------------------------------------------


def _model_summary(model: ConsistencyModel) -> dict[str, Any]:
    return {
        "id": model.name,
        "name": model.name,
        "kind": model.kind,
        "orders": sorted(model.orders),
        "min_frequency": model.min_frequency,
        "entry_counts": {str(order): n for order, n in model.entry_counts.items()},
        "entries_total": len(model),
        "checksum": model.meta.checksum,
        "token_count": model.meta.token_count,
    }


def _history_points(session: CleaningSession) -> list[dict[str, Any]]:
    return [
        {"seq": seq, "consistency": report.consistency}
        for seq, report in session.score_history
    ]


def _session_state(session: CleaningSession) -> dict[str, Any]:
    return {
        "id": session.id,
        "model_id": session.model.name,
        "seq": session.seq,
        "tokens": list(session.current_tokens),
        "report": report_to_dict(session.latest_report),
        "history": _history_points(session),
    }


def create_app(
    model_dir: str | Path,
    entry_cap: int = DEFAULT_ENTRY_CAP,
    max_text_bytes: int = DEFAULT_MAX_TEXT_BYTES,
) -> FastAPI:
    """Build the API application over a storage root."""
    app = FastAPI(title="arianna", version="1")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = ModelStore(model_dir)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.code,
            content={"code": exc.code, "message": exc.message, "detail": exc.detail},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": 400, "message": "invalid parameters", "detail": exc.errors()},
        )

    def _check_text_size(text: str) -> None:
        if len(text.encode("utf-8")) > max_text_bytes:
            raise ApiError(413, f"text exceeds the {max_text_bytes} byte cap")

    @app.post("/v1/models", status_code=201)
    def create_model(body: BuildModelRequest) -> dict[str, Any]:
        if not MODEL_ID.match(body.name):
            raise ApiError(400, "model name must match [A-Za-z0-9._-]+ and start alphanumeric")
        _check_text_size(body.text)
        try:
            model = build_model(
                body.text,
                orders=body.orders,
                min_frequency=body.min_frequency,
                kind=body.kind,
                name=body.name,
            )
        except (AriannaError, ValueError) as exc:
            raise ApiError(400, str(exc))
        store.add_model(model)
        return _model_summary(model)

    @app.get("/v1/models")
    def list_models() -> dict[str, Any]:
        summaries = []
        for model_id in store.list_model_ids():
            try:
                summaries.append(_model_summary(store.get_model(model_id)))
            except ApiError:
                continue
        return {"models": summaries}

    @app.get("/v1/models/{model_id}")
    def get_model(model_id: str, context: str | None = None, order: int | None = None) -> dict[str, Any]:
        model = store.get_model(model_id)
        if context is not None or order is not None:
            if context is None or order is None:
                raise ApiError(400, "expected-word queries need both context and order")
            if order not in model.orders:
                raise ApiError(400, f"model has no order {order} (orders: {sorted(model.orders)})")
            expected = model.expected_words(context, order)
            return {
                "id": model.name,
                "context": context,
                "order": order,
                "expected": [
                    {"word": word, "frequency": expected[word]} for word in sorted(expected)
                ],
            }
        summary = _model_summary(model)
        if len(model) <= entry_cap:
            summary["entries"] = [
                {
                    "order": e.order,
                    "context": e.context,
                    "expected_word": e.expected_word,
                    "frequency": e.frequency,
                }
                for e in model.entries
            ]
        else:
            summary["entries"] = None
            summary["entry_cap"] = entry_cap
        return summary

    @app.post("/v1/score")
    def score_text(body: ScoreRequest) -> dict[str, Any]:
        model = store.get_model(body.model_id)
        _check_text_size(body.text)
        try:
            report = (
                score_strict(body.text, model)
                if body.mode == "strict"
                else score(body.text, model)
            )
        except (EmptyTextError, MissingTrigramsError) as exc:
            raise ApiError(400, str(exc))
        return report_to_dict(report)

    @app.post("/v1/sessions", status_code=201)
    def create_session(body: CreateSessionRequest) -> dict[str, Any]:
        model = store.get_model(body.model_id)
        _check_text_size(body.text)
        try:
            session = open_session(body.text, model)
        except (EmptyTextError, MissingTrigramsError) as exc:
            raise ApiError(400, str(exc))
        store.add_session(session)
        return _session_state(session)

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str) -> dict[str, Any]:
        session, _ = store.get_session(session_id)
        return _session_state(session)

    @app.post("/v1/sessions/{session_id}/edits")
    def apply_edit(session_id: str, body: EditRequest) -> dict[str, Any]:
        session, lock = store.get_session(session_id)
        with lock:
            if body.expected_seq != session.seq:
                raise ApiError(
                    409,
                    f"expected_seq {body.expected_seq} is stale (session is at seq {session.seq})",
                )
            try:
                report = session.apply_edit(body.position, body.new_word, body.source)
            except EditError as exc:
                raise ApiError(422, str(exc))
            store.persist_session(session)
            return {
                "id": session.id,
                "seq": session.seq,
                "report": report_to_dict(report),
                "history_point": {"seq": session.seq, "consistency": report.consistency},
            }

    @app.post("/v1/sessions/{session_id}/undo")
    def undo_edit(session_id: str, body: UndoRequest | None = None) -> dict[str, Any]:
        session, lock = store.get_session(session_id)
        with lock:
            expected = body.expected_seq if body is not None else None
            if expected is not None and expected != session.seq:
                raise ApiError(
                    409, f"expected_seq {expected} is stale (session is at seq {session.seq})"
                )
            try:
                report = session.undo()
            except NothingToUndoError as exc:
                raise ApiError(422, str(exc))
            store.persist_session(session)
            return {
                "id": session.id,
                "seq": session.seq,
                "report": report_to_dict(report),
                "history_point": {"seq": session.seq, "consistency": report.consistency},
            }

    @app.get("/v1/sessions/{session_id}/export")
    def export(session_id: str) -> dict[str, Any]:
        session, lock = store.get_session(session_id)
        with lock:
            return export_session(session)

    return app
