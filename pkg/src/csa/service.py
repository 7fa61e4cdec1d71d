"""HTTP service: product repository, media store and live sessions.

Sessions are in-memory and ephemeral; each one serializes its inputs
under a per-session lock and appends a snapshot per revision to a
history list, which the stream endpoint replays gap-free. An optional
real-time pump maps wall clock onto virtual clock advances.
"""
from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass

from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse, StreamingResponse

from . import documents, sim, store
from .model import select_instruction_set
from .session import SessionHost, SessionSnapshot, snapshot_to_json
from .transcript import action_from_json


@dataclass
class ServiceConfig:
    data_dir: str = "./data"
    session_cap: int = 32
    idle_expiry_seconds: float = 1800.0
    time_scale: float = 0.0
    pump_interval_seconds: float = 0.25


class _Session:
    def __init__(self, session_id: str, host: SessionHost):
        self.id = session_id
        self.host = host
        self.lock = threading.Lock()
        self.cond = threading.Condition(self.lock)
        self.snapshots: list[SessionSnapshot] = [host.snapshot()]
        self.last_used = time.monotonic()

    def _record(self) -> SessionSnapshot:
        snap = self.host.snapshot()
        self.snapshots.append(snap)
        self.cond.notify_all()
        return snap


class SessionManager:
    def __init__(self, product_store: store.ProductStore, config: ServiceConfig):
        self.store = product_store
        self.config = config
        self.sessions: dict[str, _Session] = {}
        self._lock = threading.Lock()

    def _expire_locked(self) -> None:
        now = time.monotonic()
        expired = [
            sid
            for sid, s in self.sessions.items()
            if now - s.last_used > self.config.idle_expiry_seconds
        ]
        for sid in expired:
            del self.sessions[sid]

    def create(self, barcode: str, ability_level: int) -> SessionSnapshot:
        resource = self.store.get_resource(barcode)
        with self._lock:
            self._expire_locked()
            if len(self.sessions) >= self.config.session_cap:
                raise SessionLimitExceeded(
                    f"session cap of {self.config.session_cap} reached"
                )
            iset = select_instruction_set(resource, ability_level)
            session_id = uuid.uuid4().hex
            host = SessionHost(
                iset,
                session_id=session_id,
                barcode=barcode,
                ability_level=ability_level,
            )
            self.sessions[session_id] = _Session(session_id, host)
            return self.sessions[session_id].snapshots[0]

    def _get(self, session_id: str) -> _Session:
        with self._lock:
            self._expire_locked()
            try:
                sess = self.sessions[session_id]
            except KeyError:
                raise UnknownSession(f"unknown session {session_id}") from None
            sess.last_used = time.monotonic()
            return sess

    def snapshot(self, session_id: str) -> SessionSnapshot:
        sess = self._get(session_id)
        with sess.lock:
            return sess.snapshots[-1]

    def act(self, session_id: str, action_obj: dict) -> SessionSnapshot:
        sess = self._get(session_id)
        action = action_from_json(action_obj)
        with sess.lock:
            if action is None:
                sess.host.abort()
            else:
                sess.host.do(action)
            return sess._record()

    def advance(self, session_id: str, dt_millis: int) -> SessionSnapshot:
        sess = self._get(session_id)
        with sess.lock:
            sess.host.advance_clock(dt_millis)
            return sess._record()

    def stream(self, session_id: str, limit: int | None):
        """Yield every snapshot from the first revision onward, in order."""
        sess = self._get(session_id)
        idx = 0
        sent = 0
        while True:
            with sess.lock:
                while idx >= len(sess.snapshots):
                    if sess.snapshots and sess.snapshots[-1].terminal:
                        return
                    if not sess.cond.wait(timeout=30.0):
                        return
                snap = sess.snapshots[idx]
            idx += 1
            sent += 1
            yield snap
            if limit is not None and sent >= limit:
                return
            if snap.terminal:
                return

    def pump_once(self, dt_millis: int) -> None:
        with self._lock:
            sessions = list(self.sessions.values())
        for sess in sessions:
            with sess.lock:
                if not sess.snapshots[-1].terminal:
                    sess.host.advance_clock(dt_millis)
                    sess._record()


class UnknownSession(Exception):
    pass


class SessionLimitExceeded(Exception):
    pass


def _error(status: int, code: str, message: str, diagnostics: list | None = None):
    body = {"code": code, "message": message}
    if diagnostics is not None:
        body["diagnostics"] = diagnostics
    return JSONResponse(status_code=status, content=body)


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    product_store = store.ProductStore(config.data_dir)
    sessions = SessionManager(product_store, config)
    app = FastAPI(title="community appliance service")
    app.state.store = product_store
    app.state.sessions = sessions
    app.state.config = config
    app.state.pump_stop = threading.Event()

    if config.time_scale > 0:
        def _pump():
            interval = config.pump_interval_seconds
            while not app.state.pump_stop.wait(interval):
                dt = int(interval * 1000 * config.time_scale)
                if dt > 0:
                    sessions.pump_once(dt)

        app.state.pump_thread = threading.Thread(target=_pump, daemon=True)

        @app.on_event("startup")
        def _start_pump():
            app.state.pump_thread.start()

        @app.on_event("shutdown")
        def _stop_pump():
            app.state.pump_stop.set()

    # -- products ------------------------------------------------------------

    @app.put("/products/{barcode}")
    async def put_product(barcode: str, request: Request):
        data = await request.body()
        try:
            revision = product_store.put_product(barcode, data)
        except store.BarcodeMismatch as exc:
            return _error(409, "BarcodeMismatch", str(exc))
        except store.LintFailed as exc:
            return _error(
                422,
                "LintFailed",
                "resource has lint errors",
                exc.report.to_json()["diagnostics"],
            )
        except documents.DocumentError as exc:
            return _error(
                400,
                "ParseFailed",
                "document rejected",
                [{"path": exc.path, "message": exc.message}],
            )
        except store.StoreError as exc:
            return _error(400, "ParseFailed", str(exc))
        return {"revision": revision}

    @app.get("/products/{barcode}")
    def get_product(barcode: str):
        try:
            data = product_store.get_product(barcode)
        except store.NotFound as exc:
            return _error(404, "NotFound", str(exc))
        return Response(content=data, media_type="application/json")

    @app.get("/products")
    def list_products(category: str | None = Query(default=None)):
        rows = product_store.list_products(category)
        return {
            "products": [
                {
                    "barcode": r.barcode,
                    "name": r.name,
                    "category": r.category,
                    "image": r.image_name,
                }
                for r in rows
            ]
        }

    # -- media ---------------------------------------------------------------

    @app.put("/media/{name}")
    async def put_media(name: str, request: Request, kind: str = Query(default="image")):
        data = await request.body()
        try:
            product_store.put_media(name, kind, data)
        except store.UnsafeName as exc:
            return _error(400, "UnsafeName", str(exc))
        return {"stored": name}

    @app.get("/media/{name}")
    def get_media(name: str):
        try:
            data, kind = product_store.get_media(name)
        except store.UnsafeName as exc:
            return _error(400, "UnsafeName", str(exc))
        except store.NotFound as exc:
            return _error(404, "NotFound", str(exc))
        media_types = {
            "image": "application/octet-stream",
            "audio": "application/octet-stream",
            "video": "application/octet-stream",
            "text": "text/plain; charset=utf-8",
        }
        return Response(content=data, media_type=media_types.get(kind, "application/octet-stream"))

    # -- sessions ------------------------------------------------------------

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await request.json()
        barcode = str(body.get("barcode", ""))
        ability = int(body.get("abilityLevel", 1))
        try:
            snap = sessions.create(barcode, ability)
        except store.NotFound as exc:
            return _error(404, "NotFound", str(exc))
        except SessionLimitExceeded as exc:
            return _error(429, "SessionLimitExceeded", str(exc))
        return snapshot_to_json(snap)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        try:
            return snapshot_to_json(sessions.snapshot(session_id))
        except UnknownSession as exc:
            return _error(404, "UnknownSession", str(exc))

    @app.post("/sessions/{session_id}/actions")
    async def post_action(session_id: str, request: Request):
        body = await request.json()
        try:
            snap = sessions.act(session_id, body)
        except UnknownSession as exc:
            return _error(404, "UnknownSession", str(exc))
        except sim.PreconditionViolated as exc:
            return _error(409, "PreconditionViolated", str(exc))
        except ValueError as exc:
            return _error(400, "BadAction", str(exc))
        return snapshot_to_json(snap)

    @app.post("/sessions/{session_id}/clock")
    async def post_clock(session_id: str, request: Request):
        body = await request.json()
        dt = body.get("dtMillis")
        if not isinstance(dt, int) or dt <= 0:
            return _error(400, "BadRequest", "dtMillis must be a positive integer")
        try:
            snap = sessions.advance(session_id, dt)
        except UnknownSession as exc:
            return _error(404, "UnknownSession", str(exc))
        return snapshot_to_json(snap)

    @app.get("/sessions/{session_id}/stream")
    def stream_session(session_id: str, limit: int | None = Query(default=None)):
        try:
            sessions._get(session_id)
        except UnknownSession as exc:
            return _error(404, "UnknownSession", str(exc))

        def gen():
            for snap in sessions.stream(session_id, limit):
                yield json.dumps(
                    snapshot_to_json(snap), ensure_ascii=False,
                    separators=(",", ":"),
                ) + "\n"

        return StreamingResponse(gen(), media_type="application/x-ndjson")

    return app
