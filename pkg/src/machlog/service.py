"""Loopback JSON service exposing proof sessions to the companion UI.

All state is in-process.  One lock serialises mutations per session;
distinct sessions proceed independently.  Responses are deterministic
functions of session state and request, so replaying a request sequence
reproduces the same bodies (session ids aside).
"""

from __future__ import annotations

import secrets
import threading
from dataclasses import dataclass, field
from typing import Dict, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .engine import (
    EngineError,
    ProofState,
    StaleOptionError,
    annotations,
    enumerate_options,
    extract_theorem,
    to_snapshot,
)
from .programs import ProgramError, parse_program
from .store import AxiomStore, Schema
from .terms import TermError


@dataclass
class Session:
    state: ProofState
    lock: threading.Lock = field(default_factory=threading.Lock)
    options_cache: dict = field(default_factory=dict)  # revision -> options

    def options(self, store: AxiomStore):
        rev = self.state.revision
        if rev not in self.options_cache:
            self.options_cache.clear()
            self.options_cache[rev] = enumerate_options(self.state, store)
        return self.options_cache[rev]


class SessionRegistry:
    def __init__(self):
        self._sessions: Dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, state: ProofState) -> str:
        with self._lock:
            sid = secrets.token_hex(8)
            while sid in self._sessions:
                sid = secrets.token_hex(8)
            self._sessions[sid] = Session(state)
            return sid

    def get(self, sid: str) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"no session {sid}")
        return session


class CreateSession(BaseModel):
    premises: str


class ApplyOption(BaseModel):
    option: int
    revision: Optional[int] = None


def _view(sid: str, state: ProofState) -> dict:
    lines = []
    for number, (pl, annot) in enumerate(zip(state.lines, annotations(state)), 1):
        lines.append({
            "number": number,
            "statement": pl.statement.render(),
            "connection": pl.connection.render() if pl.connection else None,
            "label": pl.connection.label if pl.connection else None,
            "refs": list(pl.connection.refs) if pl.connection else None,
            "annotation": annot,
        })
    return {
        "id": sid,
        "revision": state.revision,
        "premise_count": state.premise_count,
        "lines": lines,
        "snapshot": to_snapshot(state),
    }


def _option_json(o) -> dict:
    return {
        "index": o.index,
        "label": o.label,
        "refs": list(o.refs),
        "conclusion": [st.render() for st in o.conclusion],
        "preview": o.preview(),
        "already_derived": o.already_derived,
    }


def create_app(store: AxiomStore) -> FastAPI:
    app = FastAPI(title="machlog", docs_url=None, redoc_url=None)
    registry = SessionRegistry()
    app.state.registry = registry
    app.state.store = store

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/axioms")
    def axioms():
        entries = []
        for entry in store.entries.values():
            if isinstance(entry, Schema):
                entries.append({"label": entry.label, "kind": "schema",
                                "schema": entry.schema_id})
            else:
                entries.append({
                    "label": entry.label,
                    "kind": entry.kind,
                    "premise": [st.render() for st in entry.premise],
                    "conclusion": [st.render() for st in entry.conclusion],
                })
        return {"intprograms": list(store.int_programs), "entries": entries}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSession):
        try:
            premises = parse_program(body.premises)
            state = ProofState(premises)
        except (ProgramError, TermError) as e:
            raise HTTPException(status_code=400, detail=str(e))
        sid = registry.create(state)
        return _view(sid, state)

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        session = registry.get(sid)
        with session.lock:
            return _view(sid, session.state)

    @app.get("/sessions/{sid}/options")
    def get_options(sid: str):
        session = registry.get(sid)
        with session.lock:
            options = session.options(store)
            return {"revision": session.state.revision,
                    "options": [_option_json(o) for o in options]}

    @app.post("/sessions/{sid}/apply")
    def apply_option(sid: str, body: ApplyOption):
        session = registry.get(sid)
        with session.lock:
            if body.revision is not None and body.revision != session.state.revision:
                raise HTTPException(status_code=409, detail="stale revision")
            options = session.options(store)
            if not 0 <= body.option < len(options):
                raise HTTPException(status_code=400,
                                    detail=f"option index {body.option} out of range")
            try:
                session.state.apply(options[body.option])
            except StaleOptionError as e:
                raise HTTPException(status_code=409, detail=str(e))
            except EngineError as e:
                raise HTTPException(status_code=400, detail=str(e))
            return _view(sid, session.state)

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        session = registry.get(sid)
        with session.lock:
            try:
                session.state.undo()
            except EngineError as e:
                raise HTTPException(status_code=409, detail=str(e))
            return _view(sid, session.state)

    @app.post("/sessions/{sid}/extract")
    def extract(sid: str):
        session = registry.get(sid)
        with session.lock:
            try:
                result = extract_theorem(session.state)
            except EngineError as e:
                raise HTTPException(status_code=409, detail=str(e))
            return {
                "theorem": result.render(),
                "used": list(result.used),
                "redundant": list(result.redundant),
                "premises": [st.render() for st in result.premises],
                "conclusion": result.conclusion.render(),
            }

    return app
