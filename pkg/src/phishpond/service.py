"""Local HTTP+JSON facade over the engine.

The service holds sessions in memory and never reimplements a rule: every
state transition a client can observe is produced by the engine and logged,
so a session's event log replayed against the library reproduces it
exactly. Wire format is JSON with snake_case keys and integer seconds;
errors are ``{"error": code, "message": text}``.
"""

from __future__ import annotations

import dataclasses
import secrets
import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .deck import Deck, builtin_deck
from .engine import Action, GameConfig, Phase, RoundView, view
from .telemetry import LOG_EXTENSION, RecordedSession, metrics

# Upper bound on client-reported elapsed seconds per call; bounds abuse
# without a server clock.
MAX_ELAPSED_PER_CALL = 600

_CONFIG_FIELDS = {f.name for f in dataclasses.fields(GameConfig)}


def _error(status: int, code: str, message: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, "message": message, **extra})


def _view_dict(v: RoundView) -> dict:
    return {
        "url": v.url,
        "round_index": v.round_index,
        "score": v.score,
        "lives": v.lives,
        "time_remaining": v.time_remaining,
        "tip": v.tip,
        "total_rounds": v.total_rounds,
    }


def _result_dict(session: "Session") -> dict:
    s = session.recorded.state
    return {"phase": s.phase.value, "score": s.score, "lives": s.lives,
            "time_remaining": s.time_remaining}


class Session:
    def __init__(self, session_id: str, recorded: RecordedSession):
        self.id = session_id
        self.recorded = recorded
        self.lock = threading.Lock()


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, make_recorded) -> Session:
        """``make_recorded(session_id)`` builds the session body; the id is
        drawn first so a write-through sink can name its log file."""
        with self._lock:
            while True:
                session_id = secrets.token_urlsafe(16)
                if session_id not in self._sessions:
                    break
            session = Session(session_id, make_recorded(session_id))
            self._sessions[session_id] = session
            return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)


def create_app(decks: dict[str, Deck] | None = None,
               log_dir: str | Path | None = None) -> FastAPI:
    """Build the service. ``decks`` defaults to just the built-in deck."""
    if decks is None:
        deck = builtin_deck()
        decks = {deck.name: deck}
    log_path = Path(log_dir) if log_dir is not None else None
    if log_path is not None:
        log_path.mkdir(parents=True, exist_ok=True)

    app = FastAPI(title="phishpond", docs_url=None, redoc_url=None)
    # The browser client is a static page served from wherever; sessions
    # carry no credentials, so any origin may talk to the game.
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    store = SessionStore()

    def make_sink(session_id: str):
        if log_path is None:
            return None
        target = log_path / f"{session_id}{LOG_EXTENSION}"

        def sink(line: str) -> None:
            with open(target, "a", encoding="utf-8") as fh:
                fh.write(line)

        return sink

    @app.get("/decks")
    def list_decks():
        return {"decks": sorted(decks)}

    @app.post("/games", status_code=201)
    async def create_game(request: Request):
        try:
            body = await request.json()
        except Exception:
            body = None
        if body is None:
            body = {}
        if not isinstance(body, dict):
            return _error(422, "invalid_request", "body must be a JSON object")

        deck_name = body.get("deck", builtin_deck().name)
        deck = decks.get(deck_name)
        if deck is None:
            return _error(404, "unknown_deck", f"no deck named {deck_name!r}")

        seed = body.get("seed")
        if seed is None:
            seed = secrets.randbits(64)
        if not isinstance(seed, int) or isinstance(seed, bool):
            return _error(422, "invalid_config", "seed must be an integer")
        seed &= (1 << 64) - 1

        overrides = body.get("config", {})
        if not isinstance(overrides, dict):
            return _error(422, "invalid_config", "config must be an object")
        unknown = set(overrides) - _CONFIG_FIELDS
        if unknown:
            return _error(422, "invalid_config", f"unknown config field(s): {sorted(unknown)}")
        bad = [k for k, v in overrides.items() if not isinstance(v, int) or isinstance(v, bool)]
        if bad:
            return _error(422, "invalid_config", f"config field(s) must be integers: {sorted(bad)}")
        config = dataclasses.replace(GameConfig(), **overrides)
        try:
            config.validate()
            if len(deck.cards) < config.deck_size:
                raise ValueError(f"deck_size {config.deck_size} exceeds deck of {len(deck.cards)}")
        except ValueError as exc:
            return _error(422, "invalid_config", str(exc))

        session = store.create(
            lambda sid: RecordedSession(config, deck, seed, sink=make_sink(sid)))
        return JSONResponse(status_code=201, content={
            "session_id": session.id,
            "seed": seed,
            "view": _view_dict(view(session.recorded.state)),
        })

    @app.get("/games/{session_id}")
    def get_state(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        with session.lock:
            state = session.recorded.state
            if state.phase is Phase.IN_ROUND:
                return {"phase": state.phase.value, "view": _view_dict(view(state))}
            return {"phase": state.phase.value, "result": _result_dict(session)}

    @app.post("/games/{session_id}/actions")
    async def post_action(session_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        try:
            body = await request.json()
        except Exception:
            return _error(422, "invalid_request", "body must be a JSON object")
        if not isinstance(body, dict):
            return _error(422, "invalid_request", "body must be a JSON object")
        try:
            action = Action(body.get("action"))
        except ValueError:
            return _error(422, "invalid_action",
                          "action must be one of eat, avoid, ask_teacher")
        elapsed = body.get("elapsed", 0)
        if not isinstance(elapsed, int) or isinstance(elapsed, bool) or elapsed < 0:
            return _error(422, "invalid_request", "elapsed must be a non-negative integer")
        elapsed = min(elapsed, MAX_ELAPSED_PER_CALL)

        with session.lock:
            recorded = session.recorded
            if recorded.state.phase is not Phase.IN_ROUND:
                return _error(409, "game_over", "session already finished",
                              result=_result_dict(session))
            recorded.tick(elapsed)
            if recorded.state.phase is not Phase.IN_ROUND:
                # The countdown expired before the action could land.
                recorded.finish()
                return _error(409, "game_over", "time ran out",
                              result=_result_dict(session))
            outcome = recorded.act(action)
            state = recorded.state
            response = {
                "outcome": {
                    "kind": outcome.kind.value,
                    "feedback": outcome.feedback,
                    "tip": outcome.tip,
                    "score_delta": outcome.score_delta,
                    "time_delta": outcome.time_delta,
                    "lives_delta": outcome.lives_delta,
                },
                "phase": state.phase.value,
            }
            if state.phase is Phase.IN_ROUND:
                response["view"] = _view_dict(view(state))
            else:
                recorded.finish()
                response["result"] = _result_dict(session)
            return response

    @app.get("/games/{session_id}/metrics")
    def get_metrics(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        with session.lock:
            return metrics(session.recorded.log, {d.name: d for d in decks.values()}).to_dict()

    return app
