"""Append-only session logs, deterministic replay, and learner metrics.

A session log is a JSON Lines stream (one object per line, keys ``seq``,
``t``, ``kind``, ``payload``); ``t`` is the countdown value right after the
event. Logs reference decks by name and carry the seed, so replaying a log
re-runs the engine and must reproduce every recorded outcome; any mismatch
means the log was tampered with or engine behaviour drifted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Mapping

from .deck import Deck, builtin_deck
from .engine import (
    Action,
    CORRECT_KINDS,
    ERROR_KINDS,
    GameConfig,
    GameOver,
    GameState,
    Outcome,
    OutcomeKind,
    Phase,
    apply_action,
    new_game,
    tick,
)

LOG_EXTENSION = ".phlog"

KIND_GAME_STARTED = "game_started"
KIND_TICKED = "ticked"
KIND_ACTED = "acted"
KIND_ENDED = "ended"

_KINDS = {KIND_GAME_STARTED, KIND_TICKED, KIND_ACTED, KIND_ENDED}


class SequenceGap(ValueError):
    """An appended event's sequence number is not the next expected one."""


class LogParseError(ValueError):
    """The document is not a well-formed event log."""


class UnknownDeck(KeyError):
    """A log references a deck name the replayer cannot resolve."""


class ReplayDivergence(ValueError):
    """Recomputed state disagrees with the log: corruption or version skew."""


@dataclass(frozen=True)
class SessionEvent:
    seq: int
    at_game_time: int
    kind: str
    payload: dict

    def to_json_line(self) -> str:
        obj = {"seq": self.seq, "t": self.at_game_time, "kind": self.kind,
               "payload": self.payload}
        return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def game_started(seq: int, state: GameState, deck_name: str) -> SessionEvent:
    cfg = state.config
    payload = {
        "config": {
            "initial_time": cfg.initial_time,
            "initial_lives": cfg.initial_lives,
            "points_per_correct": cfg.points_per_correct,
            "teacher_cost": cfg.teacher_cost,
            "error_time_penalty": cfg.error_time_penalty,
            "error_life_penalty": cfg.error_life_penalty,
            "deck_size": cfg.deck_size,
        },
        "deck": deck_name,
        "seed": state.seed,
    }
    return SessionEvent(seq, state.time_remaining, KIND_GAME_STARTED, payload)


def ticked(seq: int, state: GameState, elapsed: int) -> SessionEvent:
    return SessionEvent(seq, state.time_remaining, KIND_TICKED, {"elapsed": elapsed})


def acted(seq: int, state: GameState, action: Action, outcome: Outcome,
          round_index: int, url: str) -> SessionEvent:
    payload = {
        "action": action.value,
        "outcome": outcome.kind.value,
        "round_index": round_index,
        "url": url,
    }
    return SessionEvent(seq, state.time_remaining, KIND_ACTED, payload)


def ended(seq: int, state: GameState, phase: Phase) -> SessionEvent:
    payload = {"phase": phase.value, "score": state.score, "lives": state.lives}
    return SessionEvent(seq, state.time_remaining, KIND_ENDED, payload)


class EventLog:
    """Strictly ordered, append-only event sequence."""

    def __init__(self):
        self._events: list[SessionEvent] = []

    def record(self, event: SessionEvent) -> "EventLog":
        expected = len(self._events)
        if event.seq != expected:
            raise SequenceGap(f"expected seq {expected}, got {event.seq}")
        if expected == 0 and event.kind != KIND_GAME_STARTED:
            raise ValueError(f"first event must be {KIND_GAME_STARTED}, got {event.kind}")
        self._events.append(event)
        return self

    @property
    def events(self) -> tuple[SessionEvent, ...]:
        return tuple(self._events)

    def __len__(self) -> int:
        return len(self._events)

    def __iter__(self):
        return iter(self._events)

    def __eq__(self, other) -> bool:
        return isinstance(other, EventLog) and self._events == other._events


def serialize(log: EventLog) -> str:
    """One compact JSON object per line, newline-terminated."""
    return "".join(e.to_json_line() + "\n" for e in log)


def parse(text: str) -> EventLog:
    log = EventLog()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise LogParseError(f"line {lineno}: not valid JSON: {exc}") from None
        if not isinstance(obj, dict) or set(obj) != {"seq", "t", "kind", "payload"}:
            raise LogParseError(f"line {lineno}: expected keys seq, t, kind, payload")
        if obj["kind"] not in _KINDS:
            raise LogParseError(f"line {lineno}: unknown event kind {obj['kind']!r}")
        if not isinstance(obj["payload"], dict):
            raise LogParseError(f"line {lineno}: payload must be an object")
        event = SessionEvent(seq=obj["seq"], at_game_time=obj["t"],
                             kind=obj["kind"], payload=obj["payload"])
        try:
            log.record(event)
        except (SequenceGap, ValueError) as exc:
            raise LogParseError(f"line {lineno}: {exc}") from None
    return log


class RecordedSession:
    """A live engine session that mirrors every transition into an event log.

    ``sink``, when given, receives each serialized line as it is appended
    (write-through logging for the service).
    """

    def __init__(self, config: GameConfig, deck: Deck, seed: int,
                 sink: Callable[[str], None] | None = None):
        self.deck = deck
        self.state = new_game(config, deck, seed)
        self.log = EventLog()
        self._sink = sink
        self._finished = False
        self._append(game_started(0, self.state, deck.name))

    def _append(self, event: SessionEvent) -> None:
        self.log.record(event)
        if self._sink is not None:
            self._sink(event.to_json_line() + "\n")

    def tick(self, elapsed: int) -> None:
        self.state = tick(self.state, elapsed)
        self._append(ticked(len(self.log), self.state, elapsed))

    def act(self, action: Action) -> Outcome:
        round_index = self.state.round_index
        url = self.state.current_card.url
        self.state, outcome = apply_action(self.state, action)
        self._append(acted(len(self.log), self.state, action, outcome, round_index, url))
        return outcome

    def finish(self, phase: Phase | None = None) -> None:
        """Close the log with an Ended event.

        ``phase`` defaults to the engine phase; a host may pass
        ``Phase.LOST`` to record a forfeit of a still-live session.
        """
        if self._finished:
            return
        final = phase if phase is not None else self.state.phase
        if final is Phase.IN_ROUND:
            raise ValueError("cannot finish a session that is still in a round")
        self._append(ended(len(self.log), self.state, final))
        self._finished = True

    @property
    def finished(self) -> bool:
        return self._finished


DeckResolver = Mapping[str, Deck] | Callable[[str], Deck | None]


def _resolve_deck(name: str, decks: DeckResolver | None) -> Deck:
    if decks is None:
        decks = {builtin_deck().name: builtin_deck()}
    if callable(decks):
        deck = decks(name)
    else:
        deck = decks.get(name)
    if deck is None:
        raise UnknownDeck(name)
    return deck


def _check(condition: bool, seq: int, message: str) -> None:
    if not condition:
        raise ReplayDivergence(f"event {seq}: {message}")


def replay(log: EventLog, decks: DeckResolver | None = None) -> GameState:
    """Re-execute a log against the engine and return the final state.

    Every recomputed outcome kind, round index, URL, and post-event
    countdown value must match the log; the Ended event's fields are not
    re-derived (a forfeit records Lost while the engine state is live).
    """
    events = log.events
    if not events or events[0].kind != KIND_GAME_STARTED:
        raise ReplayDivergence("log does not start with a game_started event")

    start = events[0]
    try:
        config = GameConfig(**start.payload["config"])
        config.validate()
    except (TypeError, KeyError, ValueError) as exc:
        raise ReplayDivergence(f"event 0: bad config payload: {exc}") from None
    deck = _resolve_deck(start.payload["deck"], decks)
    state = new_game(config, deck, start.payload["seed"])
    _check(start.at_game_time == state.time_remaining, 0, "start time mismatch")

    for event in events[1:]:
        if event.kind == KIND_ENDED:
            _check(event is events[-1], event.seq, "ended event before end of log")
            break
        try:
            if event.kind == KIND_TICKED:
                state = tick(state, event.payload["elapsed"])
            elif event.kind == KIND_ACTED:
                _check(event.payload["round_index"] == state.round_index, event.seq,
                       f"round index: log {event.payload['round_index']}, engine {state.round_index}")
                _check(event.payload["url"] == state.current_card.url, event.seq,
                       "card url mismatch")
                state, outcome = apply_action(state, Action(event.payload["action"]))
                _check(outcome.kind.value == event.payload["outcome"], event.seq,
                       f"outcome: log {event.payload['outcome']!r}, engine {outcome.kind.value!r}")
            else:
                raise ReplayDivergence(f"event {event.seq}: unexpected kind {event.kind!r}")
        except GameOver:
            raise ReplayDivergence(f"event {event.seq}: event after terminal state") from None
        except (KeyError, ValueError) as exc:
            if isinstance(exc, ReplayDivergence):
                raise
            raise ReplayDivergence(f"event {event.seq}: bad payload: {exc}") from None
        _check(event.at_game_time == state.time_remaining, event.seq,
               f"countdown: log {event.at_game_time}, engine {state.time_remaining}")
    return state


@dataclass(frozen=True)
class SessionMetrics:
    accuracy: float | None              # None when no eat/avoid decision happened
    false_positive_count: int
    false_negative_count: int
    teacher_ask_count: int
    mean_time_per_decision: float | None
    final_score: int
    final_phase: Phase

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "false_positive_count": self.false_positive_count,
            "false_negative_count": self.false_negative_count,
            "teacher_ask_count": self.teacher_ask_count,
            "mean_time_per_decision": self.mean_time_per_decision,
            "final_score": self.final_score,
            "final_phase": self.final_phase.value,
        }


def metrics(log: EventLog, decks: DeckResolver | None = None) -> SessionMetrics:
    """Learner metrics derived from the log alone (replay validates it first).

    Decision time counts every ticked second up to the last acted event:
    thinking time before the first action belongs to that decision, idle
    time after the final action belongs to none.
    """
    final_state = replay(log, decks)

    correct = fp = fn = asks = 0
    decided_seconds = 0
    pending_seconds = 0
    for event in log:
        if event.kind == KIND_TICKED:
            pending_seconds += event.payload["elapsed"]
        elif event.kind == KIND_ACTED:
            decided_seconds += pending_seconds
            pending_seconds = 0
            kind = OutcomeKind(event.payload["outcome"])
            if kind in CORRECT_KINDS:
                correct += 1
            elif kind is OutcomeKind.FALSE_POSITIVE:
                fp += 1
            elif kind is OutcomeKind.FALSE_NEGATIVE:
                fn += 1
            else:
                asks += 1

    decisions = correct + fp + fn
    last = log.events[-1]
    if last.kind == KIND_ENDED:
        final_score = last.payload["score"]
        final_phase = Phase(last.payload["phase"])
    else:
        final_score = final_state.score
        final_phase = final_state.phase
    return SessionMetrics(
        accuracy=correct / decisions if decisions else None,
        false_positive_count=fp,
        false_negative_count=fn,
        teacher_ask_count=asks,
        mean_time_per_decision=decided_seconds / decisions if decisions else None,
        final_score=final_score,
        final_phase=final_phase,
    )
