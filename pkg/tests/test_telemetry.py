"""Event log format, replay validation, and metrics.

The replay tests mutate serialized logs field by field and assert the
replayer rejects every tampered variant; the metrics tests recompute the
numbers from the raw events with independent arithmetic.
"""

import json
from pathlib import Path

from hypothesis import given, settings
from hypothesis import strategies as st

import pytest

from phishpond.bots import make_policy, run_session
from phishpond.deck import Deck, builtin_deck
from phishpond.engine import Action, GameConfig, Phase
from phishpond.telemetry import (
    KIND_ACTED,
    KIND_ENDED,
    KIND_GAME_STARTED,
    KIND_TICKED,
    LOG_EXTENSION,
    EventLog,
    LogParseError,
    RecordedSession,
    ReplayDivergence,
    SequenceGap,
    SessionEvent,
    UnknownDeck,
    metrics,
    parse,
    replay,
    serialize,
)

GOLDEN_LOG = Path(__file__).parent / "golden" / "perfect_play.phlog"


def perfect_session(seed=42, decision_time=10):
    return run_session(GameConfig(), builtin_deck(), seed,
                       make_policy("oracle", seed), decision_time)


class TestWireFormat:
    def test_event_line_shape(self):
        event = SessionEvent(3, 590, KIND_TICKED, {"elapsed": 10})
        assert event.to_json_line() == '{"seq":3,"t":590,"kind":"ticked","payload":{"elapsed":10}}'

    def test_key_order_is_stable(self):
        line = SessionEvent(0, 1, KIND_TICKED, {}).to_json_line()
        assert line.index('"seq"') < line.index('"t"') < line.index('"kind"') \
            < line.index('"payload"')

    def test_serialize_is_newline_terminated_jsonl(self):
        text = serialize(perfect_session().log)
        assert text.endswith("\n")
        lines = text.splitlines()
        assert len(lines) == 22
        for line in lines:
            json.loads(line)

    def test_non_ascii_survives(self):
        event = SessionEvent(0, 600, KIND_GAME_STARTED, {"deck": "pöndé",
                                                         "seed": 0, "config": {}})
        assert "pöndé" in event.to_json_line()

    def test_log_extension(self):
        assert LOG_EXTENSION == ".phlog"

    def test_first_line_carries_full_config(self):
        first = json.loads(serialize(perfect_session().log).splitlines()[0])
        assert first["kind"] == KIND_GAME_STARTED
        assert first["payload"]["config"] == {
            "initial_time": 600, "initial_lives": 5, "points_per_correct": 1,
            "teacher_cost": 100, "error_time_penalty": 100,
            "error_life_penalty": 1, "deck_size": 10,
        }
        assert first["payload"]["deck"] == "builtin"
        assert first["payload"]["seed"] == 42


class TestEventLog:
    def test_sequence_must_be_dense(self):
        log = EventLog()
        log.record(SessionEvent(0, 600, KIND_GAME_STARTED, {}))
        with pytest.raises(SequenceGap):
            log.record(SessionEvent(2, 600, KIND_TICKED, {}))

    def test_first_event_must_open_the_game(self):
        with pytest.raises(ValueError, match="game_started"):
            EventLog().record(SessionEvent(0, 600, KIND_TICKED, {}))

    def test_parse_round_trip(self):
        log = perfect_session().log
        assert parse(serialize(log)) == log

    def test_parse_skips_blank_lines(self):
        text = serialize(perfect_session().log).replace("\n", "\n\n", 3)
        assert len(parse(text)) == 22

    @pytest.mark.parametrize("bad", [
        "not json\n",
        '{"seq":0,"kind":"game_started","payload":{}}\n',          # missing t
        '{"seq":0,"t":600,"kind":"nope","payload":{}}\n',          # unknown kind
        '{"seq":0,"t":600,"kind":"ticked","payload":[]}\n',        # payload not object
        '{"seq":5,"t":600,"kind":"game_started","payload":{}}\n',  # seq gap
    ])
    def test_parse_rejects_malformed_documents(self, bad):
        with pytest.raises(LogParseError):
            parse(bad)


class TestRecordedSession:
    def test_records_one_event_per_transition(self):
        session = RecordedSession(GameConfig(), builtin_deck(), 1)
        session.tick(5)
        session.act(Action.ASK_TEACHER)
        kinds = [e.kind for e in session.log]
        assert kinds == [KIND_GAME_STARTED, KIND_TICKED, KIND_ACTED]

    def test_event_time_is_post_event(self):
        session = RecordedSession(GameConfig(), builtin_deck(), 1)
        session.tick(7)
        assert session.log.events[-1].at_game_time == 593
        session.act(Action.ASK_TEACHER)
        assert session.log.events[-1].at_game_time == 493

    def test_finish_appends_ended_once(self):
        session = perfect_session()
        assert session.finished
        n = len(session.log)
        session.finish()
        assert len(session.log) == n
        last = session.log.events[-1]
        assert last.kind == KIND_ENDED
        assert last.payload == {"phase": "won", "score": 10, "lives": 5}

    def test_finish_refuses_live_sessions_without_phase(self):
        session = RecordedSession(GameConfig(), builtin_deck(), 1)
        with pytest.raises(ValueError):
            session.finish()

    def test_forfeit_records_lost_while_live(self):
        session = RecordedSession(GameConfig(), builtin_deck(), 1)
        session.act(Action.EAT)
        session.finish(Phase.LOST)
        last = session.log.events[-1]
        assert last.payload["phase"] == "lost"
        # engine state was still live; replay must accept this log
        replay(session.log)

    def test_write_through_sink_sees_every_line(self):
        lines = []
        session = RecordedSession(GameConfig(), builtin_deck(), 3, sink=lines.append)
        session.tick(1)
        session.act(Action.ASK_TEACHER)
        assert "".join(lines) == serialize(session.log)


class TestReplay:
    def test_replay_reproduces_the_final_state(self):
        session = perfect_session()
        final = replay(session.log)
        assert final.phase is Phase.WON
        assert final.score == 10
        assert final.lives == 5
        assert final.time_remaining == 500

    def test_replay_equals_live_state(self):
        for seed in range(5):
            session = run_session(GameConfig(), builtin_deck(), seed,
                                  make_policy("random", seed), 7)
            assert replay(session.log) == session.state

    def test_replay_accepts_logs_without_ended(self):
        session = RecordedSession(GameConfig(), builtin_deck(), 1)
        session.tick(30)
        state = replay(session.log)
        assert state.time_remaining == 570

    def test_unknown_deck_name(self):
        session = perfect_session()
        with pytest.raises(UnknownDeck):
            replay(session.log, decks={})

    def test_deck_resolver_can_be_a_callable(self):
        session = perfect_session()
        final = replay(session.log, decks=lambda name: builtin_deck())
        assert final.phase is Phase.WON

    def test_custom_deck_round_trip(self):
        cards = builtin_deck().cards[:4]
        deck = Deck(name="mini", cards=cards)
        config = GameConfig(deck_size=4)
        session = run_session(config, deck, 9, make_policy("oracle", 9), 5)
        final = replay(session.log, decks={"mini": deck})
        assert final.phase is Phase.WON
        assert final.score == 4


def tampered_documents(session):
    """Yield (description, document) pairs, each corrupted in one field."""
    text = serialize(session.log)
    lines = text.splitlines()

    doc = lines[:]
    obj = json.loads(doc[2])
    assert obj["kind"] == KIND_ACTED
    obj["payload"]["outcome"] = "false_positive" \
        if obj["payload"]["outcome"] != "false_positive" else "correct_eat"
    doc[2] = json.dumps(obj, separators=(",", ":"))
    yield "outcome flipped", "\n".join(doc) + "\n"

    doc = lines[:]
    obj = json.loads(doc[1])
    obj["t"] += 1
    doc[1] = json.dumps(obj, separators=(",", ":"))
    yield "countdown nudged", "\n".join(doc) + "\n"

    doc = lines[:]
    obj = json.loads(doc[2])
    obj["payload"]["url"] = "www.paypa1.com.tampered.com"
    doc[2] = json.dumps(obj, separators=(",", ":"))
    yield "url swapped", "\n".join(doc) + "\n"

    doc = lines[:]
    obj = json.loads(doc[2])
    obj["payload"]["round_index"] += 1
    doc[2] = json.dumps(obj, separators=(",", ":"))
    yield "round index shifted", "\n".join(doc) + "\n"

    doc = lines[:]
    obj = json.loads(doc[0])
    obj["payload"]["seed"] += 1
    doc[0] = json.dumps(obj, separators=(",", ":"))
    yield "seed changed", "\n".join(doc) + "\n"

    doc = lines[:2] + lines[3:]
    for i in range(2, len(doc)):
        obj = json.loads(doc[i])
        obj["seq"] = i
        doc[i] = json.dumps(obj, separators=(",", ":"))
    yield "action dropped, seqs patched", "\n".join(doc) + "\n"


class TestTamperDetection:
    def test_every_tampered_variant_is_rejected(self):
        session = perfect_session()
        for description, document in tampered_documents(session):
            with pytest.raises(ReplayDivergence):
                replay(parse(document))
            # and the original still replays cleanly
        replay(session.log)

    def test_event_after_terminal_state(self):
        session = run_session(GameConfig(), builtin_deck(), 1,
                              make_policy("always_eat", 1), 1)
        lines = serialize(session.log).splitlines()
        extra = json.loads(lines[-2])      # a live-game event to duplicate
        obj = dict(extra)
        obj["seq"] = len(lines)
        doc = "\n".join(lines + [json.dumps(obj, separators=(",", ":"))]) + "\n"
        with pytest.raises(ReplayDivergence):
            replay(parse(doc))

    def test_ended_must_be_last(self):
        session = perfect_session()
        lines = serialize(session.log).splitlines()
        ended = json.loads(lines[-1])
        tick_line = json.loads(lines[1])
        ended["seq"], tick_line["seq"] = len(lines) - 2, len(lines) - 1
        doc = lines[:-1]
        doc[-1] = json.dumps(ended, separators=(",", ":"))
        doc.append(json.dumps(tick_line, separators=(",", ":")))
        with pytest.raises((ReplayDivergence, LogParseError)):
            replay(parse("\n".join(doc) + "\n"))


class TestGoldenLog:
    def test_frozen_bytes_reproduce_exactly(self):
        session = perfect_session(seed=42, decision_time=10)
        assert serialize(session.log) == GOLDEN_LOG.read_text(encoding="utf-8")

    def test_frozen_log_replays_to_a_win(self):
        final = replay(parse(GOLDEN_LOG.read_text(encoding="utf-8")))
        assert final.phase is Phase.WON
        assert final.score == 10
        assert final.time_remaining == 500


class TestMetrics:
    def test_perfect_session_metrics(self):
        m = metrics(perfect_session().log)
        assert m.accuracy == 1.0
        assert m.false_positive_count == 0
        assert m.false_negative_count == 0
        assert m.teacher_ask_count == 0
        assert m.mean_time_per_decision == 10.0
        assert m.final_score == 10
        assert m.final_phase is Phase.WON

    def test_mixed_session_metrics(self):
        session = RecordedSession(GameConfig(), builtin_deck(), 42)
        session.tick(4)
        session.act(Action.ASK_TEACHER)     # 4s thinking charged to next decision
        session.tick(6)
        session.act(Action.EAT)             # seed 42 opens with a good card: correct
        session.tick(9)
        session.act(Action.EAT)             # second card is bad: false negative
        session.tick(30)                    # trailing idle time, charged to nobody
        m = metrics(session.log)
        assert m.teacher_ask_count == 1
        assert m.false_negative_count == 1
        assert m.false_positive_count == 0
        assert m.accuracy == 0.5
        assert m.mean_time_per_decision == (4 + 6 + 9) / 2
        assert m.final_phase is Phase.IN_ROUND

    def test_no_decisions_yields_null_rates(self):
        session = RecordedSession(GameConfig(), builtin_deck(), 1)
        session.tick(10)
        m = metrics(session.log)
        assert m.accuracy is None
        assert m.mean_time_per_decision is None
        assert m.to_dict()["accuracy"] is None

    def test_metrics_validate_the_log_first(self):
        session = perfect_session()
        description, document = next(iter(tampered_documents(session)))
        with pytest.raises(ReplayDivergence):
            metrics(parse(document))

    def test_forfeited_session_reports_lost(self):
        session = RecordedSession(GameConfig(), builtin_deck(), 1)
        session.act(Action.EAT)
        session.finish(Phase.LOST)
        m = metrics(session.log)
        assert m.final_phase is Phase.LOST

    def test_to_dict_is_json_serializable(self):
        payload = metrics(perfect_session().log).to_dict()
        json.dumps(payload)
        assert payload["final_phase"] == "won"


@given(st.integers(min_value=0, max_value=(1 << 64) - 1),
       st.sampled_from(["oracle", "random", "always_eat", "teacher_first"]),
       st.integers(min_value=0, max_value=80))
@settings(max_examples=60, deadline=None)
def test_any_bot_session_round_trips(seed, policy, decision_time):
    session = run_session(GameConfig(), builtin_deck(), seed,
                          make_policy(policy, seed), decision_time)
    text = serialize(session.log)
    assert parse(text) == session.log
    assert replay(parse(text)) == session.state
