import dataclasses

from hypothesis import given, settings
from hypothesis import strategies as st

import pytest

from phishpond.bots import (
    POLICY_NAMES,
    AlwaysEatPolicy,
    OraclePolicy,
    RandomPolicy,
    TeacherFirstPolicy,
    make_policy,
    run_session,
    simulate,
    win_rate,
)
from phishpond.deck import Truth, builtin_deck
from phishpond.engine import Action, GameConfig, Phase, new_game
from phishpond.rng import XorShift64Star

DECK = builtin_deck()


class TestPolicies:
    def test_policy_names_are_closed(self):
        assert POLICY_NAMES == ("oracle", "random", "always_eat", "teacher_first")
        for name in POLICY_NAMES:
            assert make_policy(name, 1) is not None

    def test_unknown_policy_rejected(self):
        with pytest.raises(ValueError):
            make_policy("psychic", 1)

    def test_oracle_reads_the_truth_label(self):
        state = new_game(GameConfig(), DECK, 42)
        policy = OraclePolicy()
        choice = policy.choose(state)
        expected = Action.EAT if state.current_card.truth is Truth.GOOD else Action.AVOID
        assert choice is expected

    def test_always_eat(self):
        state = new_game(GameConfig(), DECK, 42)
        assert AlwaysEatPolicy().choose(state) is Action.EAT

    def test_random_follows_the_pinned_stream(self):
        state = new_game(GameConfig(), DECK, 42)
        policy = RandomPolicy(seed=99)
        rng = XorShift64Star(99)
        expected = [(Action.EAT, Action.AVOID, Action.ASK_TEACHER)[rng.below(3)]
                    for _ in range(6)]
        assert [policy.choose(state) for _ in range(6)] == expected

    def test_teacher_first_asks_then_acts(self):
        state = new_game(GameConfig(), DECK, 42)
        policy = TeacherFirstPolicy()
        assert policy.choose(state) is Action.ASK_TEACHER
        shown = dataclasses.replace(state, tip_shown_this_round=True)
        followup = policy.choose(shown)
        assert followup in (Action.EAT, Action.AVOID)
        # the tip on this card teaches a legitimacy rule, so the bot eats
        assert followup is (Action.EAT if state.current_card.truth is Truth.GOOD
                            else Action.AVOID)


class TestRunSession:
    def test_oracle_wins_cleanly(self):
        session = run_session(GameConfig(), DECK, 42, OraclePolicy(), 10)
        s = session.state
        assert (s.phase, s.score, s.lives, s.time_remaining) == (Phase.WON, 10, 5, 500)
        assert session.finished

    def test_always_eat_loses_on_lives(self):
        session = run_session(GameConfig(), DECK, 42, AlwaysEatPolicy(), 1)
        s = session.state
        assert s.phase is Phase.LOST
        assert s.lives == 0
        assert s.time_remaining > 0     # the clock was not the cause

    def test_teacher_first_runs_out_of_time(self):
        # ten asks would cost 1000 seconds; the budget is 600
        session = run_session(GameConfig(), DECK, 42, TeacherFirstPolicy(), 1)
        assert session.state.phase is Phase.LOST
        assert session.state.lives > 0

    def test_zero_decision_time_still_terminates(self):
        for name in POLICY_NAMES:
            session = run_session(GameConfig(), DECK, 5, make_policy(name, 5), 0)
            assert session.state.phase in (Phase.WON, Phase.LOST)

    def test_log_ends_with_ended(self):
        session = run_session(GameConfig(), DECK, 3, OraclePolicy(), 10)
        assert session.log.events[-1].kind == "ended"


class TestSimulate:
    def test_per_run_seeds_increment(self):
        summaries = simulate("oracle", 100, 5, 10, DECK)
        assert [s.seed for s in summaries] == [100, 101, 102, 103, 104]

    def test_seed_wraps_at_64_bits(self):
        summaries = simulate("oracle", (1 << 64) - 1, 2, 10, DECK)
        assert [s.seed for s in summaries] == [(1 << 64) - 1, 0]

    def test_rejects_zero_runs(self):
        with pytest.raises(ValueError):
            simulate("oracle", 0, 0, 10, DECK)

    def test_oracle_sweep_always_wins_under_the_budget(self):
        for decision_time in (1, 10, 59):
            summaries = simulate("oracle", 0, 10, decision_time, DECK)
            assert win_rate(summaries) == 1.0, decision_time

    def test_oracle_loses_at_sixty_seconds_per_round(self):
        # 10 rounds x 60s == the whole budget; the last tick hits zero
        summaries = simulate("oracle", 0, 5, 60, DECK)
        assert win_rate(summaries) == 0.0
        assert all(s.time_remaining == 0 for s in summaries)

    def test_identical_inputs_identical_summaries(self):
        a = simulate("random", 7, 20, 9, DECK)
        b = simulate("random", 7, 20, 9, DECK)
        assert a == b

    def test_sink_factory_receives_each_run(self):
        captured = {}

        def factory(run_seed):
            lines = captured.setdefault(run_seed, [])
            return lines.append

        simulate("oracle", 50, 3, 10, DECK, sink_factory=factory)
        assert sorted(captured) == [50, 51, 52]
        for lines in captured.values():
            assert lines[0].startswith('{"seq":0')
            assert '"ended"' in lines[-1]

    def test_summary_dict_shape(self):
        summary = simulate("oracle", 1, 1, 10, DECK)[0]
        assert summary.to_dict() == {"seed": 1, "score": 10, "phase": "won",
                                     "lives": 5, "time_remaining": 500}


@given(st.integers(min_value=0, max_value=(1 << 64) - 1))
@settings(max_examples=50, deadline=None)
def test_oracle_outcome_depends_only_on_arithmetic(seed):
    """Win iff deck_size x decision_time fits in the budget; the seed only
    permutes the cards."""
    session = run_session(GameConfig(), DECK, seed, OraclePolicy(), 59)
    assert session.state.phase is Phase.WON
    session = run_session(GameConfig(), DECK, seed, OraclePolicy(), 60)
    assert session.state.phase is Phase.LOST
