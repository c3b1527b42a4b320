"""Headless bot policies and the simulation harness.

Bots exist to reproduce the game's boundary behaviour on a desk: the
oracle bot establishes the achievable maximum, always-eat walks into every
fake worm, and the random bot generates varied but fully reproducible
sessions for replay testing. Bots run against the engine directly and may
therefore see truth labels; the human-facing clients never can.
"""

from __future__ import annotations

from dataclasses import dataclass

from .deck import Deck, Truth
from .engine import Action, GameConfig, GameState, Phase
from .rng import XorShift64Star
from .rules import RuleId, label_for, tip_for, Label
from .telemetry import RecordedSession

POLICY_NAMES = ("oracle", "random", "always_eat", "teacher_first")

_RULE_FOR_TIP = {tip_for(rule): rule for rule in RuleId}


class BotPolicy:
    """One action per call; stateless apart from an optional RNG."""

    def choose(self, state: GameState) -> Action:
        raise NotImplementedError


class OraclePolicy(BotPolicy):
    """Always correct: reads the hidden truth label."""

    def choose(self, state: GameState) -> Action:
        return Action.EAT if state.current_card.truth is Truth.GOOD else Action.AVOID


class AlwaysEatPolicy(BotPolicy):
    def choose(self, state: GameState) -> Action:
        return Action.EAT


class RandomPolicy(BotPolicy):
    """Uniform over eat/avoid/ask, driven by the pinned xorshift64* stream."""

    def __init__(self, seed: int):
        self._rng = XorShift64Star(seed)

    def choose(self, state: GameState) -> Action:
        return (Action.EAT, Action.AVOID, Action.ASK_TEACHER)[self._rng.below(3)]


class TeacherFirstPolicy(BotPolicy):
    """Ask once per round, then act on what the tip teaches.

    The tip names a rule; the rule decides legit vs phishing. Tips that map
    to no known rule (possible in custom decks) are treated as warnings.
    """

    def choose(self, state: GameState) -> Action:
        if not state.tip_shown_this_round:
            return Action.ASK_TEACHER
        rule = _RULE_FOR_TIP.get(state.current_card.tip)
        if rule is not None and label_for(rule) is Label.LEGIT:
            return Action.EAT
        return Action.AVOID


def make_policy(name: str, seed: int) -> BotPolicy:
    if name == "oracle":
        return OraclePolicy()
    if name == "random":
        return RandomPolicy(seed)
    if name == "always_eat":
        return AlwaysEatPolicy()
    if name == "teacher_first":
        return TeacherFirstPolicy()
    raise ValueError(f"unknown policy {name!r} (choose from {', '.join(POLICY_NAMES)})")


def run_session(config: GameConfig, deck: Deck, seed: int, policy: BotPolicy,
                decision_time: int, sink=None) -> RecordedSession:
    """Play one full session: tick ``decision_time``, act, repeat until terminal.

    Always terminates: every action either consumes a round or charges the
    teacher cost, so time or rounds run out.
    """
    session = RecordedSession(config, deck, seed, sink=sink)
    while session.state.phase is Phase.IN_ROUND:
        session.tick(decision_time)
        if session.state.phase is not Phase.IN_ROUND:
            break
        session.act(policy.choose(session.state))
    session.finish()
    return session


@dataclass(frozen=True)
class RunSummary:
    seed: int
    score: int
    phase: Phase
    lives: int
    time_remaining: int

    def to_dict(self) -> dict:
        return {"seed": self.seed, "score": self.score, "phase": self.phase.value,
                "lives": self.lives, "time_remaining": self.time_remaining}


def simulate(policy_name: str, seed: int, runs: int, decision_time: int,
             deck: Deck, config: GameConfig | None = None,
             sink_factory=None) -> list[RunSummary]:
    """Run ``runs`` sessions with per-run seed ``seed + i`` (mod 2^64).

    ``sink_factory(run_seed)``, when given, supplies a write-through sink
    for each run's event log.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    config = config or GameConfig()
    summaries = []
    for i in range(runs):
        run_seed = (seed + i) & ((1 << 64) - 1)
        policy = make_policy(policy_name, run_seed)
        sink = sink_factory(run_seed) if sink_factory else None
        session = run_session(config, deck, run_seed, policy, decision_time, sink=sink)
        s = session.state
        summaries.append(RunSummary(seed=run_seed, score=s.score, phase=s.phase,
                                    lives=s.lives, time_remaining=s.time_remaining))
    return summaries


def win_rate(summaries: list[RunSummary]) -> float:
    return sum(1 for s in summaries if s.phase is Phase.WON) / len(summaries)
