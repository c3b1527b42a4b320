"""Deterministic play-loop state machine.

The engine never advances time on its own: the host (CLI, service, UI,
or a test) calls :func:`tick` with elapsed whole seconds and
:func:`apply_action` with the player's choice, and both return fresh
states. That keeps every session a pure function of (config, deck, seed,
event sequence) and makes sessions replayable from their logs.

Economy, with the default config: a correct eat or avoid earns 1 point; a
wrong call costs 100 seconds and 1 life; asking the teacher costs 100
seconds and reveals the current card's tip without advancing the round.
The player wins by finishing every round with at least one life and one
second left, and loses the moment lives or time reach zero.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .deck import Deck, Truth, WormCard, arrange

FEEDBACK_CORRECT = "WOW well done"
FEEDBACK_WRONG = "Oh Try again"
FEEDBACK_TIP = "The teacher fish shares a tip"

_MASK64 = (1 << 64) - 1


class Phase(enum.Enum):
    IN_ROUND = "in_round"
    WON = "won"
    LOST = "lost"


class Action(enum.Enum):
    EAT = "eat"
    AVOID = "avoid"
    ASK_TEACHER = "ask_teacher"


class OutcomeKind(enum.Enum):
    CORRECT_EAT = "correct_eat"
    CORRECT_AVOID = "correct_avoid"
    FALSE_NEGATIVE = "false_negative"    # ate a bad worm
    FALSE_POSITIVE = "false_positive"    # rejected a good worm
    TIP_GIVEN = "tip_given"


ERROR_KINDS = frozenset({OutcomeKind.FALSE_NEGATIVE, OutcomeKind.FALSE_POSITIVE})
CORRECT_KINDS = frozenset({OutcomeKind.CORRECT_EAT, OutcomeKind.CORRECT_AVOID})


class GameOver(RuntimeError):
    """An operation that needs a live round was called on a terminal state."""


class DeckTooSmall(ValueError):
    """The deck has fewer cards than config.deck_size."""


@dataclass(frozen=True)
class GameConfig:
    initial_time: int = 600            # seconds
    initial_lives: int = 5
    points_per_correct: int = 1
    teacher_cost: int = 100            # seconds per ask
    error_time_penalty: int = 100      # seconds per wrong call
    error_life_penalty: int = 1        # lives per wrong call
    deck_size: int = 10

    def validate(self) -> None:
        positive = ("initial_time", "initial_lives", "points_per_correct",
                    "teacher_cost", "deck_size")
        for name in positive:
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        if self.error_time_penalty < 0 or self.error_life_penalty < 0:
            raise ValueError("error penalties must be >= 0")


@dataclass(frozen=True)
class GameState:
    config: GameConfig
    arranged_cards: tuple[WormCard, ...]
    round_index: int
    score: int
    lives: int
    time_remaining: int
    phase: Phase
    tip_shown_this_round: bool
    seed: int

    @property
    def current_card(self) -> WormCard:
        if self.phase is not Phase.IN_ROUND:
            raise GameOver(f"no current card: game is {self.phase.value}")
        return self.arranged_cards[self.round_index]

    @property
    def total_rounds(self) -> int:
        return len(self.arranged_cards)


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    feedback: str
    tip: str | None
    score_delta: int
    time_delta: int
    lives_delta: int


@dataclass(frozen=True)
class RoundView:
    """What the player may see: never the card's truth label or focus."""

    url: str
    round_index: int
    score: int
    lives: int
    time_remaining: int
    tip: str | None
    total_rounds: int


def new_game(config: GameConfig, deck: Deck, seed: int) -> GameState:
    """Fresh session over the first ``deck_size`` cards of ``arrange(deck, seed)``."""
    config.validate()
    if len(deck.cards) < config.deck_size:
        raise DeckTooSmall(
            f"deck {deck.name!r} has {len(deck.cards)} cards, need {config.deck_size}")
    seed &= _MASK64
    cards = tuple(arrange(deck, seed)[:config.deck_size])
    return GameState(
        config=config,
        arranged_cards=cards,
        round_index=0,
        score=0,
        lives=config.initial_lives,
        time_remaining=config.initial_time,
        phase=Phase.IN_ROUND,
        tip_shown_this_round=False,
        seed=seed,
    )


def _settle_phase(s: GameState) -> GameState:
    # Loss is checked first: running out on the final round is still a loss.
    if s.lives <= 0 or s.time_remaining <= 0:
        return replace(s, phase=Phase.LOST)
    if s.round_index == len(s.arranged_cards):
        return replace(s, phase=Phase.WON)
    return s


def apply_action(s: GameState, a: Action) -> tuple[GameState, Outcome]:
    """Apply one player action; returns the successor state and its outcome.

    Eat/Avoid always consume the round, right or wrong; AskTeacher reveals
    the tip, charges ``teacher_cost`` seconds and leaves the round open, so
    repeated asks keep charging.
    """
    if s.phase is not Phase.IN_ROUND:
        raise GameOver(f"cannot act: game is {s.phase.value}")
    cfg = s.config
    card = s.current_card

    if a is Action.ASK_TEACHER:
        outcome = Outcome(
            kind=OutcomeKind.TIP_GIVEN,
            feedback=FEEDBACK_TIP,
            tip=card.tip,
            score_delta=0,
            time_delta=-cfg.teacher_cost,
            lives_delta=0,
        )
        nxt = replace(s, time_remaining=s.time_remaining - cfg.teacher_cost,
                      tip_shown_this_round=True)
        return _settle_phase(nxt), outcome

    correct = (a is Action.EAT) == (card.truth is Truth.GOOD)
    if correct:
        kind = OutcomeKind.CORRECT_EAT if a is Action.EAT else OutcomeKind.CORRECT_AVOID
        outcome = Outcome(kind=kind, feedback=FEEDBACK_CORRECT, tip=None,
                          score_delta=cfg.points_per_correct, time_delta=0, lives_delta=0)
        nxt = replace(s, score=s.score + cfg.points_per_correct,
                      round_index=s.round_index + 1, tip_shown_this_round=False)
    else:
        kind = OutcomeKind.FALSE_NEGATIVE if a is Action.EAT else OutcomeKind.FALSE_POSITIVE
        new_lives = max(0, s.lives - cfg.error_life_penalty)
        outcome = Outcome(kind=kind, feedback=FEEDBACK_WRONG, tip=None,
                          score_delta=0, time_delta=-cfg.error_time_penalty,
                          lives_delta=new_lives - s.lives)
        nxt = replace(s, lives=new_lives,
                      time_remaining=s.time_remaining - cfg.error_time_penalty,
                      round_index=s.round_index + 1, tip_shown_this_round=False)
    return _settle_phase(nxt), outcome


def tick(s: GameState, elapsed: int) -> GameState:
    """Advance the countdown by ``elapsed`` whole seconds (clamped at zero)."""
    if s.phase is not Phase.IN_ROUND:
        raise GameOver(f"cannot tick: game is {s.phase.value}")
    if elapsed < 0:
        raise ValueError("elapsed must be >= 0")
    remaining = s.time_remaining - elapsed
    if remaining <= 0:
        return replace(s, time_remaining=0, phase=Phase.LOST)
    return replace(s, time_remaining=remaining)


def view(s: GameState) -> RoundView:
    """Player-facing snapshot of the live round."""
    card = s.current_card
    return RoundView(
        url=card.url,
        round_index=s.round_index,
        score=s.score,
        lives=s.lives,
        time_remaining=s.time_remaining,
        tip=card.tip if s.tip_shown_this_round else None,
        total_rounds=s.total_rounds,
    )
