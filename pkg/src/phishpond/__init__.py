"""Anti-phishing training game: URL rules, deck, engine, logs, bots, service.

The public surface re-exported here is the supported API; everything else
is internal. A game is a pure function of (config, deck, seed, events),
so any session can be replayed bit-for-bit from its event log.
"""

from .bots import POLICY_NAMES, RunSummary, make_policy, run_session, simulate, win_rate
from .deck import (
    Deck,
    DeckParseError,
    DeckValidationError,
    Truth,
    WormCard,
    arrange,
    builtin_deck,
    builtin_registry,
    load_deck,
    serialize_deck,
    validate_deck,
)
from .engine import (
    Action,
    GameConfig,
    GameOver,
    GameState,
    Outcome,
    OutcomeKind,
    Phase,
    RoundView,
    apply_action,
    new_game,
    tick,
    view,
)
from .rng import XorShift64Star, fisher_yates
from .rules import (
    BrandEntry,
    BrandRegistry,
    Label,
    RuleId,
    UnknownDomain,
    Verdict,
    classify,
    edit_distance,
    label_for,
    tip_for,
)
from .telemetry import (
    EventLog,
    RecordedSession,
    ReplayDivergence,
    SessionEvent,
    SessionMetrics,
    metrics,
    parse,
    replay,
    serialize,
)
from .urls import ParsedUrl, SuffixTable, UrlError, parse_url, registrable_domain

__all__ = [
    "Action",
    "BrandEntry",
    "BrandRegistry",
    "Deck",
    "DeckParseError",
    "DeckValidationError",
    "EventLog",
    "GameConfig",
    "GameOver",
    "GameState",
    "Label",
    "Outcome",
    "OutcomeKind",
    "ParsedUrl",
    "Phase",
    "POLICY_NAMES",
    "RecordedSession",
    "ReplayDivergence",
    "RoundView",
    "RuleId",
    "RunSummary",
    "SessionEvent",
    "SessionMetrics",
    "SuffixTable",
    "Truth",
    "UnknownDomain",
    "UrlError",
    "Verdict",
    "WormCard",
    "XorShift64Star",
    "apply_action",
    "arrange",
    "builtin_deck",
    "builtin_registry",
    "classify",
    "edit_distance",
    "fisher_yates",
    "label_for",
    "load_deck",
    "make_policy",
    "metrics",
    "new_game",
    "parse",
    "parse_url",
    "registrable_domain",
    "replay",
    "run_session",
    "serialize",
    "serialize_deck",
    "simulate",
    "tick",
    "tip_for",
    "validate_deck",
    "view",
    "win_rate",
]
