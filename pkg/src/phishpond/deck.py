"""The game's URL corpus: worm cards, deck files, and round ordering.

The built-in deck is the ten-URL training corpus with three documented
reconciliations (kept here, next to the data, so nobody "fixes" them back):

* "www ebay-security.com" is taken as "www.ebay-security.com" (the printed
  space is a typo) and labelled Bad: its whole point is the scam-warning
  tip, and the hyphenated brand rule is what fires on it.
* The misspelled-PayPal card uses "www.paypa1.com" (digit one for ell); the
  corpus as printed shows the correctly spelled domain, which would teach
  nothing.
* "www.online.lloydsbank.co.uk" is labelled Good: its registrable domain is
  correctly spelled and well-known, and relabelling restores the mandated
  five-good/five-bad balance.

Every card's tip equals the tip of the rule that actually fires on its URL,
so the teacher fish never contradicts the classifier.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .rng import XorShift64Star, fisher_yates
from .rules import (
    DEFAULT_SECURITY_KEYWORDS,
    BrandEntry,
    BrandRegistry,
    RuleId,
    tip_for,
)
from .urls import BUILTIN_SUFFIXES, SuffixTable, UrlError, parse_url

BUILTIN_DECK_NAME = "builtin"
MIN_EXTERNAL_DECK_SIZE = 2
ALLOWED_TIERS = (1, 2, 3)

_DECK_KEYS = {"name", "suffixes", "brands", "keywords", "cards"}
_CARD_KEYS = {"url", "truth", "focus", "tip", "tier"}
_BRAND_KEYS = {"name", "domains"}


class Truth(enum.Enum):
    GOOD = "good"   # legitimate URL -> real worm
    BAD = "bad"     # phishing URL -> fake worm


class DeckParseError(ValueError):
    """The document is not a well-formed deck file."""


class DeckValidationError(ValueError):
    """The document parsed but violates deck invariants."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class WormCard:
    url: str
    truth: Truth
    focus: str
    tip: str
    tier: int


def builtin_registry() -> BrandRegistry:
    """Exactly the brands the built-in corpus references."""
    return BrandRegistry(entries=(
        BrandEntry("nationwide", ("nationwide.co.uk",)),
        BrandEntry("smile", ("smile.co.uk",)),
        BrandEntry("halifax", ("halifax.co.uk",)),
        BrandEntry("barclays", ("barclays.co.uk",)),
        BrandEntry("lloydsbank", ("lloydsbank.co.uk",)),
        BrandEntry("paypal", ("paypal.com",)),
        BrandEntry("msn", ("msn.com",)),
        BrandEntry("ebay", ("ebay.com",)),
    ))


@dataclass(frozen=True)
class Deck:
    """An ordered card pool plus the classification context it plays under."""

    name: str
    cards: tuple[WormCard, ...]
    suffixes: SuffixTable = BUILTIN_SUFFIXES
    registry: BrandRegistry = field(default_factory=builtin_registry)
    keywords: frozenset[str] = DEFAULT_SECURITY_KEYWORDS


def builtin_deck() -> Deck:
    """The ten-card corpus in its original row order, reconciled as above.

    Tiers rank how much scrutiny a URL pattern demands: 1 = visually obvious
    (proper brand domains, all-numbers hosts), 2 = hyphen/keyword domains,
    3 = misspellings and embedded-address hosts that need careful reading.
    """
    g = Truth.GOOD
    b = Truth.BAD
    cards = (
        WormCard("nationwide.co.uk/default.htm", g, "Appropriate URL",
                 tip_for(RuleId.WELL_FORMED_KNOWN), 1),
        WormCard("http://147.46.236.5/PayPal/login.html", b, "IP address URL",
                 tip_for(RuleId.IP_HOST), 1),
        WormCard("www.paypa1.com", b, "Miss spelled URL",
                 tip_for(RuleId.MISSPELLED_BRAND), 3),
        WormCard("www.smile.co.uk/", g, "Appropriate URL",
                 tip_for(RuleId.WELL_FORMED_KNOWN), 1),
        WormCard("www.arguments.co.uk.myshop.com", b, "Sub domain URL",
                 tip_for(RuleId.EMBEDDED_BRAND), 3),
        WormCard("http://www.msn-verify.com/", b, "Similar and deceptive domains",
                 tip_for(RuleId.HYPHEN_BRAND), 2),
        WormCard("www.halifax.co.uk/aboutonline/home.asp", g, "Appropriate URL",
                 tip_for(RuleId.WELL_FORMED_KNOWN), 1),
        WormCard("www.ebay-security.com", b, "Similar and deceptive domains",
                 tip_for(RuleId.HYPHEN_BRAND), 2),
        WormCard("www.online.lloydsbank.co.uk", g, "Miss spelled URL",
                 tip_for(RuleId.WELL_FORMED_KNOWN), 3),
        WormCard("https://bank.barclays.co.uk/", g, "Appropriate URL",
                 tip_for(RuleId.HTTPS_WELL_FORMED), 1),
    )
    return Deck(name=BUILTIN_DECK_NAME, cards=cards)


def _validate_cards(cards: tuple[WormCard, ...], violations: list[str]) -> None:
    seen_urls = set()
    for i, card in enumerate(cards):
        where = f"card {i} ({card.url!r})"
        if card.url in seen_urls:
            violations.append(f"duplicate url {card.url!r}")
        seen_urls.add(card.url)
        try:
            parse_url(card.url)
        except UrlError as exc:
            violations.append(f"{where}: url does not parse: {exc}")
        if not card.tip:
            violations.append(f"{where}: missing tip")
        if card.tier not in ALLOWED_TIERS:
            violations.append(f"{where}: tier must be in {list(ALLOWED_TIERS)}, got {card.tier}")


def validate_deck(deck: Deck) -> list[str]:
    """Collected invariant violations; empty list means the deck is valid."""
    violations: list[str] = []
    if len(deck.cards) < MIN_EXTERNAL_DECK_SIZE:
        violations.append(f"deck too small: {len(deck.cards)} card(s), need at least {MIN_EXTERNAL_DECK_SIZE}")
    truths = [c.truth for c in deck.cards]
    if Truth.GOOD not in truths:
        violations.append("deck has no good card")
    if Truth.BAD not in truths:
        violations.append("deck has no bad card")
    _validate_cards(deck.cards, violations)
    return violations


def _require_keys(obj: dict, allowed: set[str], required: set[str], what: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise DeckParseError(f"unknown {what} key(s): {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise DeckParseError(f"missing {what} key(s): {sorted(missing)}")


def _parse_card(obj, index: int) -> WormCard:
    if not isinstance(obj, dict):
        raise DeckParseError(f"card {index} must be an object")
    _require_keys(obj, _CARD_KEYS, _CARD_KEYS, f"card {index}")
    try:
        truth = Truth(obj["truth"])
    except ValueError:
        raise DeckParseError(f"card {index}: truth must be \"good\" or \"bad\"") from None
    if not isinstance(obj["url"], str) or not isinstance(obj["focus"], str) \
            or not isinstance(obj["tip"], str):
        raise DeckParseError(f"card {index}: url, focus and tip must be strings")
    if not isinstance(obj["tier"], int) or isinstance(obj["tier"], bool):
        raise DeckParseError(f"card {index}: tier must be an integer")
    return WormCard(url=obj["url"], truth=truth, focus=obj["focus"],
                    tip=obj["tip"], tier=obj["tier"])


def _merge_brands(extra: list[BrandEntry]) -> BrandRegistry:
    # Deck-file brands extend the built-ins; a matching name overrides.
    merged = {e.name: e for e in builtin_registry().entries}
    for e in extra:
        merged[e.name] = e
    return BrandRegistry(entries=tuple(merged.values()))


def load_deck(document: str | bytes) -> Deck:
    """Parse and validate a UTF-8 JSON deck document.

    Raises :class:`DeckParseError` for malformed documents and
    :class:`DeckValidationError` (carrying all violations) for documents
    that parse but break an invariant.
    """
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DeckParseError(f"not UTF-8: {exc}") from None
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise DeckParseError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise DeckParseError("deck document must be a JSON object")
    _require_keys(data, _DECK_KEYS, {"name", "cards"}, "deck")

    if not isinstance(data["name"], str) or not data["name"]:
        raise DeckParseError("deck name must be a non-empty string")
    if not isinstance(data["cards"], list):
        raise DeckParseError("cards must be an array")
    cards = tuple(_parse_card(c, i) for i, c in enumerate(data["cards"]))

    suffixes = BUILTIN_SUFFIXES
    if "suffixes" in data:
        entries = data["suffixes"]
        if not isinstance(entries, list) or not all(isinstance(s, str) for s in entries):
            raise DeckParseError("suffixes must be an array of strings")
        try:
            suffixes = BUILTIN_SUFFIXES.with_extra(set(entries))
        except ValueError as exc:
            raise DeckParseError(str(exc)) from None

    registry = builtin_registry()
    if "brands" in data:
        if not isinstance(data["brands"], list):
            raise DeckParseError("brands must be an array")
        extra = []
        for i, b in enumerate(data["brands"]):
            if not isinstance(b, dict):
                raise DeckParseError(f"brand {i} must be an object")
            _require_keys(b, _BRAND_KEYS, _BRAND_KEYS, f"brand {i}")
            if not isinstance(b["name"], str) or not isinstance(b["domains"], list) \
                    or not all(isinstance(d, str) for d in b["domains"]):
                raise DeckParseError(f"brand {i}: name must be a string, domains an array of strings")
            extra.append(BrandEntry(b["name"], tuple(b["domains"])))
        try:
            registry = _merge_brands(extra)
        except ValueError as exc:
            raise DeckParseError(str(exc)) from None

    keywords = DEFAULT_SECURITY_KEYWORDS
    if "keywords" in data:
        entries = data["keywords"]
        if not isinstance(entries, list) or not all(isinstance(k, str) for k in entries):
            raise DeckParseError("keywords must be an array of strings")
        keywords = frozenset(entries)

    deck = Deck(name=data["name"], cards=cards, suffixes=suffixes,
                registry=registry, keywords=keywords)
    violations = validate_deck(deck)
    if violations:
        raise DeckValidationError(violations)
    return deck


def serialize_deck(deck: Deck) -> str:
    """Deck file document for ``deck``; ``load_deck`` round-trips it."""
    data = {
        "name": deck.name,
        "suffixes": sorted(deck.suffixes.suffixes),
        "brands": [
            {"name": e.name, "domains": list(e.domains)} for e in deck.registry.entries
        ],
        "keywords": sorted(deck.keywords),
        "cards": [
            {"url": c.url, "truth": c.truth.value, "focus": c.focus,
             "tip": c.tip, "tier": c.tier}
            for c in deck.cards
        ],
    }
    return json.dumps(data, indent=2) + "\n"


def arrange(deck: Deck, seed: int) -> list[WormCard]:
    """Deterministic round order: tiers ascending, shuffled within each tier.

    One xorshift64* generator seeded with ``seed`` drives the per-tier
    Fisher-Yates shuffles, consumed in ascending tier order, so the full
    permutation is a pure function of (deck, seed).
    """
    rng = XorShift64Star(seed)
    out: list[WormCard] = []
    for tier in sorted({c.tier for c in deck.cards}):
        group = [c for c in deck.cards if c.tier == tier]
        fisher_yates(group, rng)
        out.extend(group)
    return out
