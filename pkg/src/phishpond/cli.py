"""Terminal front door.

Five subcommands: ``classify`` (one URL, verdict on stdout, exit code is
the label), ``simulate`` (headless bot sessions), ``play`` (interactive
loop on stdin), ``deck validate``, and ``serve``. Classification exit
codes: 0 legit, 2 phishing, 3 no rule applies, 1 parse failure, so shell
pipelines can branch on the verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .bots import POLICY_NAMES, simulate, win_rate
from .deck import (
    Deck,
    DeckParseError,
    DeckValidationError,
    builtin_deck,
    load_deck,
    validate_deck,
)
from .engine import Action, GameConfig, Phase
from .rules import UnknownDomain, classify
from .telemetry import LOG_EXTENSION, RecordedSession
from .urls import UrlError, parse_url

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PHISHING = 2
EXIT_UNKNOWN_DOMAIN = 3
EXIT_INVALID_DECK = 4

_PLAY_KEYS = {"e": Action.EAT, "a": Action.AVOID, "t": Action.ASK_TEACHER}


def cmd_classify(args: argparse.Namespace) -> int:
    deck = builtin_deck()
    try:
        parsed = parse_url(args.url)
    except UrlError as exc:
        print(f"cannot parse {args.url!r}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    try:
        verdict = classify(parsed, deck.registry, deck.suffixes, deck.keywords)
    except UnknownDomain as exc:
        if args.json:
            print(json.dumps({"url": parsed.raw, "label": None, "rule": None,
                              "tip": None, "host": exc.host}))
        else:
            print(f"no rule applies to host {exc.host!r}", file=sys.stderr)
        return EXIT_UNKNOWN_DOMAIN
    if args.json:
        print(json.dumps({"url": parsed.raw, "label": verdict.label.value,
                          "rule": verdict.fired_rule.value, "tip": verdict.tip}))
    else:
        print(f"{verdict.label.value}  {verdict.fired_rule.value}")
        print(f"tip: {verdict.tip}")
    return EXIT_OK if verdict.label.value == "legit" else EXIT_PHISHING


def _log_sink_factory(log_dir: str):
    directory = Path(log_dir)
    directory.mkdir(parents=True, exist_ok=True)

    def factory(run_seed: int):
        target = directory / f"run-{run_seed}{LOG_EXTENSION}"
        target.write_text("", encoding="utf-8")

        def sink(line: str) -> None:
            with open(target, "a", encoding="utf-8") as fh:
                fh.write(line)

        return sink

    return factory


def cmd_simulate(args: argparse.Namespace) -> int:
    sink_factory = _log_sink_factory(args.log_dir) if args.log_dir else None
    summaries = simulate(args.policy, args.seed, args.runs, args.decision_time,
                         builtin_deck(), sink_factory=sink_factory)
    rate = win_rate(summaries)
    if args.json:
        print(json.dumps({"policy": args.policy, "win_rate": rate,
                          "runs": [s.to_dict() for s in summaries]}))
        return EXIT_OK
    for s in summaries:
        print(f"seed {s.seed:>20}  score {s.score:>3}  lives {s.lives}  "
              f"time {s.time_remaining:>3}  {s.phase.value}")
    print(f"win rate: {rate:.3f} over {len(summaries)} run(s)")
    return EXIT_OK


def cmd_play(args: argparse.Namespace) -> int:
    sink = None
    if args.log_dir:
        directory = Path(args.log_dir)
        directory.mkdir(parents=True, exist_ok=True)
        target = directory / f"play-{args.seed}{LOG_EXTENSION}"
        target.write_text("", encoding="utf-8")

        def sink(line: str) -> None:
            with open(target, "a", encoding="utf-8") as fh:
                fh.write(line)

    session = RecordedSession(GameConfig(), builtin_deck(), args.seed, sink=sink)
    print("e = eat the worm   a = avoid it   t = ask the teacher fish   q = quit")
    last_prompt = time.monotonic()
    while session.state.phase is Phase.IN_ROUND:
        state = session.state
        print(f"\nround {state.round_index + 1}/{state.total_rounds}  "
              f"score {state.score}  lives {state.lives}  time {state.time_remaining}s")
        print(f"  {state.current_card.url}")
        if state.tip_shown_this_round:
            print(f"  tip: {state.current_card.tip}")
        raw = input("> ").strip().lower()
        now = time.monotonic()
        # whole seconds only; the engine counts integer time
        elapsed = min(int(now - last_prompt), session.state.time_remaining)
        last_prompt = now
        if raw == "q":
            session.finish(Phase.LOST)
            print("goodbye")
            return EXIT_OK
        action = _PLAY_KEYS.get(raw)
        if action is None:
            print("unrecognized key (e/a/t/q)")
            continue
        if elapsed:
            session.tick(elapsed)
            if session.state.phase is not Phase.IN_ROUND:
                break
        outcome = session.act(action)
        print(outcome.feedback)
        if outcome.tip:
            print(f"  tip: {outcome.tip}")
    session.finish()
    final = session.state
    if final.phase is Phase.WON:
        print(f"\nYou won! Final score: {final.score}")
    else:
        print(f"\nGame over. Final score: {final.score}")
    return EXIT_OK


def cmd_deck_validate(args: argparse.Namespace) -> int:
    try:
        deck = load_deck(Path(args.path).read_text(encoding="utf-8"))
    except OSError as exc:
        print(f"cannot read {args.path}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except DeckParseError as exc:
        print(f"cannot parse {args.path}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except DeckValidationError as exc:
        for violation in exc.violations:
            print(f"{args.path}: {violation}", file=sys.stderr)
        return EXIT_INVALID_DECK
    print(f"{args.path}: deck {deck.name!r} ok ({len(deck.cards)} cards)")
    return EXIT_OK


def _load_deck_dir(deck_dir: str) -> dict[str, Deck]:
    decks = {builtin_deck().name: builtin_deck()}
    for path in sorted(Path(deck_dir).glob("*.json")):
        deck = load_deck(path.read_text(encoding="utf-8"))
        decks[deck.name] = deck
    return decks


def cmd_serve(args: argparse.Namespace) -> int:
    if not 0 < args.port < 65536:
        print("invalid port", file=sys.stderr)
        return EXIT_FAILURE
    import uvicorn

    from .service import create_app

    decks = _load_deck_dir(args.deck_dir) if args.deck_dir else None
    app = create_app(decks=decks, log_dir=args.log_dir)
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phishpond",
        description="URL classification drills as a fish-feeding game.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify one URL and exit with its label")
    p.add_argument("url")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("simulate", help="run headless bot sessions")
    p.add_argument("--policy", choices=POLICY_NAMES, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--decision-time", type=int, default=10,
                   help="seconds ticked before each bot action")
    p.add_argument("--log-dir")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("play", help="play one session in the terminal")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--log-dir")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("deck", help="deck file utilities")
    deck_sub = p.add_subparsers(dest="deck_command", required=True)
    v = deck_sub.add_parser("validate", help="check a deck file")
    v.add_argument("path")
    v.set_defaults(func=cmd_deck_validate)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8642)
    p.add_argument("--deck-dir")
    p.add_argument("--log-dir")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entrypoint() -> None:
    raise SystemExit(main())
