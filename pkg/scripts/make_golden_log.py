"""Regenerate the frozen perfect-play event log used by the golden tests.

Run from the repository root:

    python3 scripts/make_golden_log.py

Only rerun this when the log format or the engine economy changes on
purpose; the test suite compares byte-for-byte against the output.
"""

from pathlib import Path

from phishpond import GameConfig, builtin_deck, make_policy, run_session
from phishpond.telemetry import serialize

SEED = 42
DECISION_TIME = 10
TARGET = Path(__file__).resolve().parent.parent / "tests" / "golden" / "perfect_play.phlog"


def main() -> None:
    session = run_session(GameConfig(), builtin_deck(), SEED,
                          make_policy("oracle", SEED), DECISION_TIME)
    TARGET.parent.mkdir(parents=True, exist_ok=True)
    TARGET.write_text(serialize(session.log), encoding="utf-8")
    print(f"wrote {len(session.log)} events to {TARGET}")


if __name__ == "__main__":
    main()
