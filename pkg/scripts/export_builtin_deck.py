"""Write the built-in deck to a JSON file.

    python3 scripts/export_builtin_deck.py [path]

Defaults to ./builtin_deck.json. The output round-trips through
``load_deck`` and is a convenient starting point for custom decks.
"""

import sys
from pathlib import Path

from phishpond import builtin_deck, serialize_deck


def main() -> None:
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("builtin_deck.json")
    target.write_text(serialize_deck(builtin_deck()), encoding="utf-8")
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
