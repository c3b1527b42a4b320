"""Sweep bot policies across decision times and print win rates.

    python3 scripts/policy_sweep.py [--runs N] [--seed S]

Reproduces the game's win condition at desk scale: a player who answers
every round correctly wins whenever 10 rounds fit inside the 600-second
budget, and the random baseline almost never survives the 100-second
penalties.
"""

import argparse

from phishpond import POLICY_NAMES, builtin_deck, simulate, win_rate

DECISION_TIMES = (1, 10, 30, 59, 60, 70)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    deck = builtin_deck()
    header = "policy".ljust(14) + "".join(f"t={t:<6}" for t in DECISION_TIMES)
    print(header)
    print("-" * len(header))
    for policy in POLICY_NAMES:
        cells = []
        for t in DECISION_TIMES:
            rate = win_rate(simulate(policy, args.seed, args.runs, t, deck))
            cells.append(f"{rate:<8.2f}")
        print(policy.ljust(14) + "".join(cells))


if __name__ == "__main__":
    main()
