"""Pinned deterministic PRNG and shuffle.

Every shuffle and random bot decision in this package goes through the
xorshift64* generator below so that identical seeds reproduce identical
sessions across processes and machines. Do not swap in ``random.Random``:
its algorithm is not part of this package's compatibility contract.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_MULTIPLIER = 2685821657736338717
# State must never be zero; an all-zero seed is remapped to this constant.
ZERO_SEED_REMAP = 0x9E3779B97F4A7C15


class XorShift64Star:
    """xorshift64* generator (Vigna's variant, 12/25/27 shifts)."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64
        if self.state == 0:
            self.state = ZERO_SEED_REMAP

    def next_u64(self) -> int:
        s = self.state
        s ^= s >> 12
        s ^= (s << 25) & _MASK64
        s ^= s >> 27
        self.state = s
        return (s * _MULTIPLIER) & _MASK64

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n). n must be positive."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u64() % n


def fisher_yates(items: list, rng: XorShift64Star) -> None:
    """Shuffle ``items`` in place with the modern Fisher-Yates algorithm.

    Draws exactly ``len(items) - 1`` values from ``rng`` (none for lists of
    length 0 or 1), iterating i from the last index down to 1 with
    j = rng.below(i + 1).
    """
    for i in range(len(items) - 1, 0, -1):
        j = rng.below(i + 1)
        items[i], items[j] = items[j], items[i]
