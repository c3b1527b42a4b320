"""The generator and shuffle are a compatibility contract: these tests pin
the exact output stream so a reimplementation in any language can check
itself against the same numbers.
"""

from hypothesis import given
from hypothesis import strategies as st

import pytest

from phishpond.rng import ZERO_SEED_REMAP, XorShift64Star, fisher_yates

_M = (1 << 64) - 1


def reference_stream(seed: int, n: int) -> list[int]:
    """Direct transcription of the recurrence, kept separate from the
    implementation under test on purpose."""
    s = seed & _M
    if s == 0:
        s = ZERO_SEED_REMAP
    out = []
    for _ in range(n):
        s ^= s >> 12
        s = (s ^ (s << 25)) & _M
        s ^= s >> 27
        out.append((s * 2685821657736338717) & _M)
    return out


def reference_shuffle(items: list, stream) -> None:
    for i in range(len(items) - 1, 0, -1):
        j = next(stream) % (i + 1)
        items[i], items[j] = items[j], items[i]


# Frozen literals, computed once with reference_stream and never edited.
PINNED_STREAMS = {
    1: [5180492295206395165, 12380297144915551517,
        13389498078930870103, 5599127315341312413],
    42: [6255019084209693600, 14430073426741505498,
         14575455857230217846, 17414512882241728735],
    0: [973819730272012410, 6108091081255984487],
    _M: [17954947803125907456, 10373061909235543779],
}


@pytest.mark.parametrize("seed,expected", sorted(PINNED_STREAMS.items()))
def test_pinned_output_streams(seed, expected):
    rng = XorShift64Star(seed)
    assert [rng.next_u64() for _ in expected] == expected


def test_zero_seed_is_remapped():
    assert XorShift64Star(0).state == ZERO_SEED_REMAP
    a = XorShift64Star(0)
    b = XorShift64Star(ZERO_SEED_REMAP)
    assert [a.next_u64() for _ in range(8)] == [b.next_u64() for _ in range(8)]


@given(st.integers(min_value=0, max_value=_M))
def test_matches_reference_stream(seed):
    rng = XorShift64Star(seed)
    assert [rng.next_u64() for _ in range(6)] == reference_stream(seed, 6)


@given(st.integers(min_value=0, max_value=_M))
def test_outputs_stay_in_64_bits(seed):
    rng = XorShift64Star(seed)
    for _ in range(4):
        assert 0 <= rng.next_u64() <= _M


def test_seed_is_masked_to_64_bits():
    wide = XorShift64Star((1 << 64) + 42)
    narrow = XorShift64Star(42)
    assert wide.next_u64() == narrow.next_u64()


def test_below_is_modulo_of_next_output():
    for seed in (1, 42, 999):
        expected = [v % 7 for v in reference_stream(seed, 5)]
        rng = XorShift64Star(seed)
        assert [rng.below(7) for _ in range(5)] == expected


@pytest.mark.parametrize("n", [0, -1, -100])
def test_below_rejects_nonpositive_bound(n):
    with pytest.raises(ValueError):
        XorShift64Star(1).below(n)


@given(st.integers(min_value=0, max_value=_M), st.integers(min_value=1, max_value=1000))
def test_below_is_in_range(seed, n):
    assert 0 <= XorShift64Star(seed).below(n) < n


@given(st.lists(st.integers(), max_size=40), st.integers(min_value=0, max_value=_M))
def test_fisher_yates_permutes(items, seed):
    shuffled = list(items)
    fisher_yates(shuffled, XorShift64Star(seed))
    assert sorted(shuffled) == sorted(items)


@given(st.lists(st.integers(), min_size=2, max_size=40),
       st.integers(min_value=0, max_value=_M))
def test_fisher_yates_matches_reference(items, seed):
    ours = list(items)
    fisher_yates(ours, XorShift64Star(seed))
    theirs = list(items)
    reference_shuffle(theirs, iter(reference_stream(seed, len(items) - 1)))
    assert ours == theirs


def test_fisher_yates_draw_count():
    rng = XorShift64Star(5)
    fisher_yates(list(range(10)), rng)
    fresh = XorShift64Star(5)
    for _ in range(9):            # exactly len - 1 draws
        fresh.next_u64()
    assert rng.state == fresh.state


@pytest.mark.parametrize("items", [[], [1]])
def test_fisher_yates_trivial_lists_draw_nothing(items):
    rng = XorShift64Star(9)
    before = rng.state
    fisher_yates(items, rng)
    assert rng.state == before
