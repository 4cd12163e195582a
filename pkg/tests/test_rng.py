"""Determinism anchors for the seed machinery.

The seed-0 splitmix64 stream is pinned to the published reference outputs
of the original implementation, so any drift in the generator (which would
silently change every witness in the package) fails loudly here.
"""

from psts.rng import MASK64, SplitMix64, derive_seed, mix64

# first three outputs of splitmix64 seeded with 0, from the reference
# implementation's test vector
REFERENCE_SEED0 = (
    0xE220A8397B1DCDAF,
    0x6E789E6AA1B965F4,
    0x06C45D188009454F,
)


def test_reference_vector_seed0():
    s = SplitMix64(0)
    assert tuple(s.next_u64() for _ in range(3)) == REFERENCE_SEED0


def test_stream_is_reproducible():
    a = SplitMix64(987654321)
    b = SplitMix64(987654321)
    assert [a.next_u64() for _ in range(50)] == [b.next_u64() for _ in range(50)]


def test_outputs_stay_in_64_bits():
    s = SplitMix64((1 << 64) - 1)
    for _ in range(100):
        assert 0 <= s.next_u64() <= MASK64


def test_mix64_is_injective_on_a_sample():
    seen = {mix64(i) for i in range(10000)}
    assert len(seen) == 10000


def test_randbelow_range_and_determinism():
    s = SplitMix64(42)
    vals = [s.randbelow(100) for _ in range(6)]
    assert vals == [13, 91, 58, 64, 50, 62]
    assert all(0 <= v < 100 for v in vals)


def test_randbelow_rejects_nonpositive():
    s = SplitMix64(1)
    try:
        s.randbelow(0)
    except ValueError:
        pass
    else:
        raise AssertionError("randbelow(0) should raise")


def test_derive_seed_depends_on_every_label():
    base = derive_seed(0, "stage", 1)
    assert base == derive_seed(0, "stage", 1)
    assert base != derive_seed(0, "stage", 2)
    assert base != derive_seed(0, "other", 1)
    assert base != derive_seed(1, "stage", 1)


def test_derive_seed_order_sensitive():
    assert derive_seed(5, "a", "b") != derive_seed(5, "b", "a")


def test_derive_seed_frozen_values():
    # anchors for the stage seeds used by the pipelines; a change here
    # means every stored witness in the repo would be regenerated
    assert derive_seed(0, "b0", 1) == 11365454082166545853
    assert derive_seed(2026, "stage", 3) == 10978920036872844303
