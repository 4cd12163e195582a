"""Deterministic randomness for every stochastic search in the package.

All stochastic components draw from a splitmix64 stream seeded through
``derive_seed``.  Nothing here touches ``random`` or any ambient entropy
source: given the same top-level seed and the same derivation labels, every
run produces the same stream on every platform.  The compiled kernels
implement the identical generator in C, so switching backends never changes
a witness.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def mix64(z: int) -> int:
    """Finalizer of splitmix64; a 64-bit bijective scrambler."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return (z ^ (z >> 31)) & MASK64


class SplitMix64:
    """splitmix64 sequence generator.

    Small state, full 64-bit period over the counter, and trivially
    portable to C.  Quality is ample for randomized hill climbing.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & MASK64
        return mix64(self.state)

    def randbelow(self, n: int) -> int:
        """Uniform-ish integer in [0, n).  Modulo bias is irrelevant here;
        what matters is that the Python and C implementations agree bit for
        bit."""
        if n <= 0:
            raise ValueError("randbelow requires n >= 1")
        return self.next_u64() % n


def derive_seed(seed: int, *labels: object) -> int:
    """Derive a child seed from (seed, label, label, ...).

    Labels are folded in with FNV-1a over their string form, then scrambled.
    Distinct stages and attempt counters therefore get independent streams
    from one top-level seed, and the derivation is stable across runs.
    """
    h = seed & MASK64
    for label in labels:
        for b in str(label).encode("utf-8"):
            h = ((h ^ b) * _FNV_PRIME) & MASK64
        h = mix64(h)
    return h
