"""Deterministic random number generation.

Everything statistical in this package flows through one pinned generator so that
results are reproducible across machines, Python versions, and the pure/compiled
engine pair: xoshiro256++ with its state seeded from four successive outputs of a
SplitMix64 stream.  The compiled kernel re-implements the same generator in C;
tests assert the two produce identical streams.

Per-sample independence is by seed derivation, not by stream jumping:
``derive_seed(master, i)`` is the (i+1)-th output of a SplitMix64 stream seeded
with ``master``.  Each Monte Carlo sample i gets its own xoshiro instance seeded
with ``derive_seed(master, i)``, which makes every sample reproducible in
isolation and makes results independent of how samples are partitioned into
blocks or threads.

Bounded draws use rejection sampling: for modulus m, draw 64-bit words until one
is >= 2**64 mod m, then reduce.  This is exactly uniform and consumes an
identical number of draws in both engines.
"""

from __future__ import annotations

__all__ = [
    "GENERATOR_NAME",
    "MASK64",
    "GOLDEN_GAMMA",
    "mix64",
    "derive_seed",
    "Xoshiro256PP",
]

GENERATOR_NAME = "xoshiro256++/splitmix64"

MASK64 = (1 << 64) - 1

# SplitMix64 constants (Steele, Lea & Flood's finalizer).
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 output finalizer: a 64-bit bijection with good avalanche."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX_A) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & MASK64
    return (z ^ (z >> 31)) & MASK64


def derive_seed(master: int, index: int) -> int:
    """Seed for the index-th (0-based) sample of a run seeded with ``master``."""
    return mix64((master + (index + 1) * GOLDEN_GAMMA) & MASK64)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256PP:
    """xoshiro256++ (Blackman & Vigna), seeded via SplitMix64.

    Attributes:
        s0..s3: the four 64-bit state words.
    """

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int) -> None:
        if not 0 <= seed <= MASK64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        sm = seed
        state = []
        for _ in range(4):
            sm = (sm + GOLDEN_GAMMA) & MASK64
            state.append(mix64(sm))
        self.s0, self.s1, self.s2, self.s3 = state

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        result = (_rotl((s0 + s3) & MASK64, 23) + s0) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return result

    def bounded(self, m: int) -> int:
        """Uniform integer in [0, m) by rejection; m must be >= 1."""
        threshold = (1 << 64) % m
        while True:
            r = self.next_u64()
            if r >= threshold:
                return r % m

    def state(self) -> tuple[int, int, int, int]:
        return (self.s0, self.s1, self.s2, self.s3)
