"""Seeded, counter-based randomness.

Random decisions must not depend on iteration order or thread layout, so
every draw is derived from an explicit (seed, counter) position in a
SplitMix64-style stream instead of from shared mutable generator state.
Identical keys give identical values on every platform and in every
traversal order.
"""

from __future__ import annotations

import random

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _finalize(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def counter_rand64(seed: int, counter: int) -> int:
    """The `counter`-th 64-bit word of the stream keyed by `seed`."""
    base = _finalize(seed & MASK64)
    return _finalize((base + (counter + 1) * _GOLDEN) & MASK64)


def mix64(*parts: int) -> int:
    """Collapse any number of integers into one scrambled 64-bit key."""
    h = _GOLDEN
    for part in parts:
        h = _finalize(h ^ _finalize(part & MASK64))
    return h


def coin(seed: int, counter: int, num: int, den: int) -> bool:
    """Bernoulli(num/den) decision at position `counter` of the seeded stream."""
    return counter_rand64(seed, counter) * den < num << 64


def spawn(*key: int) -> random.Random:
    """A private generator for the substream named by `key`."""
    return random.Random(mix64(*key))
