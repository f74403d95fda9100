"""Deterministic random streams built on SplitMix64.

SplitMix64 (Vigna, 2015; public domain, also the seeding generator of Java's
``SplittableRandom``) is used for every random draw in this package. It was
chosen because the algorithm is tiny, fully specified in 64-bit integer
arithmetic, and has published reference outputs, so any implementation in any
language can reproduce a simulation trajectory bit for bit. The compiled
kernel in ``_speedup.pyx`` implements the identical update.

Draw conventions (shared with the compiled kernel):

* ``next_u64``      -- one SplitMix64 step.
* ``next_unit``     -- top 53 bits of one step scaled to a double in [0, 1).
* ``next_below(m)`` -- unbiased integer in [0, m) by masked rejection; always
  consumes at least one step, possibly more.
* ``bernoulli(p)``  -- ``next_unit() < p``; exactly one step.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15  # 2^64 / golden ratio, the SplitMix64 increment
_INV53 = 1.0 / (1 << 53)


def mix64(z: int) -> int:
    """SplitMix64 output finalizer: a 64-bit avalanche bijection."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_state(master_seed: int, n: int, policy_code: int) -> int:
    """Mix (master_seed, n, policy_code) into one 64-bit stream state.

    Absorbing a word first diffuses the accumulated state (finalizer over
    state + increment), then folds the word in and diffuses again. The double
    avalanche matters: XORing a small word into a near-raw seed would let
    nearby seeds collide. Distinct sweep points get unrelated substreams, and
    adding or removing grid points never shifts another point's stream.
    """
    z = master_seed & _MASK64
    for word in (n, policy_code):
        z = mix64((z + _GOLDEN) & _MASK64)
        z = mix64(z ^ (word & _MASK64))
    return z


class SplitMix64:
    """A single deterministic draw stream.

    The state is one 64-bit integer; ``next_u64`` advances it by the golden
    increment and finalizes with ``mix64``. Instances are cheap and mutable;
    concurrent users must own disjoint instances.
    """

    __slots__ = ("state",)

    def __init__(self, state: int):
        self.state = state & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        return mix64(self.state)

    def next_unit(self) -> float:
        """Double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * _INV53

    def bernoulli(self, p: float) -> bool:
        return self.next_unit() < p

    def next_below(self, m: int) -> int:
        """Unbiased uniform integer in [0, m), m >= 1, via masked rejection."""
        if m < 1:
            raise ValueError(f"next_below requires m >= 1, got {m}")
        mask = (1 << (m - 1).bit_length()) - 1
        while True:
            x = self.next_u64() & mask
            if x < m:
                return x
