"""Seeded xorshift64* generator shared by every randomized construction.

Identical seeds give identical streams on every platform:

    state ^= state >> 12
    state ^= state << 25   (mod 2**64)
    state ^= state >> 27
    output = state * 0x2545F4914F6CDD1D   (mod 2**64)

A zero seed is replaced by ``0x9E3779B97F4A7C15`` (xorshift state must be
non-zero).  Bounded draws use rejection sampling and shuffles are
Fisher-Yates from the last index down.
"""

from typing import List, MutableSequence, TypeVar

MASK64 = (1 << 64) - 1
MULTIPLIER = 0x2545F4914F6CDD1D
ZERO_SEED_REPLACEMENT = 0x9E3779B97F4A7C15

T = TypeVar("T")


class XorShift64Star:
    """64-bit xorshift* pseudo-random generator."""

    def __init__(self, seed: int):
        state = seed & MASK64
        self.state = state if state != 0 else ZERO_SEED_REPLACEMENT

    def next_u64(self) -> int:
        """Advance the state and return the next 64-bit output."""
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * MULTIPLIER) & MASK64

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        # largest multiple of bound that fits in 64 bits
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % bound

    def shuffle(self, items: MutableSequence[T]) -> None:
        """Shuffle ``items`` in place."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_pairs(self, n: int) -> List[tuple]:
        """All pairs ``(u, v)`` with ``u < v < n`` in shuffled order."""
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        self.shuffle(pairs)
        return pairs
