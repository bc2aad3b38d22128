"""Deterministic PRNG used by the log and dataset generators.

SplitMix64 with the standard gamma/mix constants.  Implemented on plain
Python integers with explicit 64-bit masking so identical seeds produce
identical streams on every platform.  All derived draws (bounded ints,
shuffles, sampling) go through this generator only.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        """Next raw 64-bit output."""
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection of the tail."""
        if n <= 0:
            raise ValueError("below() requires n > 0")
        limit = ((1 << 64) // n) * n
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def shuffle(self, seq) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def sample_indices(self, n: int, k: int) -> list:
        """k distinct indices from range(n), uniformly, order of selection."""
        if k > n:
            raise ValueError(f"cannot sample {k} distinct items from {n}")
        # Partial Fisher-Yates over a sparse index map: O(k) memory.
        swapped: dict = {}
        picked = []
        for i in range(k):
            j = i + self.below(n - i)
            picked.append(swapped.get(j, j))
            swapped[j] = swapped.get(i, i)
        return picked

    def weighted_index(self, weights) -> int:
        """Index drawn proportionally to non-negative integer weights."""
        total = sum(weights)
        if total <= 0:
            raise ValueError("weights must sum to a positive value")
        ticket = self.below(total)
        acc = 0
        for i, w in enumerate(weights):
            acc += w
            if ticket < acc:
                return i
        raise AssertionError("unreachable")
