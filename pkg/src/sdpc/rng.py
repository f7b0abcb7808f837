"""Replayable seeded randomness with an explicit draw counter."""

from __future__ import annotations

import random


class CountingRng:
    """Deterministic random source whose position is just (seed, draws).

    Every draw consumes exactly one 32-bit word from a seeded Mersenne
    Twister stream, so a generator can be reconstructed mid-stream by
    replaying `draws` words. randrange() uses top-bits rejection sampling,
    which keeps the word count a pure function of the seed and the call
    sequence.
    """

    def __init__(self, seed: int, draws: int = 0):
        if draws < 0:
            raise ValueError("draw counter must be nonnegative")
        self.seed = seed
        self.draws = 0
        self._rand = random.Random(seed)
        for _ in range(draws):
            self._word()

    def _word(self) -> int:
        self.draws += 1
        return self._rand.getrandbits(32)

    def bit(self) -> int:
        """One uniform bit."""
        return self._word() & 1

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n). n must fit in 32 bits."""
        if not 1 <= n <= 1 << 32:
            raise ValueError(f"randrange bound out of range: {n}")
        if n == 1:
            return 0
        k = (n - 1).bit_length()
        while True:
            v = self._word() >> (32 - k)
            if v < n:
                return v
