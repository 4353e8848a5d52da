"""Seeded random streams.

Every stream is a PCG64 bit generator. Only its raw 64-bit output is used;
integers, floats, shuffles and samples are derived here so results do not
depend on numpy's distribution code, which is not stream-stable across
releases.

Child streams are derived with :func:`split`, a BLAKE2b hash of the parent
seed and the child index, so a trial's randomness depends only on
``(master seed, trial index)`` and never on scheduling order.
"""

from __future__ import annotations

import hashlib

import numpy as np

MASK64 = (1 << 64) - 1


def split(seed: int, index: int) -> int:
    """Derive a 64-bit child seed from ``seed`` and ``index``."""
    payload = f"{seed & MASK64}:{index}".encode("ascii")
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


class Stream:
    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self._bits = np.random.PCG64(self.seed)

    def child(self, index: int) -> "Stream":
        return Stream(split(self.seed, index))

    def raw(self, size: int) -> np.ndarray:
        return self._bits.random_raw(size).astype(np.uint64)

    def next64(self) -> int:
        return int(self._bits.random_raw())

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection (no modulo bias)."""
        if not 0 < bound <= 1 << 64:
            raise ValueError("bound must lie in 1..2**64")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next64()
            if x < limit:
                return x % bound

    def uniform(self, size: int) -> np.ndarray:
        """Floats in ``[0, 1)`` built from the top 53 bits."""
        return (self.raw(size) >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))

    def bernoulli(self, p: float, size: int) -> np.ndarray:
        # exact comparison on 53-bit integers; p=0 never fires, p=1 always does
        threshold = int(round(p * (1 << 53)))
        return (self.raw(size) >> np.uint64(11)) < np.uint64(threshold)

    def shuffle(self, items: list) -> list:
        out = list(items)
        for i in range(len(out) - 1, 0, -1):
            j = self.below(i + 1)
            out[i], out[j] = out[j], out[i]
        return out

    def sample(self, population: int, k: int) -> list[int]:
        """``k`` distinct indices from ``range(population)``, in draw order."""
        if not 0 <= k <= population:
            raise ValueError("sample size out of range")
        pool = list(range(population))
        for i in range(k):
            j = i + self.below(population - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
