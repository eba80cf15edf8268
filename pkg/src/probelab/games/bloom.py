"""Bloom filter with a tunable false-positive rate and no false negatives."""

from __future__ import annotations

import math

from ..errors import InvalidArgs
from ..util import splitmix64


class BloomFilter:
    """Bit-array membership sketch sized for a target false-positive rate p.

    m = ceil(|S| * lg(1/p) * log2(e)) bits and h = ceil(lg(1/p)) seeded
    double-hashed probes; members always test positive.
    """

    def __init__(self, size_bits: int, num_hashes: int, seed: int):
        self.size_bits = size_bits
        self.num_hashes = max(1, num_hashes)
        self.seed = seed
        self._s1 = splitmix64(seed ^ 0x41696365)
        self._s2 = splitmix64(seed ^ 0x426F6221)
        self.bits = bytearray((size_bits + 7) // 8)

    @classmethod
    def build(cls, items, p: float, seed: int = 0) -> "BloomFilter":
        if not 0 < p < 1:
            raise InvalidArgs("false-positive rate must lie in (0, 1)")
        count = len(items)
        m = math.ceil(count * math.log2(1.0 / p) * math.log2(math.e))
        h = max(1, math.ceil(math.log2(1.0 / p)))
        filt = cls(m, h, seed)
        for x in items:
            filt.add(x)
        return filt

    def _probe(self, x: int):
        h1 = splitmix64(x ^ self._s1)
        h2 = splitmix64(x ^ self._s2) | 1
        m = self.size_bits
        for i in range(self.num_hashes):
            yield ((h1 + i * h2) % m)

    def add(self, x: int) -> None:
        if self.size_bits == 0:
            return
        bits = self.bits
        for idx in self._probe(x):
            bits[idx >> 3] |= 1 << (idx & 7)

    def contains(self, x: int) -> bool:
        if self.size_bits == 0:
            return False
        bits = self.bits
        for idx in self._probe(x):
            if not bits[idx >> 3] & (1 << (idx & 7)):
                return False
        return True

    __contains__ = contains

    @property
    def serialized_bits(self) -> int:
        """Wire size: raw bit array plus a 64-bit length prefix."""
        return self.size_bits + 64
