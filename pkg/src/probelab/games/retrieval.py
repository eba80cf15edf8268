"""Retrieval dictionary (Bloomier filter): payload bits without membership.

Each key hashes to three distinct table slots; its payload is the XOR of
those slot bits.  Building peels the random 3-uniform hypergraph at load
factor 1/1.23: repeatedly remove a slot hit by exactly one remaining key,
then assign bits in reverse removal order.  If peeling stalls the hashes
are reseeded, up to a retry budget.
"""

from __future__ import annotations

import math

from ..errors import BuildFailure, InvalidArgs
from ..util import splitmix64

_LOAD = 1.23
_RETRIES = 16


class RetrievalDictionary:
    """Maps every build key to its one payload bit; anything goes off-key."""

    def __init__(self, table: bytearray, size_slots: int, seed: int):
        self.table = table
        self.size_slots = size_slots
        self.seed = seed

    @classmethod
    def build(cls, payload: dict[int, int], seed: int = 0,
              retries: int = _RETRIES) -> "RetrievalDictionary":
        keys = list(payload)
        if len(set(keys)) != len(keys):
            raise InvalidArgs("keys must be distinct")
        # small additive cushion keeps tiny builds peelable
        m = math.ceil(_LOAD * len(keys)) + 16
        for attempt in range(retries):
            attempt_seed = splitmix64(seed ^ (attempt * 0x9E3779B9))
            order = _peel(keys, m, attempt_seed)
            if order is not None:
                table = bytearray((m + 7) // 8)
                assigned = bytearray((m + 7) // 8)
                for key, slots in reversed(order):
                    free = next(s for s in slots
                                if not assigned[s >> 3] & (1 << (s & 7)))
                    acc = payload[key] & 1
                    for s in slots:
                        acc ^= (table[s >> 3] >> (s & 7)) & 1
                    if acc:
                        table[free >> 3] |= 1 << (free & 7)
                    for s in slots:
                        assigned[s >> 3] |= 1 << (s & 7)
                return cls(table, m, attempt_seed)
        raise BuildFailure(f"peeling failed after {retries} reseeds")

    def get(self, x: int) -> int:
        acc = 0
        table = self.table
        for s in _slots(x, self.size_slots, self.seed):
            acc ^= (table[s >> 3] >> (s & 7)) & 1
        return acc

    @property
    def size_bits(self) -> int:
        """Wire size: slot bits plus a 64-bit length prefix."""
        return self.size_slots + 64


def _slots(x: int, m: int, seed: int) -> tuple[int, int, int]:
    """Three distinct slot indices for a key."""
    h = splitmix64(x ^ seed)
    a = h % m
    h = splitmix64(h)
    b = h % m
    salt = 1
    while b == a:
        h = splitmix64(h + salt)
        b = h % m
        salt += 1
    h = splitmix64(h)
    c = h % m
    salt = 1
    while c == a or c == b:
        h = splitmix64(h + salt)
        c = h % m
        salt += 1
    return a, b, c


def _peel(keys: list[int], m: int, seed: int):
    """Peeling order [(key, slots)] or None if the hypergraph has a core."""
    slot_count = [0] * m
    slot_xor = [0] * m  # xor of incident key indices
    key_slots = []
    for ki, key in enumerate(keys):
        slots = _slots(key, m, seed)
        key_slots.append(slots)
        for s in slots:
            slot_count[s] += 1
            slot_xor[s] ^= ki
    stack = [s for s in range(m) if slot_count[s] == 1]
    order = []
    dead = [False] * len(keys)
    while stack:
        s = stack.pop()
        if slot_count[s] != 1:
            continue
        ki = slot_xor[s]
        if dead[ki]:
            continue
        dead[ki] = True
        order.append((keys[ki], key_slots[ki]))
        for t in key_slots[ki]:
            slot_count[t] -= 1
            slot_xor[t] ^= ki
            if slot_count[t] == 1:
                stack.append(t)
    return order if len(order) == len(keys) else None
