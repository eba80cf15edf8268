"""Seed derivation helpers: one 64-bit master seed expands into named streams."""

from __future__ import annotations

import random

_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One splitmix64 step; the standard 64-bit finalizer."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def _fnv1a(label: str) -> int:
    h = 0xCBF29CE484222325
    for b in label.encode("utf-8"):
        h = ((h ^ b) * 0x100000001B3) & _MASK
    return h


def derive_seed(master: int, label: str) -> int:
    """Deterministic child seed for a named stream."""
    return splitmix64((master & _MASK) ^ _fnv1a(label))


def rng_for(master: int, label: str) -> random.Random:
    return random.Random(derive_seed(master, label))
