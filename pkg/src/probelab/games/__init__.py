"""Communication-game machinery: filters, dictionaries, protocol runs."""

from .bloom import BloomFilter
from .retrieval import RetrievalDictionary
from .protocol import (
    GameInstance,
    Proof,
    Transcript,
    cut_game,
    run_bloom_protocol,
    run_nondet_protocol,
)

__all__ = [
    "BloomFilter",
    "RetrievalDictionary",
    "GameInstance",
    "Proof",
    "Transcript",
    "cut_game",
    "run_bloom_protocol",
    "run_nondet_protocol",
]
