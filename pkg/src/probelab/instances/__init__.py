"""Hard-workload generators and their ground-truth oracles."""

from .appendix import appendix_rounds
from .dynamic import DynamicInstance, DynParams, bit_reversal, interleave_check
from .incremental import IncParams, IncrementalInstance, distinct_ancestors

__all__ = [
    "IncParams",
    "IncrementalInstance",
    "distinct_ancestors",
    "DynParams",
    "DynamicInstance",
    "bit_reversal",
    "interleave_check",
    "appendix_rounds",
]
