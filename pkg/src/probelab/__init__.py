"""probelab: union-find and link-find over an instrumented cell-probe memory.

The lab bundles the structures (amortized and worst-case union-find, general
and forest link-find), the hard-workload generators that stress them, the
interval/overlap accounting on real probe logs, and the two communication
protocols that re-derive executions across an interval cut.
"""

from .ackermann import ackermann, alpha, alpha_diag
from .arena import (
    PREFIX_TAG,
    WORD_BITS,
    IntervalStats,
    ProbeArena,
    ProbeLog,
    TimelineTree,
    charge_to_lca,
    interval_stats,
)
from .graphstore import ArenaGraphStore
from .link_find import LinkFind
from .oracle import NaiveConnectivity
from .runner import RunReport, make_structure, replay_trace
from .traces import Trace
from .union_find import KaryUnionFind, UnionFind, uf_new

__version__ = "0.1.0"

__all__ = [
    "ProbeArena",
    "ProbeLog",
    "TimelineTree",
    "IntervalStats",
    "interval_stats",
    "charge_to_lca",
    "PREFIX_TAG",
    "WORD_BITS",
    "ackermann",
    "alpha",
    "alpha_diag",
    "UnionFind",
    "KaryUnionFind",
    "uf_new",
    "LinkFind",
    "NaiveConnectivity",
    "ArenaGraphStore",
    "Trace",
    "RunReport",
    "replay_trace",
    "make_structure",
    "__version__",
]
