"""Arena-resident edge multiset: the replayable form of the naive oracle.

Adjacency lists live in arena cons cells, connectivity queries run BFS with
an arena visited bitmap, so replaying a workload on this structure yields an
honest probe log (the measured structure for the fully-dynamic instance).
Find expectations are answered by an embedded reference oracle.
"""

from __future__ import annotations

from .arena import ProbeArena
from .errors import DeleteMissingEdge, OutOfRange, SelfLink, UnsupportedOp
from .oracle import NaiveConnectivity


class ArenaGraphStore:
    """Undirected multigraph over arena memory with metered BFS queries."""

    def __init__(self, arena: ProbeArena, n: int, *, attach: bool = False):
        if n < 1:
            raise OutOfRange("need at least one node")
        self.arena = arena
        self.n = n
        self._head = arena.alloc(n)
        self._bitmap = arena.alloc((n + 63) // 64)
        self._hdr = arena.alloc(1)
        self._cons = arena.alloc(0)  # open region; keep this allocator last
        # Reference semantics for find expectations; only authoritative when
        # the store observed every edge from the beginning.
        self._mirror = NaiveConnectivity()
        self._mirror_ok = not attach
        self._snapshots_seen = False

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise OutOfRange(f"node {v} not in [0, {self.n})")

    def insert_edge(self, u: int, v: int) -> None:
        # packed adjacency records, as in the link-find lists
        self._check(u)
        self._check(v)
        if u == v:
            raise SelfLink(f"self edge at {u}")
        a = self.arena
        bump = a.read(self._hdr)
        a.write(self._hdr, bump + 2)
        old = a.read(self._head + u)
        a.update(self._cons + bump, ((v + 1) << 30) | old)
        a.update(self._head + u, bump + 1)
        old = a.read(self._head + v)
        a.update(self._cons + bump + 1, ((u + 1) << 30) | old)
        a.update(self._head + v, bump + 2)
        if self._mirror_ok:
            self._mirror.insert_edge(u, v)

    link = insert_edge

    def _unlink(self, u: int, v: int) -> bool:
        """Remove one record for v from u's list; True if found."""
        a = self.arena
        prev = None
        rec = a.read(self._head + u)
        while rec:
            packed = a.read(self._cons + rec - 1)
            nb = (packed >> 30) - 1
            nxt = packed & 0x3FFFFFFF
            if nb == v:
                if prev is None:
                    a.update(self._head + u, nxt)
                else:
                    prev_packed = a.read(self._cons + prev - 1)
                    a.update(self._cons + prev - 1,
                             (prev_packed & ~0x3FFFFFFF) | nxt)
                return True
            prev = rec
            rec = nxt
        return False

    def delete_edge(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        if not self._unlink(u, v):
            raise DeleteMissingEdge(f"edge ({u}, {v}) not present")
        if not self._unlink(v, u):
            raise DeleteMissingEdge(f"edge ({u}, {v}) half-present")
        if self._mirror_ok:
            self._mirror.delete_edge(u, v)

    def connected(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        if u == v:
            return True
        a = self.arena
        bitmap = self._bitmap
        waddr = bitmap + (u >> 6)
        word = a.read(waddr)
        a.write(waddr, word | (1 << (u & 63)))
        touched = {waddr}
        stack = [u]
        found = False
        while stack and not found:
            x = stack.pop()
            rec = a.read(self._head + x)
            while rec:
                packed = a.read(self._cons + rec - 1)
                nb = (packed >> 30) - 1
                rec = packed & 0x3FFFFFFF
                if nb == v:
                    found = True
                    break
                waddr = bitmap + (nb >> 6)
                word = a.read(waddr)
                bit = 1 << (nb & 63)
                if not word & bit:
                    a.write(waddr, word | bit)
                    touched.add(waddr)
                    stack.append(nb)
        for waddr in touched:
            a.update(waddr, 0)
        return found

    def find(self, v: int) -> int:
        self._check(v)
        if not self._mirror_ok or self._snapshots_seen:
            raise UnsupportedOp("find unavailable: reference state is stale")
        return self._mirror.find(v)

    def note_snapshot(self) -> None:
        self._snapshots_seen = True
