"""Union-find over the probe arena, in amortized and worst-case flavours.

``UnionFind`` is the classic forest: union by rank, two-pass path
compression, all parent/rank words arena-resident so every probe is logged.

``KaryUnionFind`` trades union time for find time.  Elements sit at the
leaves of trees whose leaves all share one depth; internal nodes are
allocated cells.  Each non-root internal node keeps at least k children, so
a tree of height h holds at least 2*k^(h-1) leaves and a find walks at most
1 + log_k(n/2) + 1 parent pointers.  Unions splice at most k-1 child
pointers plus constant bookkeeping, i.e. O(k) probes worst case, using a
per-tree height table (the "slab") for O(1) access to the attachment level.
"""

from __future__ import annotations

from .arena import ProbeArena
from .errors import InvalidParams, NotARoot, OutOfRange, SameSet


class _OpCounters:
    __slots__ = ("finds", "unions", "find_probes", "union_probes",
                 "max_find", "max_union")

    def __init__(self):
        self.finds = 0
        self.unions = 0
        self.find_probes = 0
        self.union_probes = 0
        self.max_find = 0
        self.max_union = 0

    def note_find(self, probes: int) -> None:
        self.finds += 1
        self.find_probes += probes
        if probes > self.max_find:
            self.max_find = probes

    def note_union(self, probes: int) -> None:
        self.unions += 1
        self.union_probes += probes
        if probes > self.max_union:
            self.max_union = probes


class UnionFind:
    """Amortized-mode forest: union by rank plus path compression.

    Parents are stored as id+1 so a raw zero cell means "unset, own root";
    with ``preinit`` every parent is written up front, which is the mode the
    standalone structure uses.  Lazily initialised forests (preinit=False)
    are for embedding, where elements are activated by ``make_set``.
    """

    def __init__(self, arena: ProbeArena, n: int, *, preinit: bool = True):
        if n < 1:
            raise InvalidParams("need at least one element")
        self.arena = arena
        self.n = n
        self._par = arena.alloc(n)
        self._rank = arena.alloc(n)
        if preinit:
            for i in range(n):
                arena.update(self._par + i, i + 1)
        self.counters = _OpCounters()

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise OutOfRange(f"element {v} not in [0, {self.n})")

    def make_set(self, v: int) -> None:
        """Activate element v as a singleton (lazy forests only)."""
        self._check(v)
        self.arena.update(self._par + v, v + 1)

    def find(self, v: int) -> int:
        self._check(v)
        a = self.arena
        base = self._par
        start = a.probe_count
        cur = v
        stored = a.read(base + cur)
        path = []
        while stored and stored - 1 != cur:
            path.append(cur)
            cur = stored - 1
            stored = a.read(base + cur)
        # two-pass compression; the node already pointing at the root is left
        for u in path[:-1]:
            a.update(base + u, cur + 1)
        self.counters.note_find(a.probe_count - start)
        return cur

    def union(self, r1: int, r2: int) -> int:
        self._check(r1)
        self._check(r2)
        if r1 == r2:
            raise SameSet(f"{r1} is already its own set")
        a = self.arena
        start = a.probe_count
        s1 = a.read(self._par + r1)
        if s1 not in (0, r1 + 1):
            raise NotARoot(f"{r1} is not a root")
        s2 = a.read(self._par + r2)
        if s2 not in (0, r2 + 1):
            raise NotARoot(f"{r2} is not a root")
        k1 = a.read(self._rank + r1)
        k2 = a.read(self._rank + r2)
        if k1 < k2:
            winner, loser = r2, r1
        else:
            winner, loser = r1, r2  # ties attach r2 under r1
        a.update(self._par + loser, winner + 1)
        if k1 == k2:
            a.update(self._rank + winner, k1 + 1)
        self.counters.note_union(a.probe_count - start)
        return winner

    def connected(self, u: int, v: int) -> bool:
        return self.find(u) == self.find(v)

    # unlogged helpers for drivers and invariant checks

    def peek_is_root(self, v: int) -> bool:
        return self.arena.peek(self._par + v) in (0, v + 1)

    def peek_parent(self, v: int) -> int:
        stored = self.arena.peek(self._par + v)
        return v if stored in (0, v + 1) else stored - 1

    def peek_rank(self, v: int) -> int:
        return self.arena.peek(self._rank + v)

    def check_rank_invariant(self) -> bool:
        for v in range(self.n):
            p = self.peek_parent(v)
            if p != v and not self.peek_rank(p) > self.peek_rank(v):
                return False
        return True


class KaryUnionFind:
    """Worst-case mode: O(lg n / lg k) finds against O(k) unions."""

    def __init__(self, arena: ProbeArena, n: int, k: int):
        if n < 1:
            raise InvalidParams("need at least one element")
        if k < 2:
            raise InvalidParams("arity parameter k must be >= 2")
        self.arena = arena
        self.n = n
        self.k = k
        total = 2 * n - 1 if n > 1 else 1  # elements + internal nodes
        self._par = arena.alloc(total)
        self._child = arena.alloc(total)
        self._sib = arena.alloc(total)
        self._height = arena.alloc(total)
        self._deg = arena.alloc(total)
        self._slabref = arena.alloc(total)
        self._slab_h = max(n, 2).bit_length() + 2  # height never reaches this
        self._slabs = arena.alloc(n * self._slab_h)
        self._hdr = arena.alloc(1)  # bump counter for internal node ids
        for i in range(n):
            arena.update(self._par + i, i + 1)
            arena.update(self._slabref + i, i + 1)
            arena.update(self._slabs + i * self._slab_h, i + 1)
        self.counters = _OpCounters()

    def _check(self, v: int) -> None:
        if not 0 <= v < 2 * self.n - 1:
            raise OutOfRange(f"node {v} out of range")

    def _slab_base(self, root: int) -> int:
        t = self.arena.read(self._slabref + root) - 1
        return self._slabs + t * self._slab_h

    def _alloc_internal(self) -> int:
        a = self.arena
        nxt = a.read(self._hdr)
        a.write(self._hdr, nxt + 1)
        return self.n + nxt

    def _push_child(self, root: int, c: int) -> None:
        a = self.arena
        old = a.read(self._child + root)
        a.update(self._sib + c, old)
        a.update(self._child + root, c + 1)

    def find(self, v: int) -> int:
        self._check(v)
        a = self.arena
        base = self._par
        start = a.probe_count
        cur = v
        stored = a.read(base + cur)
        while stored and stored - 1 != cur:
            cur = stored - 1
            stored = a.read(base + cur)
        self.counters.note_find(a.probe_count - start)
        return cur

    def union(self, r1: int, r2: int) -> int:
        self._check(r1)
        self._check(r2)
        if r1 == r2:
            raise SameSet(f"{r1} is already its own set")
        a = self.arena
        start = a.probe_count
        if a.read(self._par + r1) != r1 + 1:
            raise NotARoot(f"{r1} is not a root")
        if a.read(self._par + r2) != r2 + 1:
            raise NotARoot(f"{r2} is not a root")
        h1 = a.read(self._height + r1)
        h2 = a.read(self._height + r2)
        if h1 < h2:
            root = self._absorb(r2, h2, r1, h1)
        elif h2 < h1:
            root = self._absorb(r1, h1, r2, h2)
        else:
            root = self._merge_equal(r1, r2, h1)
        self.counters.note_union(a.probe_count - start)
        return root

    def _absorb(self, big: int, hb: int, small: int, hs: int) -> int:
        """Attach the lower tree into the taller one, keeping leaf depths."""
        a = self.arena
        sb = self._slab_base(big)
        if hs == 0:
            v = a.read(sb + 1) - 1
            a.update(self._par + small, v + 1)
            if v == big:
                self._push_child(big, small)
                a.update(self._deg + big, a.read(self._deg + big) + 1)
            return big
        degs = a.read(self._deg + small)
        if degs >= self.k:
            v = a.read(sb + hs + 1) - 1
            a.update(self._par + small, v + 1)
            if v == big:
                self._push_child(big, small)
                a.update(self._deg + big, a.read(self._deg + big) + 1)
        else:
            # too thin to become an internal node: re-home its children
            v = a.read(sb + hs) - 1  # height-hs node; never the root (hs < hb)
            c = a.read(self._child + small)
            kids = []
            while c:
                kids.append(c - 1)
                c = a.read(self._sib + (c - 1))
            for kid in kids:
                a.update(self._par + kid, v + 1)
            a.update(self._par + small, v + 1)  # absorbed marker
        return big

    def _merge_equal(self, r1: int, r2: int, h: int) -> int:
        a = self.arena
        if h == 0:
            node = self._alloc_internal()
            a.update(self._par + r1, node + 1)
            a.update(self._par + r2, node + 1)
            a.update(self._par + node, node + 1)
            a.update(self._height + node, 1)
            a.update(self._deg + node, 2)
            a.update(self._child + node, r1 + 1)
            a.update(self._sib + r1, r2 + 1)
            t = a.read(self._slabref + r1)
            a.update(self._slabref + node, t)
            a.update(self._slabs + (t - 1) * self._slab_h + 1, node + 1)
            return node
        d1 = a.read(self._deg + r1)
        d2 = a.read(self._deg + r2)
        if d1 >= self.k and d2 >= self.k:
            node = self._alloc_internal()
            a.update(self._par + r1, node + 1)
            a.update(self._par + r2, node + 1)
            a.update(self._par + node, node + 1)
            a.update(self._height + node, h + 1)
            a.update(self._deg + node, 2)
            a.update(self._child + node, r1 + 1)
            a.update(self._sib + r1, r2 + 1)
            t = a.read(self._slabref + r1)
            a.update(self._slabref + node, t)
            a.update(self._slabs + (t - 1) * self._slab_h + h + 1, node + 1)
            return node
        if d1 < d2:
            winner, loser, dw, dl = r2, r1, d2, d1
        else:
            winner, loser, dw, dl = r1, r2, d1, d2
        c = a.read(self._child + loser)
        kids = []
        while c:
            kids.append(c - 1)
            c = a.read(self._sib + (c - 1))
        for kid in kids:
            a.update(self._par + kid, winner + 1)
            self._push_child(winner, kid)
        a.update(self._deg + winner, dw + dl)
        a.update(self._par + loser, winner + 1)
        return winner

    def connected(self, u: int, v: int) -> bool:
        return self.find(u) == self.find(v)

    def peek_is_root(self, v: int) -> bool:
        return self.arena.peek(self._par + v) == v + 1

    def peek_depth(self, v: int) -> int:
        depth = 0
        cur = v
        while True:
            stored = self.arena.peek(self._par + cur)
            if stored in (0, cur + 1):
                return depth
            cur = stored - 1
            depth += 1


def uf_new(arena: ProbeArena, n: int, mode="amortized"):
    """Factory matching the two structure modes.

    ``mode`` is "amortized" or ("worstcase", k).
    """
    if mode == "amortized":
        return UnionFind(arena, n)
    if isinstance(mode, tuple) and len(mode) == 2 and mode[0] == "worstcase":
        return KaryUnionFind(arena, n, mode[1])
    raise InvalidParams(f"unknown union-find mode {mode!r}")
