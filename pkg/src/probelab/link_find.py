"""Link-find: joins between arbitrary nodes, finds with stable representatives.

Nodes carry one of three roles.  Free nodes have never been touched by a
find or absorbed by a non-free component; their edges live in arena-resident
adjacency lists and their components are scanned on demand.  Leaf nodes
point at a union node; union nodes participate in an embedded union-find
forest.  The invariant is purity: a component containing a free node is
entirely free.

Each node keeps one packed state word, adjacency-list head << 2 | role,
and adjacency records are themselves packed words (neighbor+1) << 30 | next;
both are ordinary cell packing inside the O(lg n)-bit word model.

The general variant converts any non-singleton free component on find.  The
forest variant (for workloads whose links always join distinct components)
leaves components smaller than the threshold tau = alpha(q, q) free, which
caps the number of union nodes at u/tau plus the finds.
"""

from __future__ import annotations

from .ackermann import alpha
from .arena import ProbeArena
from .errors import InvalidParams, OutOfRange, SelfLink
from .union_find import UnionFind

_FREE, _LEAF, _UNION = 0, 1, 2


class LinkFind:
    """Role-based link/find structure over a probe arena.

    The arena must not be allocated from after construction: the adjacency
    cons region grows open-ended at the top of the address space.
    """

    def __init__(self, arena: ProbeArena, n: int, *, variant: str = "general",
                 q_declared: int | None = None, u_declared: int | None = None,
                 tau: int | None = None):
        if n < 1:
            raise InvalidParams("need at least one node")
        if variant not in ("general", "forest"):
            raise InvalidParams(f"unknown variant {variant!r}")
        self.arena = arena
        self.n = n
        self.variant = variant
        self.q_declared = q_declared
        self.u_declared = u_declared
        if variant == "forest":
            if tau is None:
                if q_declared is None:
                    raise InvalidParams("forest variant needs q_declared or tau")
                tau = alpha(q_declared, q_declared)
            self.tau = max(2, tau)
        else:
            self.tau = 2  # general: any non-singleton converts
        self._state = arena.alloc(n)  # adjacency head << 2 | role
        self._ptr = arena.alloc(n)    # leaf -> union-node anchor
        self._bitmap = arena.alloc((n + 63) // 64)
        self._hdr = arena.alloc(1)    # cons-record bump counter
        self.inner = UnionFind(arena, n, preinit=False)
        self._cons = arena.alloc(0)   # open region; must stay last
        self._start_probes = arena.probe_count
        self.links = 0
        self.finds = 0
        self.union_nodes = 0
        self.conversions = 0  # nodes that ever lost their freedom

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise OutOfRange(f"node {v} not in [0, {self.n})")

    # -- operations -------------------------------------------------------

    def link(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        if u == v:
            raise SelfLink(f"cannot link {u} to itself")
        a = self.arena
        su = a.read(self._state + u)
        sv = a.read(self._state + v)
        ru = su & 3
        rv = sv & 3
        if ru == _FREE and rv == _FREE:
            self._add_edge(u, v, su, sv)
        elif ru == _FREE:
            anchor = v if rv == _UNION else a.read(self._ptr + v)
            self._absorb_free(u, anchor)
        elif rv == _FREE:
            anchor = u if ru == _UNION else a.read(self._ptr + u)
            self._absorb_free(v, anchor)
        else:
            pu = u if ru == _UNION else a.read(self._ptr + u)
            pv = v if rv == _UNION else a.read(self._ptr + v)
            x = self.inner.find(pu)
            y = self.inner.find(pv)
            if x != y:
                self.inner.union(x, y)
        self.links += 1

    def find(self, v: int) -> int:
        self._check(v)
        a = self.arena
        state = a.read(self._state + v)
        role = state & 3
        self.finds += 1
        if role == _UNION:
            return self.inner.find(v)
        if role == _LEAF:
            return self.inner.find(a.read(self._ptr + v))
        if not state >> 2:
            return v  # free singleton: no adjacency, stays free
        comp = self._scan_component(v)
        smallest = min(comp)
        if len(comp) < self.tau:
            # forest variant below threshold: stays free
            return smallest
        self._convert(comp, smallest)
        return smallest

    def connected(self, u: int, v: int) -> bool:
        return self.find(u) == self.find(v)

    def total_cost(self) -> int:
        """Cumulative arena probes attributable to this structure."""
        return self.arena.probe_count - self._start_probes

    # -- internals --------------------------------------------------------

    def _add_edge(self, u: int, v: int, su: int, sv: int) -> None:
        # caller already read both state words; their head fields feed the
        # new records, so only the rewrites are paid here
        a = self.arena
        read, write = a.read, a.write
        state = self._state
        cons = self._cons
        bump = read(self._hdr)
        write(self._hdr, bump + 2)
        read(cons + bump)
        write(cons + bump, ((v + 1) << 30) | (su >> 2))
        read(state + u)
        write(state + u, ((bump + 1) << 2) | _FREE)
        read(cons + bump + 1)
        write(cons + bump + 1, ((u + 1) << 30) | (sv >> 2))
        read(state + v)
        write(state + v, ((bump + 2) << 2) | _FREE)

    def _scan_component(self, start: int) -> list[int]:
        """BFS over free adjacency; visited bits live in the arena."""
        a = self.arena
        bitmap = self._bitmap
        cons = self._cons
        state = self._state
        comp = [start]
        waddr = bitmap + (start >> 6)
        word = a.read(waddr)
        a.write(waddr, word | (1 << (start & 63)))
        touched = {waddr}
        stack = [start]
        while stack:
            x = stack.pop()
            rec = a.read(state + x) >> 2
            while rec:
                packed = a.read(cons + rec - 1)
                nb = (packed >> 30) - 1
                rec = packed & 0x3FFFFFFF
                waddr = bitmap + (nb >> 6)
                word = a.read(waddr)
                bit = 1 << (nb & 63)
                if not word & bit:
                    a.write(waddr, word | bit)
                    touched.add(waddr)
                    comp.append(nb)
                    stack.append(nb)
        for waddr in touched:
            a.update(waddr, 0)
        return comp

    def _convert(self, comp: list[int], smallest: int) -> None:
        # conversion drops the dead adjacency heads along with the role bits
        a = self.arena
        self.inner.make_set(smallest)
        a.update(self._state + smallest, _UNION)
        for x in comp:
            if x != smallest:
                a.update(self._state + x, _LEAF)
                a.update(self._ptr + x, smallest)
        self.union_nodes += 1
        self.conversions += len(comp)

    def _absorb_free(self, x: int, anchor: int) -> None:
        """Every node of x's free component becomes a leaf under anchor."""
        comp = self._scan_component(x)
        a = self.arena
        for node in comp:
            a.update(self._state + node, _LEAF)
            a.update(self._ptr + node, anchor)
        self.conversions += len(comp)

    # -- unlogged inspection (tests, invariant scans) -----------------------

    def peek_role(self, v: int) -> str:
        return ("free", "leaf", "union")[self.arena.peek(self._state + v) & 3]

    def peek_anchor(self, v: int) -> int:
        return self.arena.peek(self._ptr + v)

    def peek_free_neighbors(self, v: int) -> list[int]:
        out = []
        rec = self.arena.peek(self._state + v) >> 2
        while rec:
            packed = self.arena.peek(self._cons + rec - 1)
            out.append((packed >> 30) - 1)
            rec = packed & 0x3FFFFFFF
        return out

    def check_purity(self) -> bool:
        """No free-adjacency edge may touch a converted node."""
        for v in range(self.n):
            if self.peek_role(v) == "free":
                if any(self.peek_role(w) != "free"
                       for w in self.peek_free_neighbors(v)):
                    return False
        return True
