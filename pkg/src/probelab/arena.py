"""Instrumented cell-probe memory.

All persistent state of every structure lives in a flat array of 64-bit
words, and every read/write is appended to a total-ordered event log tagged
by the active interval.  Interval statistics, last-writer ("fresh") sets and
timeline-tree charging all run over these logs, so the costs measured here
are exactly the costs the cost bounds talk about.

Events are packed into single integers (addr << 34 | tag_index << 2 | kind)
to keep logging cheap; the event's time is its index in the log.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import (
    InvalidArgs,
    InvalidInterval,
    NestedInterval,
    ProtocolViolation,
    UnknownSnapshot,
)

WORD_BITS = 64
WORD_MASK = (1 << WORD_BITS) - 1

#: Tag carried by events logged outside any explicit interval.
PREFIX_TAG = "prefix"

_KIND_WRITE = 1
_TAG_SHIFT = 2
_ADDR_SHIFT = 34
#: Hard cap on addresses so packed events stay comfortably inside one int.
MAX_ADDR = 1 << 28


class ProbeLog:
    """Append-only record of probes; an event's time equals its log index."""

    __slots__ = ("packed", "tag_names")

    def __init__(self) -> None:
        self.packed: list[int] = []
        self.tag_names: list = [PREFIX_TAG]

    def __len__(self) -> int:
        return len(self.packed)

    def events(self, start: int = 0, end: int | None = None) -> Iterator[tuple]:
        """Yield (time, kind, addr, tag) tuples, kind in {"R", "W"}."""
        names = self.tag_names
        packed = self.packed
        if end is None:
            end = len(packed)
        for t in range(start, end):
            ev = packed[t]
            kind = "W" if ev & 1 else "R"
            yield t, kind, ev >> _ADDR_SHIFT, names[(ev >> _TAG_SHIFT) & 0xFFFFFFFF]

    def export_lines(self) -> Iterator[str]:
        """One event per line: ``t <time> <R|W> <addr> <tag>``."""
        for t, kind, addr, tag in self.events():
            yield f"t {t} {kind} {addr} {tag}"

    def check_read_before_write(self) -> bool:
        """Single scan verifying every write is preceded by a read of its cell."""
        prev_read_addr = -1
        for ev in self.packed:
            addr = ev >> _ADDR_SHIFT
            if ev & 1:
                if prev_read_addr != addr:
                    return False
                prev_read_addr = -1
            else:
                prev_read_addr = addr
        return True


@dataclass
class IntervalStats:
    """Write/read sets of two tag groups plus per-epoch last-writer sets."""

    W: set
    R: set
    overlap: int
    union_size: int
    fresh: dict

    def to_record(self, tags_a, tags_b) -> dict:
        return {
            "tagsA": sorted(str(t) for t in tags_a),
            "tagsB": sorted(str(t) for t in tags_b),
            "W": len(self.W),
            "R": len(self.R),
            "overlap": self.overlap,
            "union": self.union_size,
        }


def interval_stats(log: ProbeLog, tags_a: Iterable, tags_b: Iterable) -> IntervalStats:
    """Compute W (writes under tags_a), R (reads under tags_b) and overlaps.

    ``fresh`` maps every integer-labelled tag i to the cells last written in
    that epoch: W_i minus the writes of any smaller-indexed epoch occurring
    later in time (epoch numbering decreases with time in the incremental
    instance, so this is exactly W_i \\ W_{<i}).
    """
    set_a, set_b = set(tags_a), set(tags_b)
    if set_a & set_b:
        raise InvalidArgs("tagsA and tagsB must be disjoint")
    names = log.tag_names
    in_a = [name in set_a for name in names]
    in_b = [name in set_b for name in names]
    epoch_of: list[int | None] = []
    for name in names:
        try:
            epoch_of.append(int(name))
        except (TypeError, ValueError):
            epoch_of.append(None)

    w_set: set[int] = set()
    r_set: set[int] = set()
    epoch_writes: dict[int, set[int]] = {}
    epoch_first_time: dict[int, int] = {}
    for t, ev in enumerate(log.packed):
        tag_idx = (ev >> _TAG_SHIFT) & 0xFFFFFFFF
        addr = ev >> _ADDR_SHIFT
        if ev & 1:
            if in_a[tag_idx]:
                w_set.add(addr)
            epoch = epoch_of[tag_idx]
            if epoch is not None:
                epoch_writes.setdefault(epoch, set()).add(addr)
                epoch_first_time.setdefault(epoch, t)
        else:
            if in_b[tag_idx]:
                r_set.add(addr)
            epoch = epoch_of[tag_idx]
            if epoch is not None:
                epoch_first_time.setdefault(epoch, t)

    fresh: dict[int, set[int]] = {}
    for i, writes in epoch_writes.items():
        later_smaller: set[int] = set()
        for j, wj in epoch_writes.items():
            if j < i and epoch_first_time[j] > epoch_first_time[i]:
                later_smaller |= wj
        fresh[i] = writes - later_smaller

    return IntervalStats(
        W=w_set,
        R=r_set,
        overlap=len(w_set & r_set),
        union_size=len(w_set | r_set),
        fresh=fresh,
    )


class TimelineTree:
    """Perfect binary tree over consecutive time windows.

    Leaf i covers [boundaries[i], boundaries[i+1]); nodes use heap ids with
    the root at 1 and leaves at n_leaves .. 2*n_leaves-1.
    """

    def __init__(self, boundaries: list[int]) -> None:
        n = len(boundaries) - 1
        if n < 1 or n & (n - 1):
            raise InvalidArgs("timeline needs a power-of-two leaf count")
        if any(boundaries[i] >= boundaries[i + 1] for i in range(n)):
            raise InvalidArgs("boundaries must be strictly increasing")
        self.boundaries = list(boundaries)
        self.n_leaves = n

    @property
    def start(self) -> int:
        return self.boundaries[0]

    @property
    def end(self) -> int:
        return self.boundaries[-1]

    def leaf_node(self, t: int) -> int | None:
        """Heap id of the leaf whose window contains time t, if any."""
        if t < self.start or t >= self.end:
            return None
        return self.n_leaves + bisect_right(self.boundaries, t) - 1

    def lca(self, a: int, b: int) -> int:
        while a != b:
            if a > b:
                a >>= 1
            else:
                b >>= 1
        return a

    def children(self, node: int) -> tuple[int, int]:
        return 2 * node, 2 * node + 1

    def is_leaf(self, node: int) -> bool:
        return node >= self.n_leaves

    def internal_nodes(self) -> range:
        return range(1, self.n_leaves)

    def leaf_indices(self, node: int) -> range:
        """Leaf positions (0-based) covered by a heap node."""
        lo, hi = node, node
        while lo < self.n_leaves:
            lo, hi = 2 * lo, 2 * hi + 1
        return range(lo - self.n_leaves, hi - self.n_leaves + 1)

    def depth(self, node: int) -> int:
        return node.bit_length() - 1


def charge_to_lca(log: ProbeLog, tree: TimelineTree) -> dict[int, int]:
    """Charge each read to the LCA of its own time and its cell's last write.

    Reads of cells with no prior write inside the tree's range are uncharged,
    as are events outside the range; every charged read lands on exactly one
    node, so the totals never double-count.
    """
    counts: dict[int, int] = {}
    last_write: dict[int, int] = {}
    t0, t1 = tree.start, tree.end
    for t, ev in enumerate(log.packed):
        addr = ev >> _ADDR_SHIFT
        if ev & 1:
            last_write[addr] = t
        else:
            if t < t0 or t >= t1:
                continue
            wt = last_write.get(addr)
            if wt is None or wt < t0:
                continue
            node = tree.lca(tree.leaf_node(wt), tree.leaf_node(t))
            counts[node] = counts.get(node, 0) + 1
    return counts


class ProbeArena:
    """Flat word memory with probe logging, intervals and snapshots.

    Single-writer: one logical execution mutates an arena at a time.
    Unwritten cells read as zero, and every write must be preceded
    immediately by a read of the same cell.
    """

    def __init__(self) -> None:
        self._cells: list[int] = []
        self.log = ProbeLog()
        self._append = self.log.packed.append  # hot-path bound method
        self._tag_ids: dict = {PREFIX_TAG: 0}
        self._cur_tag = 0
        self._cur_shifted = 0  # current tag pre-shifted into event position
        self._interval_open = False
        self._snapshots: dict[int, list[int]] = {}
        self._next_snapshot = 0
        self._next_free = 0
        self._pending_read = -1

    # -- probes ---------------------------------------------------------

    def read(self, addr: int) -> int:
        if addr < 0 or addr >= MAX_ADDR:
            raise InvalidArgs(f"address {addr} out of range")
        self._append((addr << _ADDR_SHIFT) | self._cur_shifted)
        self._pending_read = addr
        try:
            return self._cells[addr]
        except IndexError:
            return 0

    def write(self, addr: int, value: int) -> None:
        if self._pending_read != addr:
            raise ProtocolViolation(
                f"write({addr}) must immediately follow read({addr})"
            )
        if value & ~WORD_MASK:
            raise InvalidArgs("cell values are unsigned 64-bit words")
        self._append((addr << _ADDR_SHIFT) | self._cur_shifted | _KIND_WRITE)
        self._pending_read = -1
        cells = self._cells
        try:
            cells[addr] = value
        except IndexError:
            cells.extend([0] * (addr + 1 - len(cells)))
            cells[addr] = value

    def update(self, addr: int, value: int) -> None:
        """Read-then-write pair; the convention every mutation goes through."""
        self.read(addr)
        self.write(addr, value)

    @property
    def probe_count(self) -> int:
        return len(self.log.packed)

    # -- intervals ------------------------------------------------------

    def set_interval(self, tag) -> None:
        if self._interval_open:
            raise NestedInterval(f"interval already active, cannot open {tag!r}")
        idx = self._tag_ids.get(tag)
        if idx is None:
            idx = len(self.log.tag_names)
            self._tag_ids[tag] = idx
            self.log.tag_names.append(tag)
        self._cur_tag = idx
        self._cur_shifted = idx << _TAG_SHIFT
        self._interval_open = True

    def end_interval(self) -> None:
        if not self._interval_open:
            raise InvalidInterval("no interval active")
        self._cur_tag = 0
        self._cur_shifted = 0
        self._interval_open = False

    @property
    def current_tag(self):
        return self.log.tag_names[self._cur_tag]

    # -- snapshots ------------------------------------------------------

    def snapshot(self) -> int:
        sid = self._next_snapshot
        self._next_snapshot += 1
        self._snapshots[sid] = self._cells.copy()
        return sid

    def restore(self, sid: int) -> None:
        image = self._snapshots.get(sid)
        if image is None:
            raise UnknownSnapshot(f"snapshot {sid} unknown")
        self._cells = image.copy()

    def clear(self) -> None:
        """Reset to a fresh arena; outstanding snapshot ids become stale."""
        self.__init__()

    # -- unlogged plumbing (allocation, simulation, tests) ---------------

    def alloc(self, count: int) -> int:
        """Reserve a region of the address space; costs no probes.

        The cell array is extended eagerly (still all-zeros, still unlogged)
        so region reads take the fast path.
        """
        base = self._next_free
        self._next_free += count
        cells = self._cells
        if self._next_free > len(cells):
            cells.extend([0] * (self._next_free - len(cells)))
        return base

    def peek(self, addr: int) -> int:
        cells = self._cells
        return cells[addr] if 0 <= addr < len(cells) else 0

    def poke(self, addr: int, value: int) -> None:
        cells = self._cells
        if addr >= len(cells):
            cells.extend([0] * (addr + 1 - len(cells)))
        cells[addr] = value

    def image(self) -> list[int]:
        return self._cells.copy()

    def load_image(self, image: list[int]) -> None:
        self._cells = list(image)
