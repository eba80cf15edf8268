"""Incremental-connectivity hard instance.

A forest of M perfect degree-B trees is built bottom-up in epochs: epoch i
inserts the balanced level function f_i as links, for i = depth down to 1.
C colored vertices are wired to the roots in a fixed pattern before any
interesting update.  A metaquery proposes a coloring for a random set of M
leaves, links each leaf to its proposed color vertex, then walks the colors
with connectivity-query-then-link steps; it is true iff every query comes
back negative, and an inconsistency between proposed color i and root color
j is caught exactly at step max(i, j).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import BadQuery, InvalidParams
from ..traces import Trace
from ..util import rng_for


@dataclass(frozen=True)
class IncParams:
    """Shape of one incremental instance; every field checks out explicitly."""

    n: int
    B: int
    C: int
    M: int
    depth: int
    eps: float | None = None

    @classmethod
    def derive(cls, n: int, eps: float = 0.25, *, B: int | None = None,
               C: int | None = None, M: int | None = None,
               depth: int | None = None) -> "IncParams":
        """Round the canonical B = lg^2 n, C = n^eps, M = n^(1-eps) shapes.

        Ceilings throughout, with M rounded up so C divides it.  Any field
        can be pinned explicitly; the rest are derived.
        """
        if n < 4:
            raise InvalidParams("n must be at least 4")
        if not 0 < eps < 1:
            raise InvalidParams("eps must lie in (0, 1)")
        lg = math.log2(n)
        if B is None:
            B = math.ceil(lg * lg)
        if C is None:
            C = math.ceil(n ** eps)
        if M is None:
            M = math.ceil(n ** (1.0 - eps))
            M = ((M + C - 1) // C) * C
        if depth is None:
            # exact ceil(log_B(n/M)), at least 1
            depth, reach = 1, B
            while M * reach < n:
                depth += 1
                reach *= B
        p = cls(n=n, B=B, C=C, M=M, depth=depth, eps=eps)
        p.validate()
        return p

    def validate(self) -> None:
        if self.B < 2:
            raise InvalidParams("branching B must be >= 2")
        if self.C < 1:
            raise InvalidParams("colors C must be >= 1")
        if self.M < 1 or self.M % self.C:
            raise InvalidParams("C must divide M")
        if self.depth < 1:
            raise InvalidParams("depth must be >= 1")
        if self.M * self.B ** self.depth < self.n / 2:
            raise InvalidParams("forest too small for n (M * B^depth < n/2)")

    def level_size(self, i: int) -> int:
        return self.M * self.B ** i

    def to_dict(self) -> dict:
        return {"family": "inc", "n": self.n, "B": self.B, "C": self.C,
                "M": self.M, "depth": self.depth, "eps": self.eps}


class IncrementalInstance:
    """One sampled forest plus its trace and ground-truth mappings.

    Vertex ids: level i occupies a contiguous block (level 0 = roots first),
    colored vertices follow the whole forest, numbered by color 1..C.
    """

    def __init__(self, params: IncParams, seed: int):
        self.params = params
        self.seed = seed
        p = params
        self._level_base = [0]
        for i in range(p.depth):
            self._level_base.append(self._level_base[-1] + p.level_size(i))
        self.forest_size = self._level_base[-1] + p.level_size(p.depth)
        self.node_count = self.forest_size + p.C
        # f[i][x] maps level-i index x to its level-(i-1) parent index
        self.f: dict[int, list[int]] = {}
        for i in range(1, p.depth + 1):
            rng = rng_for(seed, f"inc-f{i}")
            slots = list(range(p.level_size(i)))
            rng.shuffle(slots)
            table = [0] * p.level_size(i)
            for j, x in enumerate(slots):
                table[x] = j // p.B
            self.f[i] = table

    # -- id helpers ---------------------------------------------------------

    def vertex(self, level: int, idx: int) -> int:
        return self._level_base[level] + idx

    def colored_vertex(self, color: int) -> int:
        if not 1 <= color <= self.params.C:
            raise InvalidParams(f"color {color} out of range")
        return self.forest_size + color - 1

    def leaf(self, idx: int) -> int:
        return self.vertex(self.params.depth, idx)

    @property
    def num_leaves(self) -> int:
        return self.params.level_size(self.params.depth)

    # -- ground truth ---------------------------------------------------------

    def ancestor(self, leaf_idx: int, level: int) -> int:
        """Level index of the leaf's ancestor on the given level."""
        x = leaf_idx
        for i in range(self.params.depth, level, -1):
            x = self.f[i][x]
        return x

    def root_color(self, leaf_idx: int) -> int:
        root = self.ancestor(leaf_idx, 0)
        return root // (self.params.M // self.params.C) + 1

    def ground_truth(self) -> dict[int, int]:
        """Leaf vertex id -> root color, by direct ancestor walks."""
        return {self.leaf(x): self.root_color(x)
                for x in range(self.num_leaves)}

    # -- metaqueries ----------------------------------------------------------

    def sample_query(self, rng) -> list[int]:
        """A uniform set of exactly M leaf indices."""
        return sorted(rng.sample(range(self.num_leaves), self.params.M))

    def true_coloring(self, query: list[int]) -> dict[int, int]:
        return {x: self.root_color(x) for x in query}

    def metaquery_oracle(self, query: list[int],
                         chi: dict[int, int]) -> tuple[bool, int | None]:
        """(consistent?, first failing step) for a proposed coloring.

        The failing step is max(i, j) over the inconsistency minimizing it.
        """
        if len(set(query)) != self.params.M:
            raise BadQuery(f"metaquery needs exactly M={self.params.M} leaves")
        first = None
        for x in query:
            i = chi[x]
            j = self.root_color(x)
            if i != j:
                step = max(i, j)
                if first is None or step < first:
                    first = step
        return first is None, first

    def _query_answers(self, query: list[int], chi: dict[int, int]) -> list[bool]:
        """Answer of each step-c connectivity test, c = 2..C, via a tiny DSU.

        Before step c the colors {1..c-1} are chained; inconsistencies add
        edges color(i)~color(j).  Step c asks whether c touches the chain.
        """
        p = self.params
        inconsistent = [(chi[x], self.root_color(x))
                        for x in query if chi[x] != self.root_color(x)]
        parent = list(range(p.C + 1))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a: int, b: int) -> None:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for a, b in inconsistent:
            union(a, b)
        answers = []
        for c in range(2, p.C + 1):
            answers.append(find(c) == find(c - 1))
            union(c, c - 1)
        return answers

    def metaquery_ops(self, query: list[int], chi: dict[int, int]) -> list[tuple]:
        """Snapshot, leaf links, query/link chain, restore."""
        if len(set(query)) != self.params.M:
            raise BadQuery(f"metaquery needs exactly M={self.params.M} leaves")
        ops: list[tuple] = [("snap",)]
        for x in query:
            ops.append(("L", self.leaf(x), self.colored_vertex(chi[x])))
        answers = self._query_answers(query, chi)
        for c in range(2, self.params.C + 1):
            ops.append(("Q", self.colored_vertex(c),
                        self.colored_vertex(c - 1), int(answers[c - 2])))
            ops.append(("L", self.colored_vertex(c),
                        self.colored_vertex(c - 1)))
        ops.append(("restore",))
        return ops

    def metaquery_trace(self, query: list[int], chi: dict[int, int]) -> Trace:
        return Trace(ops=self.metaquery_ops(query, chi), seed=self.seed,
                     params=self.params.to_dict())

    # -- the full trace ---------------------------------------------------------

    def prefix_ops(self) -> list[tuple]:
        p = self.params
        ops = []
        per_color = p.M // p.C
        for c in range(1, p.C + 1):
            for r in range((c - 1) * per_color, c * per_color):
                ops.append(("L", self.colored_vertex(c), self.vertex(0, r)))
        return ops

    def epoch_ops(self, i: int) -> list[tuple]:
        ops: list[tuple] = [("tag", str(i))]
        for x in range(self.params.level_size(i)):
            ops.append(("L", self.vertex(i, x), self.vertex(i - 1, self.f[i][x])))
        ops.append(("endtag",))
        return ops

    def trace(self, metaqueries: int = 1,
              queries: list[tuple[list[int], dict[int, int]]] | None = None) -> Trace:
        """Prefix edges, epochs depth..1, then isolated metaqueries.

        ``queries`` overrides the sampled (query, coloring) pairs; by default
        each metaquery receives the true coloring of a fresh random query.
        """
        ops = self.prefix_ops()
        for i in range(self.params.depth, 0, -1):
            ops.extend(self.epoch_ops(i))
        if queries is None:
            queries = []
            for j in range(metaqueries):
                rng = rng_for(self.seed, f"inc-mq{j}")
                q = self.sample_query(rng)
                queries.append((q, self.true_coloring(q)))
        for j, (q, chi) in enumerate(queries):
            ops.append(("tag", f"mq:{j}"))
            ops.extend(self.metaquery_ops(q, chi))
            ops.append(("endtag",))
        meta = self.params.to_dict()
        meta["metaqueries"] = len(queries)
        return Trace(ops=ops, seed=self.seed, params=meta)


def distinct_ancestors(instance: IncrementalInstance, qstar: list[int],
                       level: int) -> int:
    """Number of distinct level-``level`` ancestors of a leaf multiset."""
    if not 0 <= level <= instance.params.depth:
        raise InvalidParams(f"level {level} out of range")
    return len({instance.ancestor(x, level) for x in qstar})
