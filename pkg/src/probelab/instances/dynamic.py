"""Fully-dynamic hard instance: a permutation grid driven in bit-reversal order.

Vertices form an M x (n/M) grid whose inter-column edges are matchings;
matching j connects (x, col j) to (pi_j(x), col j+1).  The schedule walks
positions j = sigma(i) + 1 where sigma is the bit-reversal permutation, so
the columns touched by the two halves of any timeline split interleave
perfectly.  Each step replaces pi_j with a fresh random permutation (M edge
deletions plus M insertions) and then runs a coloring query against column
j, expressed as colored-vertex insertions, chained connectivity tests, and
the deletion of everything the query inserted.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidParams, OutOfRange
from ..traces import Trace
from ..util import rng_for


def bit_reversal(i: int, bits: int) -> int:
    """Reverse the low ``bits`` bits of i."""
    if bits < 0 or not 0 <= i < (1 << max(bits, 0)):
        raise OutOfRange(f"{i} is not a {bits}-bit value")
    out = 0
    for _ in range(bits):
        out = (out << 1) | (i & 1)
        i >>= 1
    return out


def interleave_check(ja, jb) -> bool:
    """Perfect interleaving: between consecutive sorted values of jb lies
    exactly one value of ja, and ja never reaches past jb's maximum (values
    below jb's minimum are fine; the schedule always leaves one there)."""
    sa = sorted(ja)
    sb = sorted(jb)
    if sa and sb and sa[-1] > sb[-1]:
        return False
    for lo, hi in zip(sb, sb[1:]):
        if sum(1 for a in sa if lo < a < hi) != 1:
            return False
    return True


@dataclass(frozen=True)
class DynParams:
    M: int
    cols: int
    C: int

    def __post_init__(self):
        if self.M < 1 or self.C < 1 or self.M % self.C:
            raise InvalidParams("need C >= 1 dividing M")
        steps = self.cols - 1
        if steps < 1 or steps & (steps - 1):
            raise InvalidParams("n/M - 1 must be a power of two")

    @classmethod
    def derive(cls, n: int, eps: float = 0.25, *, M: int | None = None,
               C: int | None = None, cols: int | None = None) -> "DynParams":
        if M is None or cols is None:
            if not 0 < eps < 1:
                raise InvalidParams("eps must lie in (0, 1)")
            if C is None:
                C = max(1, round(n ** eps))
            if M is None:
                M = max(C, round(n ** (1.0 - eps)))
                M = ((M + C - 1) // C) * C
            if cols is None:
                # closest power-of-two-plus-one column count
                target = max(2, n // M)
                steps = 1
                while steps * 2 + 1 <= target:
                    steps *= 2
                cols = steps + 1
        if C is None:
            C = 1
        return cls(M=M, cols=cols, C=C)

    @property
    def n(self) -> int:
        return self.M * self.cols

    @property
    def steps(self) -> int:
        return self.cols - 1

    @property
    def schedule_bits(self) -> int:
        return self.steps.bit_length() - 1

    def to_dict(self) -> dict:
        return {"family": "dyn", "M": self.M, "cols": self.cols, "C": self.C,
                "n": self.n}


class DynamicInstance:
    """One sampled update schedule together with its trace and oracles."""

    def __init__(self, params: DynParams, seed: int):
        self.params = params
        self.seed = seed
        rng = rng_for(seed, "dyn-updates")
        self.schedule: list[int] = []
        self.new_perms: list[list[int]] = []
        for i in range(params.steps):
            self.schedule.append(bit_reversal(i, params.schedule_bits) + 1)
            perm = list(range(params.M))
            rng.shuffle(perm)
            self.new_perms.append(perm)

    # -- ids ---------------------------------------------------------------

    def vertex(self, row: int, col: int) -> int:
        """Grid vertex id; columns are 1-based."""
        return (col - 1) * self.params.M + row

    def colored_vertex(self, color: int) -> int:
        return self.params.n + color - 1

    @property
    def node_count(self) -> int:
        return self.params.n + self.params.C

    def base_color(self, row: int) -> int:
        """Fixed color of a first-column vertex."""
        return row // (self.params.M // self.params.C) + 1

    # -- permutation algebra -------------------------------------------------

    def perms_before_step(self, step: int) -> list[list[int]]:
        """State of all matchings just before schedule step ``step``."""
        perms = [list(range(self.params.M)) for _ in range(self.params.steps)]
        for s in range(step):
            j = self.schedule[s]
            perms[j - 1] = self.new_perms[s]
        return perms

    @staticmethod
    def compose_prefix(perms: list[list[int]], j: int) -> list[int]:
        """pi_{<j} = pi_{j-1} o ... o pi_1 (identity when j == 1)."""
        m = len(perms[0]) if perms else 0
        acc = list(range(m))
        for idx in range(j - 1):
            p = perms[idx]
            acc = [p[x] for x in acc]
        return acc

    def column_coloring(self, step: int) -> list[int]:
        """Consistent coloring of column j at schedule step ``step``.

        Row r of column j descends from first-column row pi_{<j}^{-1}(r), so
        the consistent proposal colors r with that origin's fixed color.
        """
        j = self.schedule[step]
        # the step's own update writes pi_j, which pi_{<j} never includes
        prefix = self.compose_prefix(self.perms_before_step(step), j)
        chi = [0] * self.params.M
        for origin, r in enumerate(prefix):
            chi[r] = self.base_color(origin)
        return chi

    # -- trace ---------------------------------------------------------------

    def prefix_ops(self) -> list[tuple]:
        p = self.params
        ops = []
        for j in range(1, p.cols):
            for r in range(p.M):
                ops.append(("I", self.vertex(r, j), self.vertex(r, j + 1)))
        per_color = p.M // p.C
        for c in range(1, p.C + 1):
            for r in range((c - 1) * per_color, c * per_color):
                ops.append(("I", self.colored_vertex(c), self.vertex(r, 1)))
        return ops

    def step_ops(self, step: int,
                 chi: list[int] | None = None) -> list[tuple]:
        """Update + query pair at one schedule position, fully expanded."""
        p = self.params
        j = self.schedule[step]
        old = self.perms_before_step(step)[j - 1]
        new = self.new_perms[step]
        ops: list[tuple] = [("tag", str(step))]
        for x in range(p.M):
            ops.append(("D", self.vertex(x, j), self.vertex(old[x], j + 1)))
        for x in range(p.M):
            ops.append(("I", self.vertex(x, j), self.vertex(new[x], j + 1)))
        consistent = self.column_coloring(step)
        proposal = consistent if chi is None else chi
        inserted: list[tuple[int, int]] = []
        for r in range(p.M):
            edge = (self.colored_vertex(proposal[r]), self.vertex(r, j))
            ops.append(("I", *edge))
            inserted.append(edge)
        answers = self._query_answers(proposal, consistent)
        for c in range(2, p.C + 1):
            ops.append(("Q", self.colored_vertex(c), self.colored_vertex(c - 1),
                        int(answers[c - 2])))
            edge = (self.colored_vertex(c), self.colored_vertex(c - 1))
            ops.append(("I", *edge))
            inserted.append(edge)
        for edge in reversed(inserted):
            ops.append(("D", *edge))
        ops.append(("endtag",))
        return ops

    def _query_answers(self, proposal: list[int],
                       consistent: list[int]) -> list[bool]:
        """Chain-walk answers given the proposed vs consistent colorings."""
        p = self.params
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

        for got, want in zip(proposal, consistent):
            if got != want:
                union(got, want)
        answers = []
        for c in range(2, p.C + 1):
            answers.append(find(c) == find(c - 1))
            union(c, c - 1)
        return answers

    def trace(self, corrupt_steps: dict[int, list[int]] | None = None) -> Trace:
        """Full instance; ``corrupt_steps`` maps step -> explicit proposal."""
        ops = self.prefix_ops()
        for step in range(self.params.steps):
            chi = corrupt_steps.get(step) if corrupt_steps else None
            ops.extend(self.step_ops(step, chi))
        meta = self.params.to_dict()
        return Trace(ops=ops, seed=self.seed, params=meta)

    # -- schedule analysis ------------------------------------------------------

    def touched_columns(self, leaf_range) -> set[int]:
        return {self.schedule[i] for i in leaf_range}
