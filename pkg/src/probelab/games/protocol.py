"""Two-player simulations of a data structure execution cut at an interval.

A game fixes everything before interval A as a memory image.  Alice owns the
ops of interval A, Bob owns interval B (whose queries carry expected
answers); the game's answer is whether every connectivity query in B comes
back negative.

The zero-error protocol sends a Bloom filter of Alice's write set; Bob
re-executes his interval, fetching filter-positive cells from Alice and
trusting the fixed image for negatives, so false positives only cost extra
round trips.  The nondeterministic protocol publishes the written-and-read
cells with contents plus a retrieval dictionary over the symmetric
difference; Alice and Bob verify independently and can only both accept
when the game's answer is true.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..arena import WORD_BITS, ProbeArena
from ..errors import BadCut, ProbelabError, SimulationDiverged
from ..oracle import NaiveConnectivity
from ..runner import RunReport, make_structure, replay_ops, replay_trace
from ..traces import Trace
from ..util import derive_seed, splitmix64
from .bloom import BloomFilter
from .retrieval import RetrievalDictionary


@dataclass
class Message:
    sender: str
    kind: str
    bits: int


@dataclass
class Transcript:
    messages: list[Message] = field(default_factory=list)
    header: dict = field(default_factory=dict)
    answer: bool | None = None

    @property
    def total_bits(self) -> int:
        return sum(m.bits for m in self.messages)

    def to_records(self):
        return [{"sender": m.sender, "kind": m.kind, "bits": m.bits}
                for m in self.messages]


@dataclass
class GameInstance:
    structure_id: str
    node_count: int
    image: list[int]
    ops_a: list[tuple]
    ops_b: list[tuple]
    tags_a: list[str]
    tags_b: list[str]
    ground_truth: bool
    seed: int = 0

    @property
    def queries_b(self) -> list[tuple]:
        return [op for op in self.ops_b if op[0] == "Q"]


def _tag_blocks(trace: Trace) -> list[tuple[str, int, int]]:
    """(label, start, end) op-index extents of each tagged block, in order."""
    blocks = []
    open_label = None
    start = 0
    for i, op in enumerate(trace.ops):
        if op[0] == "tag":
            open_label = op[1]
            start = i
        elif op[0] == "endtag" and open_label is not None:
            blocks.append((open_label, start, i + 1))
            open_label = None
    return blocks


def cut_game(trace: Trace, structure_id: str, tags_a, tags_b,
             seed: int = 0) -> GameInstance:
    """Cut a game at two adjacent tag groups of a trace.

    The cut replays the whole trace once to capture the memory image at the
    start of interval A and to cross-check the trace's recorded expectations
    against an independent oracle.
    """
    tags_a = [str(t) for t in tags_a]
    tags_b = [str(t) for t in tags_b]
    blocks = _tag_blocks(trace)
    labels = [b[0] for b in blocks]
    if not tags_a or not tags_b:
        raise BadCut("both tag groups must be non-empty")
    try:
        idx_a = [labels.index(t) for t in tags_a]
        idx_b = [labels.index(t) for t in tags_b]
    except ValueError as exc:
        raise BadCut(f"tag missing from trace: {exc}") from exc
    span_a = (min(idx_a), max(idx_a))
    span_b = (min(idx_b), max(idx_b))
    if sorted(idx_a) != list(range(span_a[0], span_a[1] + 1)) or \
       sorted(idx_b) != list(range(span_b[0], span_b[1] + 1)):
        raise BadCut("tag groups must be contiguous block runs")
    if span_a[1] + 1 != span_b[0]:
        raise BadCut("interval A must immediately precede interval B")

    first_a = blocks[span_a[0]]
    ops_a = trace.ops[first_a[1]:blocks[span_a[1]][2]]
    ops_b = trace.ops[blocks[span_b[0]][1]:blocks[span_b[1]][2]]

    report = replay_trace(trace, structure_id,
                          capture_before_tag=first_a[0])
    if report.failures:
        raise SimulationDiverged(
            f"structure missed {len(report.failures)} trace expectations")
    _verify_expectations(trace)
    truth = all(op[3] == 0 for op in ops_b if op[0] == "Q")
    return GameInstance(
        structure_id=structure_id,
        node_count=report.n_nodes,
        image=report.captured_image,
        ops_a=ops_a,
        ops_b=ops_b,
        tags_a=tags_a,
        tags_b=tags_b,
        ground_truth=truth,
        seed=derive_seed(seed, "game"),
    )


def _verify_expectations(trace: Trace) -> None:
    """Replay connectivity ops against the naive oracle; Q expects must hold."""
    oracle = NaiveConnectivity()
    saved = []
    for i, op in enumerate(trace.ops):
        kind = op[0]
        if kind in ("L", "I"):
            oracle.insert_edge(op[1], op[2])
        elif kind == "D":
            oracle.delete_edge(op[1], op[2])
        elif kind == "Q":
            if oracle.connected(op[1], op[2]) != bool(op[3]):
                raise SimulationDiverged(f"op {i}: trace expectation is wrong")
        elif kind == "snap":
            saved.append(oracle.save())
        elif kind == "restore":
            oracle.load(saved.pop())


class SimBudgetExceeded(SimulationDiverged):
    """A bounded re-simulation ran past its probe or address budget."""


class SimArena(ProbeArena):
    """Arena whose unknown cells fault through a resolver (Bob's view).

    The resolver sees an address and returns a word to adopt, or None to
    trust the current image.  Faulted values survive restores: they stand
    for memory fixed before the simulated interval began.  Budgets keep a
    simulation fed with garbage (an adversarial proof) from running away.
    """

    def __init__(self, image: list[int], resolver=None, *,
                 probe_limit: int | None = None,
                 addr_limit: int | None = None):
        super().__init__()
        self.load_image(image)
        self._resolver = resolver
        self._known: set[int] = set()
        self._faulted: dict[int, int] = {}
        self._probe_limit = probe_limit
        self._addr_limit = addr_limit

    def _guard(self, addr: int) -> None:
        if self._probe_limit is not None and len(self.log.packed) > self._probe_limit:
            raise SimBudgetExceeded("probe budget exhausted")
        if self._addr_limit is not None and addr >= self._addr_limit:
            raise SimBudgetExceeded(f"address {addr} beyond simulation window")

    def read(self, addr: int) -> int:
        self._guard(addr)
        if self._resolver is not None and addr not in self._known:
            self._known.add(addr)
            value = self._resolver(addr)
            if value is not None:
                self._faulted[addr] = value
                self.poke(addr, value)
        return super().read(addr)

    def write(self, addr: int, value: int) -> None:
        self._guard(addr)
        self._known.add(addr)
        super().write(addr, value)

    def restore(self, sid: int) -> None:
        super().restore(sid)
        for addr, value in self._faulted.items():
            self.poke(addr, value)


def _written_addresses(arena: ProbeArena, start: int) -> set[int]:
    return {ev >> 34 for ev in arena.log.packed[start:] if ev & 1}


def _read_addresses(arena: ProbeArena, start: int) -> set[int]:
    return {ev >> 34 for ev in arena.log.packed[start:] if not ev & 1}


def _alice_simulation(game: GameInstance):
    """Replay interval A from the fixed image; returns (arena, W_A)."""
    arena = SimArena(game.image)
    structure = make_structure(game.structure_id, arena, game.node_count,
                               attach=True)
    report = RunReport(structure=game.structure_id, trace_hash="", n_nodes=0)
    start = arena.probe_count
    replay_ops(structure, arena, game.ops_a, report=report)
    return arena, _written_addresses(arena, start)


def _bob_simulation(game: GameInstance, resolver, *, bounded: bool = False):
    """Replay interval B over a faulting arena; returns (arena, answers)."""
    arena = SimArena(game.image, resolver)
    structure = make_structure(game.structure_id, arena, game.node_count,
                               attach=True)
    if bounded:
        # generous for honest runs (BFS queries cost O(n) probes each, and
        # adjacency regions written during A are read during B), but finite
        # so garbage proofs cannot walk forever
        n_queries = sum(1 for op in game.ops_b if op[0] == "Q")
        arena._probe_limit = (4096 + 256 * len(game.ops_b)
                              + 64 * game.node_count * (n_queries + 2))
        arena._addr_limit = (max(len(game.image), arena._next_free)
                             + 32 * (len(game.ops_a) + len(game.ops_b))
                             + 4096)
    report = RunReport(structure=game.structure_id, trace_hash="", n_nodes=0)
    replay_ops(structure, arena, game.ops_b, report=report, collect_rows=True)
    answers = [bool(row[6]) for row in report.rows if row[1] == "Q"]
    return arena, answers


def run_bloom_protocol(game: GameInstance, p: float,
                       seed: int = 0) -> tuple[bool, Transcript]:
    """Zero-error simulation: filter of W_A, round trips on positives."""
    hash_seed = derive_seed(game.seed ^ splitmix64(seed), "bloom-hashes")
    transcript = Transcript(header={"p": p, "hash_seed": hash_seed,
                                    "protocol": "bloom"})

    alice_arena, w_a = _alice_simulation(game)
    filt = BloomFilter.build(sorted(w_a), p, hash_seed)
    transcript.messages.append(
        Message("alice", "bloom-filter", filt.serialized_bits))

    fetches = []

    def resolver(addr: int):
        if addr in filt:
            fetches.append(addr)
            return alice_arena.peek(addr)
        return None

    bob_arena, answers = _bob_simulation(game, resolver)
    for _ in fetches:
        transcript.messages.append(Message("bob", "cell-address", WORD_BITS))
        transcript.messages.append(Message("alice", "cell-content", WORD_BITS))

    answer = all(a is False for a in answers)
    transcript.messages.append(Message("bob", "answer", 1))
    transcript.answer = answer
    r_b = _read_addresses(bob_arena, 0)
    transcript.header["wa"] = len(w_a)
    transcript.header["rb"] = len(r_b)
    transcript.header["overlap"] = len(w_a & r_b)
    transcript.header["round_trips"] = len(fetches)
    if answer != game.ground_truth:
        raise SimulationDiverged("bloom protocol answer differs from truth")
    return answer, transcript


@dataclass
class Proof:
    """Public proof for the nondeterministic protocol."""

    cells: list[tuple[int, int]]
    dictionary: RetrievalDictionary

    @property
    def bits(self) -> int:
        return 2 * WORD_BITS * len(self.cells) + self.dictionary.size_bits


@dataclass
class NondetResult:
    accept_a: bool
    accept_b: bool
    proof_bits: int
    proof: Proof
    answer_b: bool | None = None

    @property
    def both_accept(self) -> bool:
        return self.accept_a and self.accept_b


def honest_proof(game: GameInstance, seed: int = 0,
                 with_stats: bool = False):
    """Prover's message from the true continuous execution of A then B.

    With ``with_stats`` also returns {wa, rb, overlap, union} of the run.
    """
    arena = SimArena(game.image)
    structure = make_structure(game.structure_id, arena, game.node_count,
                               attach=True)
    report = RunReport(structure=game.structure_id, trace_hash="", n_nodes=0)
    replay_ops(structure, arena, game.ops_a, report=report)
    mid = arena.probe_count
    w_a = _written_addresses(arena, 0)
    contents_after_a = {addr: arena.peek(addr) for addr in w_a}
    replay_ops(structure, arena, game.ops_b, report=report)
    r_b = _read_addresses(arena, mid)

    overlap = sorted(w_a & r_b)
    cells = [(addr, contents_after_a[addr]) for addr in overlap]
    payload = {addr: 0 for addr in w_a - r_b}
    payload.update({addr: 1 for addr in r_b - w_a})
    dictionary = RetrievalDictionary.build(
        payload, derive_seed(game.seed ^ splitmix64(seed), "rd-hashes"))
    proof = Proof(cells=cells, dictionary=dictionary)
    if not with_stats:
        return proof
    stats = {"wa": len(w_a), "rb": len(r_b), "overlap": len(overlap),
             "union": len(w_a | r_b)}
    return proof, stats


def run_nondet_protocol(game: GameInstance, proof: Proof,
                        alice_state=None,
                        skip_b_if_a_rejects: bool = False) -> NondetResult:
    """Check a public proof; both players may accept only on true games.

    ``alice_state`` re-uses a previous (arena, W_A) simulation of interval A;
    Alice's side is proof-independent, so fuzzing loops hoist it.  With
    ``skip_b_if_a_rejects`` Bob's simulation is skipped once Alice has
    rejected (both-accept is already settled; fuzz loops use this).
    """
    # Alice: simulate A, check X subset of W_A with exact contents, and that
    # every written cell outside X retrieves zero.
    alice_arena, w_a = alice_state if alice_state else _alice_simulation(game)
    accept_a = True
    proof_cells = dict(proof.cells)
    if len(proof_cells) != len(proof.cells):
        accept_a = False
    for addr, claimed in proof.cells:
        if addr not in w_a or alice_arena.peek(addr) != claimed:
            accept_a = False
            break
    if accept_a:
        for addr in w_a:
            if addr not in proof_cells and proof.dictionary.get(addr) != 0:
                accept_a = False
                break

    if skip_b_if_a_rejects and not accept_a:
        return NondetResult(accept_a=False, accept_b=False,
                            proof_bits=proof.bits, proof=proof)

    # Bob: simulate B resolving unknown cells through the proof; retrieval
    # zero means the prover is cheating, so he rejects.  A proof that drives
    # the simulation into nonsense (bad addresses, runaway walks) is also a
    # rejection, never an error.
    rejected = []

    def resolver(addr: int):
        claimed = proof_cells.get(addr)
        if claimed is not None:
            return claimed
        if proof.dictionary.get(addr) == 0:
            rejected.append(addr)
        return None  # dictionary says one: fixed-image cell

    try:
        _, answers = _bob_simulation(game, resolver, bounded=True)
        answer_b = all(a is False for a in answers)
    except (ProbelabError, RecursionError):
        answer_b = False
    accept_b = not rejected and answer_b
    return NondetResult(accept_a=accept_a, accept_b=accept_b,
                        proof_bits=proof.bits, proof=proof,
                        answer_b=answer_b)
