"""Trace replay against a chosen structure, with per-op probe accounting.

Structure ids:

    uf-amortized        amortized union-find (links must join current roots)
    uf-worstcase:<k>    worst-case trade-off forest, arity k
    lf-general          general link-find
    lf-forest           forest link-find (q/u declared from the trace)
    naive               arena-resident edge multiset (the oracle structure)

Replays check every expectation carried by the trace; a run with zero
failures is what "this structure is correct on this workload" means here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .arena import ProbeArena
from .errors import ExpectationFailed, InvalidParams, TraceFormatError, \
    UnsupportedOp
from .graphstore import ArenaGraphStore
from .link_find import LinkFind
from .traces import Trace
from .union_find import KaryUnionFind, UnionFind

RUN_SCHEMA = "probelab-run-v1"


def parse_structure_id(structure_id: str) -> tuple[str, dict]:
    name, _, arg = structure_id.partition(":")
    if name == "uf-worstcase":
        if not arg:
            raise InvalidParams("uf-worstcase needs :k, e.g. uf-worstcase:8")
        return name, {"k": int(arg)}
    if arg:
        raise InvalidParams(f"structure {name!r} takes no argument")
    if name not in ("uf-amortized", "lf-general", "lf-forest", "naive"):
        raise InvalidParams(f"unknown structure {structure_id!r}")
    return name, {}


def make_structure(structure_id: str, arena: ProbeArena, n: int, *,
                   declared_q: int | None = None,
                   declared_u: int | None = None,
                   attach: bool = False):
    name, args = parse_structure_id(structure_id)
    if name == "uf-amortized":
        return UnionFind(arena, n, preinit=not attach)
    if name == "uf-worstcase":
        return KaryUnionFind(arena, n, args["k"])
    if name == "lf-general":
        return LinkFind(arena, n, variant="general")
    if name == "lf-forest":
        return LinkFind(arena, n, variant="forest",
                        q_declared=max(1, declared_q or 1),
                        u_declared=declared_u)
    return ArenaGraphStore(arena, n, attach=attach)


@dataclass
class RunReport:
    structure: str
    trace_hash: str
    n_nodes: int
    n_ops: int = 0
    total_probes: int = 0
    failures: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    tag_spans: dict = field(default_factory=dict)
    captured_image: list | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        return json.dumps({
            "schema": RUN_SCHEMA,
            "structure": self.structure,
            "trace_hash": self.trace_hash,
            "nodes": self.n_nodes,
            "ops": self.n_ops,
            "total_probes": self.total_probes,
            "failures": self.failures,
            "tag_spans": self.tag_spans,
        }, indent=2, sort_keys=True)

    def csv_lines(self):
        yield f"# schema: {RUN_SCHEMA}"
        yield "index,kind,a,b,probes,cumulative,value,expected,ok"
        for row in self.rows:
            yield ",".join("" if x is None else str(x) for x in row)


def replay_ops(structure, arena: ProbeArena, ops, *, report: RunReport,
               start_index: int = 0, collect_rows: bool = False,
               snap_stack: list | None = None):
    """Replay a block of ops; mutates the report in place."""
    is_uf = isinstance(structure, (UnionFind, KaryUnionFind))
    is_store = isinstance(structure, ArenaGraphStore)
    if snap_stack is None:
        snap_stack = []
    open_label = None
    cumulative = report.total_probes
    for idx, op in enumerate(ops, start=start_index):
        kind = op[0]
        before = arena.probe_count
        value = None
        expected = None
        ok = True
        if kind == "L":
            u, v = op[1], op[2]
            if is_uf:
                if not (structure.peek_is_root(u) and structure.peek_is_root(v)):
                    raise UnsupportedOp(
                        f"op {idx}: link between non-roots on {report.structure}")
                value = structure.union(u, v)
            else:
                structure.link(u, v)
        elif kind == "F":
            expected = op[2]
            value = structure.find(op[1])
            if expected is not None and value != expected:
                ok = False
        elif kind == "I":
            if not is_store:
                raise UnsupportedOp(f"{report.structure} cannot insert edges")
            structure.insert_edge(op[1], op[2])
        elif kind == "D":
            if not is_store:
                raise UnsupportedOp(f"{report.structure} cannot delete edges")
            structure.delete_edge(op[1], op[2])
        elif kind == "Q":
            expected = bool(op[3])
            value = structure.connected(op[1], op[2])
            if value != expected:
                ok = False
        elif kind == "tag":
            arena.set_interval(op[1])
            open_label = op[1]
            report.tag_spans.setdefault(op[1], []).append(
                [arena.probe_count, None])
        elif kind == "endtag":
            arena.end_interval()
            if open_label is not None:
                report.tag_spans[open_label][-1][1] = arena.probe_count
                open_label = None
        elif kind == "snap":
            snap_stack.append(arena.snapshot())
            if is_store:
                structure.note_snapshot()
        elif kind == "restore":
            if not snap_stack:
                raise TraceFormatError(f"op {idx}: restore without snapshot")
            arena.restore(snap_stack.pop())
        else:
            raise TraceFormatError(f"op {idx}: unknown op kind {kind!r}")

        probes = arena.probe_count - before
        cumulative += probes
        report.n_ops += 1
        if not ok:
            report.failures.append({
                "index": idx, "kind": kind,
                "expected": expected,
                "actual": value if not isinstance(value, bool) else int(value),
            })
        if collect_rows and kind in ("L", "F", "I", "D", "Q"):
            a_arg = op[1]
            b_arg = op[2] if kind != "F" else None
            report.rows.append((
                idx, kind, a_arg, b_arg, probes, cumulative,
                int(value) if isinstance(value, bool) else value,
                int(expected) if isinstance(expected, bool) else expected,
                int(ok),
            ))
    report.total_probes = cumulative


def replay_trace(trace: Trace, structure_id: str, *,
                 arena: ProbeArena | None = None,
                 n_nodes: int | None = None,
                 collect_rows: bool = False,
                 strict: bool = False,
                 capture_before_tag: str | None = None) -> RunReport:
    """Replay a whole trace on a fresh structure.

    ``strict`` raises ExpectationFailed on the first wrong answer instead of
    recording it.  ``capture_before_tag`` snapshots the raw memory image just
    before the named interval opens (used to cut communication games).
    """
    if arena is None:
        arena = ProbeArena()
    n = n_nodes if n_nodes is not None else trace.node_count()
    counts = trace.op_counts()
    structure = make_structure(
        structure_id, arena, n,
        declared_q=counts.get("F", 0), declared_u=counts.get("L", 0))
    report = RunReport(structure=structure_id, trace_hash=trace.content_hash(),
                       n_nodes=n)
    if capture_before_tag is None:
        replay_ops(structure, arena, trace.ops, report=report,
                   collect_rows=collect_rows)
        if strict and report.failures:
            f = report.failures[0]
            raise ExpectationFailed(
                f"op {f['index']}: expected {f['expected']}, "
                f"got {f['actual']}")
        return report
    # split at the capture point, image the memory, then continue
    for split, op in enumerate(trace.ops):
        if op[0] == "tag" and op[1] == capture_before_tag:
            break
    else:
        raise InvalidParams(f"tag {capture_before_tag!r} not in trace")
    stack: list = []
    replay_ops(structure, arena, trace.ops[:split], report=report,
               collect_rows=collect_rows, snap_stack=stack)
    report.captured_image = arena.image()
    replay_ops(structure, arena, trace.ops[split:], report=report,
               start_index=split, collect_rows=collect_rows, snap_stack=stack)
    return report
