"""Command-line front end.

Subcommands: gen, run, stats, game, report.  Exit codes: 0 success,
1 usage or parameter error, 2 a replayed expectation failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import reports
from .arena import interval_stats
from .errors import ProbelabError
from .games.protocol import cut_game, honest_proof, run_bloom_protocol, \
    run_nondet_protocol
from .instances.appendix import appendix_rounds
from .instances.dynamic import DynamicInstance, DynParams
from .instances.incremental import IncParams, IncrementalInstance
from .runner import replay_trace
from .traces import Trace

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_EXPECTATION = 2


def _gen(args) -> int:
    overrides = json.loads(args.params) if args.params else {}
    if args.family == "inc":
        params = IncParams.derive(
            args.n, args.eps,
            B=overrides.get("B"), C=overrides.get("C"),
            M=overrides.get("M"), depth=overrides.get("depth"))
        inst = IncrementalInstance(params, args.seed)
        trace = inst.trace(metaqueries=args.metaqueries)
        truth = {str(k): v for k, v in inst.ground_truth().items()}
    elif args.family == "dyn":
        params = DynParams.derive(
            args.n, args.eps,
            M=overrides.get("M"), C=overrides.get("C"),
            cols=overrides.get("cols"))
        inst = DynamicInstance(params, args.seed)
        trace = inst.trace()
        truth = {"schedule": inst.schedule}
    elif args.family == "appendix":
        trace = appendix_rounds(args.n, args.rounds, args.finds_per_round,
                                args.seed, corrupt=args.corrupt)
        truth = {}
    else:
        raise ProbelabError(f"unknown family {args.family!r}")
    out = Path(args.out)
    trace.write(out)
    trace.write_params(out)
    Path(str(out) + ".truth.json").write_text(
        json.dumps(truth, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(trace)} ops, hash {trace.content_hash()})")
    return EXIT_OK


def _run(args) -> int:
    trace = Trace.read(args.trace)
    from .arena import ProbeArena
    arena = ProbeArena()
    report = replay_trace(trace, args.structure, arena=arena,
                          collect_rows=True)
    if args.out:
        Path(args.out).write_text("\n".join(report.csv_lines()) + "\n",
                                  encoding="utf-8")
    if args.json_out:
        Path(args.json_out).write_text(report.to_json() + "\n",
                                       encoding="utf-8")
    if args.log_out:
        with open(args.log_out, "w", encoding="utf-8") as fh:
            for line in arena.log.export_lines():
                fh.write(line + "\n")
    print(f"{args.structure}: {report.n_ops} ops, "
          f"{report.total_probes} probes, {len(report.failures)} failures")
    if report.failures:
        for f in report.failures[:10]:
            print(f"  op {f['index']}: expected {f['expected']}, "
                  f"got {f['actual']}", file=sys.stderr)
        return EXIT_EXPECTATION
    return EXIT_OK


def _stats(args) -> int:
    trace = Trace.read(args.trace)
    from .arena import ProbeArena
    arena = ProbeArena()
    report = replay_trace(trace, args.structure, arena=arena)
    if report.failures:
        print(f"{len(report.failures)} expectation failures", file=sys.stderr)
        return EXIT_EXPECTATION
    family = trace.params.get("family") if trace.params else None
    if family == "dyn" or (family is None and any(
            op[0] in ("I", "D") for op in trace.ops)):
        tree, header, rows = reports.timeline_rows(arena, report.tag_spans)
        text = reports.format_csv(reports.CHARGES_SCHEMA, header, rows)
    else:
        depth = trace.params.get("depth") if trace.params else None
        if depth is None:
            depth = sum(1 for t in arena.log.tag_names
                        if str(t).lstrip("-").isdigit() and int(t) >= 1)
        header, rows = reports.epoch_rows(arena, depth, args.structure,
                                          report.n_nodes)
        text = reports.format_csv(reports.EPOCHS_SCHEMA, header, rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return EXIT_OK


def _game(args) -> int:
    trace = Trace.read(args.trace)
    tags_a = args.tags_a.split(",")
    tags_b = args.tags_b.split(",")
    game = cut_game(trace, args.structure, tags_a, tags_b, seed=args.seed)
    cut_ref = {
        "trace": str(args.trace),
        "trace_hash": trace.content_hash(),
        "tags_a": tags_a,
        "tags_b": tags_b,
        "structure": args.structure,
    }
    if args.protocol == "bloom":
        answer, transcript = run_bloom_protocol(game, args.p, seed=args.seed)
        payload = {
            "protocol": "bloom",
            "cut": cut_ref,
            "answer": answer,
            "ground_truth": game.ground_truth,
            "total_bits": transcript.total_bits,
            "header": transcript.header,
            "messages": transcript.to_records(),
        }
        if args.transcript_out:
            with open(args.transcript_out, "w", encoding="utf-8") as fh:
                for rec in transcript.to_records():
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        proof = honest_proof(game, seed=args.seed)
        result = run_nondet_protocol(game, proof)
        payload = {
            "protocol": "nondet",
            "cut": cut_ref,
            "accept_a": result.accept_a,
            "accept_b": result.accept_b,
            "ground_truth": game.ground_truth,
            "proof_bits": result.proof_bits,
            "cells": len(proof.cells),
        }
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def _report(args) -> int:
    if args.suite == "tradeoff":
        header, rows = reports.tradeoff_rows(
            [1 << e for e in args.n_exponents], args.ks, args.seed)
        schema = reports.TRADEOFF_SCHEMA
    elif args.suite == "amortized":
        header, rows = reports.amortized_rows(
            [1 << e for e in args.n_exponents], args.m_factor, args.seed)
        schema = reports.AMORTIZED_SCHEMA
    elif args.suite == "games":
        header, rows = reports.games_rows(args.count, args.seed)
        schema = reports.GAMES_SCHEMA
    else:
        header, rows = reports.linkfind_rows(args.n_exponents, args.seed)
        schema = reports.LINKFIND_SCHEMA
    text = reports.format_csv(schema, header, rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probelab",
        description="generate, replay and analyze connectivity workloads")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a workload trace",
                       parents=[common])
    p.add_argument("family", choices=["inc", "dyn", "appendix"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--metaqueries", type=int, default=1)
    p.add_argument("--rounds", type=int, default=4)
    p.add_argument("--finds-per-round", type=int, default=None)
    p.add_argument("--corrupt", action="store_true")
    p.add_argument("--params", help="JSON overrides, e.g. '{\"B\": 4}'")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_gen)

    p = sub.add_parser("run", parents=[common], help="replay a trace against a structure")
    p.add_argument("--trace", required=True)
    p.add_argument("--structure", required=True)
    p.add_argument("--out", help="per-op CSV path")
    p.add_argument("--json-out", help="summary JSON path")
    p.add_argument("--log-out", help="probe log export path (t <t> <R|W> <addr> <tag>)")
    p.set_defaults(fn=_run)

    p = sub.add_parser("stats", parents=[common], help="per-epoch interval statistics")
    p.add_argument("--trace", required=True)
    p.add_argument("--structure", default="lf-general")
    p.add_argument("--out")
    p.set_defaults(fn=_stats)

    p = sub.add_parser("game", parents=[common], help="cut and run a communication game")
    p.add_argument("--trace", required=True)
    p.add_argument("--structure", default="lf-general")
    p.add_argument("--tags-a", required=True, help="comma-joined tag labels")
    p.add_argument("--tags-b", required=True)
    p.add_argument("--protocol", choices=["bloom", "nondet"], default="bloom")
    p.add_argument("--p", type=float, default=1 / 16)
    p.add_argument("--out")
    p.add_argument("--transcript-out",
                   help="message-per-line JSON transcript export")
    p.set_defaults(fn=_game)

    p = sub.add_parser("report", parents=[common], help="cost-measurement suites as CSV")
    p.add_argument("suite", choices=["tradeoff", "amortized", "linkfind",
                                     "games"])
    p.add_argument("--n-exponents", type=int, nargs="+", default=[10, 12])
    p.add_argument("--ks", type=int, nargs="+", default=[2, 8, 64])
    p.add_argument("--m-factor", type=int, default=8)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--out")
    p.set_defaults(fn=_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ProbelabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
