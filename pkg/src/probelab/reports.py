"""Measurement suites and versioned CSV emission for the bench CLI and plots.

Every CSV starts with a ``# schema: <name>`` comment line followed by a
header row; downstream consumers validate the schema before parsing.
"""

from __future__ import annotations

import math
from pathlib import Path

from .ackermann import alpha
from .arena import ProbeArena, TimelineTree, charge_to_lca, interval_stats
from .errors import InvalidParams
from .link_find import LinkFind
from .union_find import KaryUnionFind, UnionFind
from .util import rng_for

TRADEOFF_SCHEMA = "probelab-tradeoff-v1"
AMORTIZED_SCHEMA = "probelab-amortized-v1"
LINKFIND_SCHEMA = "probelab-linkfind-v1"
EPOCHS_SCHEMA = "probelab-epochs-v1"
GAMES_SCHEMA = "probelab-games-v1"
CHARGES_SCHEMA = "probelab-charges-v1"


def write_csv(path: str | Path, schema: str, header: list[str], rows) -> None:
    lines = [f"# schema: {schema}", ",".join(header)]
    for row in rows:
        lines.append(",".join("" if x is None else str(x) for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def format_csv(schema: str, header: list[str], rows) -> str:
    lines = [f"# schema: {schema}", ",".join(header)]
    for row in rows:
        lines.append(",".join("" if x is None else str(x) for x in row))
    return "\n".join(lines) + "\n"


# -- union-find drivers -------------------------------------------------------


def drive_amortized(n: int, m: int, seed: int) -> dict:
    """n-1 root unions with m finds interleaved; returns probe aggregates."""
    arena = ProbeArena()
    uf = UnionFind(arena, n)
    rng = rng_for(seed, "uf-amortized")
    start = arena.probe_count
    roots = list(range(n))
    unions_left = n - 1
    finds_done = 0
    # alternate rounds: merge surviving roots pairwise, spread finds between
    while unions_left > 0:
        rng.shuffle(roots)
        nxt = []
        for a, b in zip(roots[::2], roots[1::2]):
            nxt.append(uf.union(a, b))
            unions_left -= 1
        if len(roots) % 2:
            nxt.append(roots[-1])
        roots = nxt
        quota = m * (n - 1 - unions_left) // (n - 1) - finds_done
        for _ in range(quota):
            uf.find(rng.randrange(n))
            finds_done += 1
    while finds_done < m:
        uf.find(rng.randrange(n))
        finds_done += 1
    total = arena.probe_count - start
    return {
        "n": n, "m": m, "alpha": alpha(max(m, n), n), "total_probes": total,
        "max_find": uf.counters.max_find, "max_union": uf.counters.max_union,
        "bound_units": n + m * alpha(max(m, n), n),
    }


def drive_worstcase(n: int, k: int, seed: int, find_samples: int | None = None) -> dict:
    """Full merge via random root pairing; finds sampled from every element."""
    arena = ProbeArena()
    uf = KaryUnionFind(arena, n, k)
    rng = rng_for(seed, "uf-worstcase")
    roots = list(range(n))
    while len(roots) > 1:
        rng.shuffle(roots)
        nxt = [uf.union(a, b) for a, b in zip(roots[::2], roots[1::2])]
        if len(roots) % 2:
            nxt.append(roots[-1])
        roots = nxt
        # probe find depth mid-build too: worst case is per operation
        for _ in range(min(64, n)):
            uf.find(rng.randrange(n))
    samples = range(n) if find_samples is None else \
        (rng.randrange(n) for _ in range(find_samples))
    for v in samples:
        uf.find(v)
    lg_ratio = max(1, math.ceil(math.log2(n) / math.log2(k)))
    return {
        "n": n, "k": k,
        "max_find": uf.counters.max_find,
        "max_union": uf.counters.max_union,
        "find_bound_units": lg_ratio,
        "total_probes": arena.probe_count,
    }


def tradeoff_rows(ns, ks, seed: int):
    header = ["structure", "n", "k", "max_find_probes", "max_union_probes",
              "find_bound_units", "total_probes"]
    rows = []
    for n in ns:
        for k in ks:
            r = drive_worstcase(n, k, seed)
            rows.append([f"uf-worstcase:{k}", n, k, r["max_find"],
                         r["max_union"], r["find_bound_units"],
                         r["total_probes"]])
    return header, rows


def amortized_rows(ns, m_factor: int, seed: int):
    header = ["structure", "n", "m", "alpha", "total_probes", "bound_units"]
    rows = []
    for n in ns:
        r = drive_amortized(n, m_factor * n, seed)
        rows.append(["uf-amortized", n, r["m"], r["alpha"],
                     r["total_probes"], r["bound_units"]])
    return header, rows


# -- link-find drivers --------------------------------------------------------


def drive_linkfind_general(q: int, u: int, seed: int) -> dict:
    """Random mixed links/finds over max(q, u) nodes on the general variant."""
    n = max(q, u)
    arena = ProbeArena()
    lf = LinkFind(arena, n, variant="general")
    rng = rng_for(seed, "lf-general")
    kinds = ["L"] * u + ["F"] * q
    rng.shuffle(kinds)
    for kind in kinds:
        if kind == "L":
            a = rng.randrange(n)
            b = rng.randrange(n)
            while b == a:
                b = rng.randrange(n)
            lf.link(a, b)
        else:
            lf.find(rng.randrange(n))
    hi, lo = max(q, u), min(q, u)
    a_term = alpha(hi, lo)
    return {
        "variant": "general", "n": n, "q": q, "u": u, "alpha": a_term,
        "total_probes": lf.total_cost(),
        "formula_units": a_term * hi + (q + u),
        "union_nodes": lf.union_nodes,
    }


def drive_linkfind_forest(q: int, u: int, seed: int) -> dict:
    """Cross-component links only (forest contract), q <= u."""
    n = u + 1
    arena = ProbeArena()
    lf = LinkFind(arena, n, variant="forest", q_declared=q, u_declared=u)
    rng = rng_for(seed, "lf-forest")
    comp_of = list(range(n))
    members: dict[int, list[int]] = {i: [i] for i in range(n)}
    comps = list(range(n))
    kinds = ["L"] * u + ["F"] * q
    rng.shuffle(kinds)
    for kind in kinds:
        if kind == "L":
            ia = rng.randrange(len(comps))
            ib = rng.randrange(len(comps))
            while ib == ia:
                ib = rng.randrange(len(comps))
            ca, cb = comps[ia], comps[ib]
            a = members[ca][rng.randrange(len(members[ca]))]
            b = members[cb][rng.randrange(len(members[cb]))]
            lf.link(a, b)
            members[ca].extend(members[cb])
            for x in members[cb]:
                comp_of[x] = ca
            del members[cb]
            comps[ib] = comps[-1]
            comps.pop()
        else:
            lf.find(rng.randrange(n))
    a_term = alpha(q, q)
    return {
        "variant": "forest", "n": n, "q": q, "u": u, "alpha": a_term,
        "total_probes": lf.total_cost(),
        "formula_units": a_term * q + u,
        "union_nodes": lf.union_nodes,
    }


def linkfind_rows(exponents, seed: int):
    header = ["variant", "n", "q", "u", "alpha", "total_probes",
              "formula_units", "union_nodes"]
    rows = []
    for qe in exponents:
        for ue in exponents:
            r = drive_linkfind_general(1 << qe, 1 << ue, seed)
            rows.append([r["variant"], r["n"], r["q"], r["u"], r["alpha"],
                         r["total_probes"], r["formula_units"],
                         r["union_nodes"]])
    for qe in exponents:
        for ue in exponents:
            if qe <= ue:
                r = drive_linkfind_forest(1 << qe, 1 << ue, seed)
                rows.append([r["variant"], r["n"], r["q"], r["u"], r["alpha"],
                             r["total_probes"], r["formula_units"],
                             r["union_nodes"]])
    return header, rows


# -- per-epoch interval statistics ---------------------------------------------


def epoch_rows(arena: ProbeArena, depth: int, structure_id: str, n: int):
    """d rows of (i, |W_i|, |R_i|, |fresh(i)|, |R_mq within fresh(i)|)."""
    mq_tags = [t for t in arena.log.tag_names if str(t).startswith("mq:")]
    header = ["structure", "n", "epoch", "writes", "reads", "fresh",
              "metaquery_reads_in_fresh"]
    rows = []
    for i in range(depth, 0, -1):
        st = interval_stats(arena.log, [str(i)], mq_tags)
        own_reads = interval_stats(arena.log, [], [str(i)]).R
        fresh_i = st.fresh.get(i, set())
        rows.append([structure_id, n, i, len(st.W), len(own_reads),
                     len(fresh_i), len(st.R & fresh_i)])
    return header, rows


def games_rows(count: int, seed: int, p: float | None = None):
    """Bloom-protocol bit totals across small games of both families."""
    from .games.protocol import cut_game, run_bloom_protocol
    from .instances.dynamic import DynamicInstance, DynParams
    from .instances.incremental import IncParams, IncrementalInstance

    header = ["family", "game", "p", "wa", "rb", "overlap", "total_bits",
              "formula_bits", "answer", "truth"]
    rows = []
    for g in range(count):
        game_seed = seed * 1000 + g
        if g % 2 == 0:
            params = IncParams.derive(512, B=8, C=4, M=16, depth=2)
            inst = IncrementalInstance(params, game_seed)
            rng = rng_for(game_seed, "report-mq")
            q = inst.sample_query(rng)
            trace = inst.trace(queries=[(q, inst.true_coloring(q))])
            game = cut_game(trace, "lf-general", ["1"], ["mq:0"],
                            seed=game_seed)
            family = "inc"
        else:
            dparams = DynParams(M=8, cols=9, C=4)
            inst = DynamicInstance(dparams, game_seed)
            split = (2, 4, 6)[g % 3]
            tags_a = [str(i) for i in range(split)]
            tags_b = [str(i) for i in range(split, dparams.steps)]
            game = cut_game(inst.trace(), "naive", tags_a, tags_b,
                            seed=game_seed)
            family = "dyn"
        p_game = p if p is not None else 1 / math.log2(game.node_count)
        answer, tr = run_bloom_protocol(game, p_game, seed=game_seed)
        h = tr.header
        formula = h["wa"] * math.log2(1 / p_game) + \
            64 * (h["overlap"] + p_game * h["rb"])
        rows.append([family, g, round(p_game, 6), h["wa"], h["rb"],
                     h["overlap"], tr.total_bits, round(formula, 1),
                     int(answer), int(game.ground_truth)])
    return header, rows


def timeline_rows(arena: ProbeArena, tag_spans: dict):
    """Per-timeline-node split statistics for a pair-tagged (dynamic) run.

    Builds the perfect binary tree over the integer-tagged operation pairs
    and reports, for every internal node, the left subtree's write set
    against the right subtree's read set, plus the reads charged to the
    node by last-writer LCA.
    """
    labeled = []
    for label, spans in tag_spans.items():
        if str(label).lstrip("-").isdigit() and spans:
            labeled.append((int(label), spans[0]))
    if not labeled:
        raise InvalidParams("no integer-tagged operation pairs in this run")
    labeled.sort(key=lambda item: item[1][0])
    count = len(labeled)
    if count & (count - 1):
        raise InvalidParams(f"{count} pairs: timeline needs a power of two")
    boundaries = [span[0] for _, span in labeled] + [labeled[-1][1][1]]
    tree = TimelineTree(boundaries)
    charges = charge_to_lca(arena.log, tree)
    labels = [str(lab) for lab, _ in labeled]

    header = ["node", "depth", "leaves", "left_writes", "right_reads",
              "overlap", "charged_reads"]
    rows = []
    for node in tree.internal_nodes():
        left, right = tree.children(node)
        tags_l = [labels[i] for i in tree.leaf_indices(left)]
        tags_r = [labels[i] for i in tree.leaf_indices(right)]
        st = interval_stats(arena.log, tags_l, tags_r)
        rows.append([node, tree.depth(node), len(tree.leaf_indices(node)),
                     len(st.W), len(st.R), st.overlap,
                     charges.get(node, 0)])
    return tree, header, rows
