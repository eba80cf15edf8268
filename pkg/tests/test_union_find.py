import math
import random

import pytest

from probelab import KaryUnionFind, ProbeArena, UnionFind, uf_new
from probelab.errors import InvalidParams, NotARoot, OutOfRange, SameSet


def test_new_forest_is_singletons():
    arena = ProbeArena()
    uf = UnionFind(arena, 3)
    assert [uf.find(i) for i in range(3)] == [0, 1, 2]


def test_single_element_forest():
    arena = ProbeArena()
    uf = UnionFind(arena, 1)
    assert uf.find(0) == 0
    with pytest.raises(SameSet):
        uf.union(0, 0)


def test_construction_probes_carry_active_tag():
    arena = ProbeArena()
    arena.set_interval("init")
    UnionFind(arena, 4)
    arena.end_interval()
    tags = {tag for (_, _, _, tag) in arena.log.events()}
    assert tags == {"init"}
    assert len(arena.log) == 8  # one read/write pair per element


def test_union_then_find_agree():
    arena = ProbeArena()
    uf = UnionFind(arena, 4)
    root = uf.union(0, 1)
    assert root in (0, 1)
    assert uf.find(0) == uf.find(1) == root


def test_union_errors():
    arena = ProbeArena()
    uf = UnionFind(arena, 4)
    with pytest.raises(SameSet):
        uf.union(2, 2)
    uf.union(0, 1)
    loser = 1 if uf.find(0) == 0 else 0
    with pytest.raises(NotARoot):
        uf.union(loser, 2)
    with pytest.raises(OutOfRange):
        uf.find(4)


def test_union_tie_is_deterministic():
    arena = ProbeArena()
    uf = UnionFind(arena, 2)
    assert uf.union(0, 1) == 0  # equal ranks: second argument attaches under first
    arena2 = ProbeArena()
    uf2 = UnionFind(arena2, 2)
    assert uf2.union(1, 0) == 1


def test_rank_invariant_random_runs():
    rng = random.Random(5)
    arena = ProbeArena()
    n = 64
    uf = UnionFind(arena, n)
    roots = list(range(n))
    while len(roots) > 1:
        rng.shuffle(roots)
        merged = [uf.union(a, b) for a, b in zip(roots[::2], roots[1::2])]
        if len(roots) % 2:
            merged.append(roots[-1])
        roots = merged
        for _ in range(16):
            uf.find(rng.randrange(n))
        assert uf.check_rank_invariant()


def _label_oracle_run(make_structure, n, ops_count, seed):
    """Drive a structure against a naive label map on random root unions/finds."""
    rng = random.Random(seed)
    arena = ProbeArena()
    uf = make_structure(arena, n)
    label = list(range(n))          # element -> set id
    members = {i: [i] for i in range(n)}
    rep = {i: i for i in range(n)}  # set id -> structure root
    live = list(range(n))
    for _ in range(ops_count):
        if len(live) > 1 and rng.random() < 0.4:
            sa, sb = rng.sample(live, 2)
            winner = uf.union(rep[sa], rep[sb])
            members[sa].extend(members[sb])
            for x in members[sb]:
                label[x] = sa
            del members[sb]
            live.remove(sb)
            rep[sa] = winner
        else:
            v = rng.randrange(n)
            got = uf.find(v)
            assert got == rep[label[v]]
    # two elements connected iff same label iff same find
    for _ in range(200):
        x, y = rng.randrange(n), rng.randrange(n)
        assert (uf.find(x) == uf.find(y)) == (label[x] == label[y])


def test_amortized_matches_label_oracle():
    _label_oracle_run(lambda a, n: UnionFind(a, n), 256, 3000, seed=1)


def test_worstcase_matches_label_oracle():
    for k in (2, 8):
        _label_oracle_run(lambda a, n: KaryUnionFind(a, n, k), 256, 3000, seed=2)


def test_determinism_identical_logs():
    def run():
        arena = ProbeArena()
        uf = UnionFind(arena, 32)
        rng = random.Random(9)
        roots = list(range(32))
        while len(roots) > 1:
            rng.shuffle(roots)
            roots = [uf.union(a, b) for a, b in zip(roots[::2], roots[1::2])] + \
                (roots[-1:] if len(roots) % 2 else [])
            uf.find(rng.randrange(32))
        return list(arena.log.packed)

    assert run() == run()


class TestKary:
    def test_all_leaves_same_depth(self):
        rng = random.Random(3)
        for k in (2, 3, 8):
            arena = ProbeArena()
            n = 128
            uf = KaryUnionFind(arena, n, k)
            roots = list(range(n))
            while len(roots) > 1:
                rng.shuffle(roots)
                roots = [uf.union(a, b) for a, b in zip(roots[::2], roots[1::2])] + \
                    (roots[-1:] if len(roots) % 2 else [])
            depths = {uf.peek_depth(v) for v in range(n)}
            assert len(depths) == 1
            h = depths.pop()
            assert h <= 1 + math.log(n / 2, k) + 1e-9

    def test_find_probe_bound_is_height_plus_one(self):
        arena = ProbeArena()
        n, k = 512, 4
        uf = KaryUnionFind(arena, n, k)
        rng = random.Random(4)
        roots = list(range(n))
        while len(roots) > 1:
            rng.shuffle(roots)
            roots = [uf.union(a, b) for a, b in zip(roots[::2], roots[1::2])] + \
                (roots[-1:] if len(roots) % 2 else [])
        for v in range(n):
            uf.find(v)
        hmax = max(uf.peek_depth(v) for v in range(n))
        assert uf.counters.max_find == hmax + 1

    def test_union_probes_bounded_in_k(self):
        # max union cost depends on k, not on n
        rng = random.Random(6)
        maxes = {}
        for n in (256, 1024):
            for k in (2, 8):
                arena = ProbeArena()
                uf = KaryUnionFind(arena, n, k)
                roots = list(range(n))
                while len(roots) > 1:
                    rng.shuffle(roots)
                    roots = [uf.union(a, b) for a, b in zip(roots[::2], roots[1::2])] + \
                        (roots[-1:] if len(roots) % 2 else [])
                maxes[(n, k)] = uf.counters.max_union
        assert maxes[(1024, 2)] <= maxes[(256, 2)] + 2
        assert maxes[(1024, 8)] <= maxes[(256, 8)] + 2

    def test_k_validation(self):
        with pytest.raises(InvalidParams):
            KaryUnionFind(ProbeArena(), 8, 1)


def test_factory_modes():
    assert isinstance(uf_new(ProbeArena(), 4), UnionFind)
    assert isinstance(uf_new(ProbeArena(), 4, ("worstcase", 8)), KaryUnionFind)
    with pytest.raises(InvalidParams):
        uf_new(ProbeArena(), 4, "bogus")
