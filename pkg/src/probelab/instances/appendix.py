"""Alternating union/find rounds realized as a link-find workload.

Union rounds pair the surviving representatives at random and link them,
halving the component count.  Find rounds first link random members to
their component's current representative (the link form of a find), then
verify by running one find per component, each expected to return the
representative itself.  A corrupted round redirects one of those member
links to a different component's representative; the two components merge,
so at least one verification find must come back with a foreign node.
"""

from __future__ import annotations

from ..errors import InvalidParams
from ..oracle import NaiveConnectivity
from ..traces import Trace
from ..util import rng_for


def appendix_rounds(n: int, rounds: int, finds_per_round: int | None = None,
                    seed: int = 0, *, corrupt: bool = False) -> Trace:
    """Build the alternating-rounds trace over n initially-singleton nodes.

    ``finds_per_round`` counts the member-to-representative links in each
    find round (default: one per surviving component).  Expectations always
    describe the uncorrupted run, so replaying a corrupted trace must trip
    at least one find expectation.
    """
    if n < 2 or n & (n - 1):
        raise InvalidParams("n must be a power of two, at least 2")
    if rounds < 1 or (1 << rounds) > n:
        raise InvalidParams("rounds must be in [1, lg n]")
    rng = rng_for(seed, "appendix")
    sim = NaiveConnectivity(track_members=True)
    for v in range(n):
        sim._touch(v)
    comps: list[int] = list(range(n))  # one member per live component
    ops: list[tuple] = []

    for rnd in range(rounds):
        # union round: random pairing of current representatives
        order = comps.copy()
        rng.shuffle(order)
        survivors = []
        for a, b in zip(order[::2], order[1::2]):
            ra = sim.current_root(a)
            rb = sim.current_root(b)
            ops.append(("L", ra, rb))
            sim.link(ra, rb)
            survivors.append(a)
        if len(order) % 2:
            survivors.append(order[-1])
        comps = survivors

        # find round: member-to-representative links, then verification finds
        big = [c for c in comps if sim.component_size(c) >= 2]
        n_links = finds_per_round if finds_per_round is not None else len(comps)
        for idx in range(n_links):
            if not big:
                break
            c = big[rng.randrange(len(big))]
            root = sim.current_root(c)
            members = sorted(sim.component_of(c))
            members.remove(root)
            v = members[rng.randrange(len(members))]
            if corrupt and idx == 0 and len(comps) >= 2:
                others = [x for x in comps if sim.current_root(x) != root]
                wrong = sim.current_root(others[rng.randrange(len(others))])
                ops.append(("L", v, wrong))
                # tracking still follows the correct run
            else:
                ops.append(("L", v, root))
            sim.link(v, root)
        for c in sorted(comps, key=sim.current_root):
            root = sim.current_root(c)
            ops.append(("F", root, root))
            sim.find(root)

    return Trace(ops=ops, seed=seed,
                 params={"family": "appendix", "n": n, "rounds": rounds,
                         "finds_per_round": finds_per_round,
                         "corrupt": corrupt})
