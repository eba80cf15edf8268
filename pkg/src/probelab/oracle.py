"""Ground-truth connectivity oracle.

Keeps an explicit edge multiset and answers connectivity by graph search,
independent of any arena structure.  Alongside it tracks component
representatives under the link-find contract (smallest node while a
component is free, then the deterministic rank rule once converted), so
replayed find expectations can be checked against it.
"""

from __future__ import annotations

from .errors import DeleteMissingEdge, SelfLink, UnsupportedOp

# per-root record slots: [minv, size, converted, repr, rank]
_MIN, _SIZE, _CONV, _REPR, _RANK = range(5)


class NaiveConnectivity:
    """Edge-multiset oracle with BFS queries and reference find semantics."""

    def __init__(self, track_members: bool = False) -> None:
        self.adj: dict[int, dict[int, int]] = {}
        self._parent: dict[int, int] = {}
        self._info: dict[int, list] = {}
        self._members: dict[int, list] | None = {} if track_members else None
        self.deletes_seen = False

    def _touch(self, v: int) -> None:
        if v not in self.adj:
            self.adj[v] = {}
            self._parent[v] = v
            self._info[v] = [v, 1, False, v, 0]
            if self._members is not None:
                self._members[v] = [v]

    def _root(self, v: int) -> int:
        parent = self._parent
        r = v
        while parent[r] != r:
            r = parent[r]
        while parent[v] != r:
            parent[v], v = r, parent[v]
        return r

    # -- edges ------------------------------------------------------------

    def insert_edge(self, u: int, v: int) -> None:
        if u == v:
            raise SelfLink(f"self edge at {u}")
        self._touch(u)
        self._touch(v)
        adj_u = self.adj[u]
        adj_u[v] = adj_u.get(v, 0) + 1
        adj_v = self.adj[v]
        adj_v[u] = adj_v.get(u, 0) + 1
        self._merge(u, v)

    link = insert_edge

    def delete_edge(self, u: int, v: int) -> None:
        mult = self.adj.get(u, {}).get(v, 0)
        if mult <= 0:
            raise DeleteMissingEdge(f"edge ({u}, {v}) not present")
        if mult == 1:
            del self.adj[u][v]
            del self.adj[v][u]
        else:
            self.adj[u][v] = mult - 1
            self.adj[v][u] = mult - 1
        self.deletes_seen = True  # representative tracking is now stale

    def connected(self, u: int, v: int) -> bool:
        if u == v:
            return True
        if u not in self.adj or v not in self.adj:
            return False
        seen = {u}
        frontier = [u]
        while frontier:
            nxt = []
            for x in frontier:
                for y in self.adj[x]:
                    if y == v:
                        return True
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return False

    # -- link-find reference semantics -------------------------------------

    def _merge(self, u: int, v: int) -> None:
        ra = self._root(u)
        rb = self._root(v)
        if ra == rb:
            return
        ia = self._info[ra]
        ib = self._info[rb]
        # representative per the reference rules; the u side is "first"
        if ia[_CONV] and ib[_CONV]:
            if ia[_RANK] > ib[_RANK]:
                rep, rank = ia[_REPR], ia[_RANK]
            elif ia[_RANK] < ib[_RANK]:
                rep, rank = ib[_REPR], ib[_RANK]
            else:
                rep, rank = ia[_REPR], ia[_RANK] + 1  # tie: first wins
            conv = True
        elif ia[_CONV]:
            rep, rank, conv = ia[_REPR], ia[_RANK], True
        elif ib[_CONV]:
            rep, rank, conv = ib[_REPR], ib[_RANK], True
        else:
            rep, rank, conv = 0, 0, False
        if ia[_SIZE] >= ib[_SIZE]:
            win, lose, iw = ra, rb, ia
        else:
            win, lose, iw = rb, ra, ib
        self._parent[lose] = win
        minv = ia[_MIN] if ia[_MIN] < ib[_MIN] else ib[_MIN]
        iw[_MIN] = minv
        iw[_SIZE] = ia[_SIZE] + ib[_SIZE]
        iw[_CONV] = conv
        iw[_REPR] = rep if conv else minv
        iw[_RANK] = rank
        del self._info[lose]
        if self._members is not None:
            self._members[win].extend(self._members.pop(lose))

    def current_root(self, v: int) -> int:
        """Representative without mutating (no conversion)."""
        self._touch(v)
        return self._info[self._root(v)][_REPR]

    def find(self, v: int) -> int:
        """Representative under link-find semantics; converts free components."""
        if self.deletes_seen:
            raise UnsupportedOp("find semantics undefined after edge deletions")
        self._touch(v)
        info = self._info[self._root(v)]
        if info[_CONV]:
            return info[_REPR]
        if info[_SIZE] == 1:
            return v
        info[_CONV] = True
        info[_REPR] = info[_MIN]
        info[_RANK] = 0
        return info[_REPR]

    def component_of(self, v: int) -> list[int]:
        if self._members is None:
            raise UnsupportedOp("construct with track_members=True")
        self._touch(v)
        return self._members[self._root(v)]

    def component_size(self, v: int) -> int:
        self._touch(v)
        return self._info[self._root(v)][_SIZE]

    # -- state copies (metaquery isolation) ---------------------------------

    def save(self):
        return (
            {u: dict(nbrs) for u, nbrs in self.adj.items()},
            dict(self._parent),
            {r: list(info) for r, info in self._info.items()},
            None if self._members is None
            else {r: list(m) for r, m in self._members.items()},
            self.deletes_seen,
        )

    def load(self, state) -> None:
        adj, parent, info, members, deletes = state
        self.adj = {u: dict(nbrs) for u, nbrs in adj.items()}
        self._parent = dict(parent)
        self._info = {r: list(i) for r, i in info.items()}
        self._members = None if members is None \
            else {r: list(m) for r, m in members.items()}
        self.deletes_seen = deletes
