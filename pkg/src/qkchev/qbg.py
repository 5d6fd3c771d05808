"""Parabolic quantum Bruhat graphs, their distance/weight tables and tilted orders."""

from __future__ import annotations

import threading
from collections import deque
from typing import NamedTuple

from .rootdata import RankTooLarge, RootSystem, WeylElt, vadd


class UniquenessViolation(RuntimeError):
    pass


class QBGEdge(NamedTuple):
    source: WeylElt
    target: WeylElt
    beta: tuple
    kind: str  # "B" or "Q"


class QBG:
    """``QBG(W^J)`` with all-pairs distances and projected path weights."""

    def __init__(self, rs: RootSystem, J):
        if rs.rank > 4:
            raise RankTooLarge("rank must be at most 4")
        self.rs = rs
        self.J = frozenset(J)
        self.vertices = rs.weyl_min_reps(self.J)
        self.pos = {w.idx: k for k, w in enumerate(self.vertices)}
        self.edges = self._build_edges()
        self.out = [[] for _ in self.vertices]
        for e in self.edges:
            self.out[self.pos[e.source.idx]].append(e)
        self._build_tables()

    def _build_edges(self):
        rs, J = self.rs, self.J
        posJ = set(rs.positive_roots_J(J))
        labels = []
        for beta in rs.positive_roots:
            if beta in posJ:
                continue
            cb = rs.coroot(beta)
            two_rho_minus = 2 * sum(cb) - sum(rs.root_pair(g, cb) for g in posJ)
            labels.append((beta, cb, two_rho_minus, rs.reflection(beta)))
        edges = []
        for w in self.vertices:
            lw = len(w.word)
            for beta, cb, tr, sb in labels:
                v = rs.min_coset_rep(w * sb, J)
                lv = len(v.word)
                if lv == lw + 1:
                    edges.append(QBGEdge(w, v, beta, "B"))
                elif lv == lw + 1 - tr:
                    edges.append(QBGEdge(w, v, beta, "Q"))
        return edges

    def _build_tables(self):
        rs, J = self.rs, self.J
        n = len(self.vertices)
        zero = rs.zero()
        self.dist = [[-1] * n for _ in range(n)]
        self.weight = [[None] * n for _ in range(n)]
        for s in range(n):
            d = self.dist[s]
            wt = self.weight[s]
            d[s] = 0
            wt[s] = zero
            queue = deque([s])
            while queue:
                a = queue.popleft()
                for e in self.out[a]:
                    b = self.pos[e.target.idx]
                    if d[b] < 0:
                        d[b] = d[a] + 1
                        step = rs.coroot(e.beta) if e.kind == "Q" else zero
                        wt[b] = vadd(wt[a], step)
                        queue.append(b)
            for b in range(n):
                if d[b] < 0:
                    raise RuntimeError("quantum Bruhat graph is not strongly connected")
                wt[b] = rs.proj_up(wt[b], J)

    def _p(self, w: WeylElt) -> int:
        return self.pos[self.rs.min_coset_rep(w, self.J).idx]

    def dist_of(self, w: WeylElt, v: WeylElt) -> int:
        return self.dist[self._p(w)][self._p(v)]

    def wt(self, w: WeylElt, v: WeylElt):
        return self.weight[self._p(w)][self._p(v)]

    def all_shortest_path_weights(self, w: WeylElt, v: WeylElt) -> set:
        """Projected weights of every shortest directed path from w to v."""
        rs = self.rs
        s, t = self._p(w), self._p(v)
        target_d = self.dist[s][t]
        out = set()

        def walk(a, acc):
            if a == t:
                out.add(rs.proj_up(acc, self.J))
                return
            for e in self.out[a]:
                b = self.pos[e.target.idx]
                if self.dist[s][b] == self.dist[s][a] + 1 and self.dist[b][t] == target_d - self.dist[s][b]:
                    step = rs.coroot(e.beta) if e.kind == "Q" else rs.zero()
                    walk(b, vadd(acc, step))

        walk(s, rs.zero())
        return out


_REGISTRY: dict = {}
_LOCK = threading.Lock()


def qbg(rs: RootSystem, J=()) -> QBG:
    """Memoized ``QBG(W^J)``."""
    key = (rs.cartan, frozenset(J))
    got = _REGISTRY.get(key)
    if got is None:
        with _LOCK:
            got = _REGISTRY.get(key)
            if got is None:
                got = QBG(rs, J)
                _REGISTRY[key] = got
    return got


def build_qbg(rs: RootSystem, J=()) -> QBG:
    return qbg(rs, J)


def qbg_wt(rs: RootSystem, w: WeylElt, v: WeylElt, J=()):
    """``wt^J(w => v)``."""
    return qbg(rs, J).wt(w, v)


def qbg_dist(rs: RootSystem, w: WeylElt, v: WeylElt, J=()) -> int:
    return qbg(rs, J).dist_of(w, v)


def qbg_weight_parabolic(rs: RootSystem, w: WeylElt, v: WeylElt, J):
    """Return ``(wt^J(w => v), [wt(w => v)]^J)`` for comparison."""
    J = frozenset(J)
    return qbg(rs, J).wt(w, v), rs.proj_up(qbg(rs).wt(w, v), J)


def tilted_leq(rs: RootSystem, v: WeylElt, w1: WeylElt, w2: WeylElt) -> bool:
    """``w1 <=_v w2``: some shortest path from v to w2 passes through w1."""
    g = qbg(rs)
    d = g.dist
    p = g.pos
    return d[p[v.idx]][p[w2.idx]] == d[p[v.idx]][p[w1.idx]] + d[p[w1.idx]][p[w2.idx]]


def dual_tilted_leq(rs: RootSystem, v: WeylElt, w1: WeylElt, w2: WeylElt) -> bool:
    """``w1 <=*_v w2``: some shortest path from w1 to v passes through w2."""
    g = qbg(rs)
    d = g.dist
    p = g.pos
    return d[p[w1.idx]][p[v.idx]] == d[p[w1.idx]][p[w2.idx]] + d[p[w2.idx]][p[v.idx]]


def coset(rs: RootSystem, u: WeylElt, J) -> list:
    return [u * x for x in rs.weyl_J(J)]


def _extremum(rs, members, better):
    found = [m for m in members if all(better(m, w) for w in members)]
    if len(found) != 1:
        raise UniquenessViolation(f"{len(found)} extremal elements in coset")
    return found[0]


def tbmin(rs: RootSystem, u: WeylElt, J, v: WeylElt) -> WeylElt:
    """``min(u W_J, <=_v)``; uniqueness is checked."""
    J = frozenset(J)
    key = ("tbmin", rs.min_coset_rep(u, J).idx, J, v.idx)
    got = rs._cache.get(key)
    if got is None:
        members = coset(rs, u, J)
        got = _extremum(rs, members, lambda m, w: tilted_leq(rs, v, m, w))
        rs._cache[key] = got
    return got


def tbmax_scan(rs: RootSystem, u: WeylElt, J, v: WeylElt) -> WeylElt:
    """``max(u W_J, <=*_v)`` by direct scan."""
    members = coset(rs, u, J)
    return _extremum(rs, members, lambda m, w: dual_tilted_leq(rs, v, w, m))


def tbmax(rs: RootSystem, u: WeylElt, J, v: WeylElt) -> WeylElt:
    """``max(u W_J, <=*_v) = tbmin(u w∘, J*, v w∘) w∘``, cross-checked by a scan."""
    J = frozenset(J)
    key = ("tbmax", rs.min_coset_rep(u, J).idx, J, v.idx)
    got = rs._cache.get(key)
    if got is None:
        w0 = rs.w0
        got = tbmin(rs, u * w0, rs.star_set(J), v * w0) * w0
        if got != tbmax_scan(rs, u, J, v):
            raise UniquenessViolation("dual tilted maximum disagrees with the w∘-formula")
        rs._cache[key] = got
    return got


def edges_to_json(g: QBG) -> dict:
    verts = g.vertices
    return {
        "J": sorted(g.J),
        "vertices": [list(w.word) for w in verts],
        "edges": [
            {"src": list(e.source.word), "dst": list(e.target.word), "beta": list(e.beta), "kind": e.kind}
            for e in sorted(g.edges, key=lambda e: (g.pos[e.source.idx], g.pos[e.target.idx], e.beta))
        ],
        "dist": g.dist,
        "weight": [[list(x) for x in row] for row in g.weight],
    }
