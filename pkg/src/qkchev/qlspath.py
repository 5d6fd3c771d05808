"""Quantum LS paths: enumeration, degree statistics and lifts to semi-infinite paths."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .affine import AffineElt, pi_J
from .qbg import qbg, qbg_wt, tbmax, tbmin
from .rootdata import RootSystem, Weight, WeylElt, pair, vadd
from .slspath import SLSPath, _normalize, chi_shift, turn_points


class WeightTooLarge(ValueError):
    pass


class QLSPath(NamedTuple):
    """``(w_1, ..., w_s; a_0, ..., a_s)`` with ``w_u in W^J``, ``J = J_shape``."""

    shape: Weight
    dirs: tuple
    cuts: tuple

    @property
    def rs(self) -> RootSystem:
        return self.dirs[0].rs

    def __repr__(self):
        d = ", ".join(repr(w) for w in self.dirs)
        c = ", ".join(str(a) for a in self.cuts)
        return f"({d}; {c})"


def qls_iota(eta: QLSPath) -> WeylElt:
    return eta.dirs[0]


def qls_kappa(eta: QLSPath) -> WeylElt:
    return eta.dirs[-1]


def cut_denominators(rs: RootSystem, mu: Weight) -> list:
    J = rs.J_of(mu)
    posJ = set(rs.positive_roots_J(J))
    ms = set()
    for beta, cb in zip(rs.positive_roots, rs.positive_coroots):
        if beta not in posJ:
            ms.add(pair(mu.coeffs, cb))
    return sorted(m for m in ms if m > 0)


def candidate_cuts(denominators) -> list:
    return sorted({Fraction(k, m) for m in denominators for k in range(1, m)})


def _reach_sets(rs: RootSystem, mu: Weight, a: Fraction):
    """``reach[w]``: vertices reachable from w in ``QBG_{a mu}``."""
    key = ("qreach", mu.coeffs, a)
    got = rs._cache.get(key)
    if got is not None:
        return got
    g = qbg(rs, rs.J_of(mu))
    adj = {}
    for e in g.edges:
        if (a * pair(mu.coeffs, rs.coroot(e.beta))).denominator == 1:
            adj.setdefault(e.source, set()).add(e.target)
    reach = {}
    for w in g.vertices:
        seen = {w}
        stack = [w]
        while stack:
            z = stack.pop()
            for t in adj.get(z, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        reach[w] = seen
    rs._cache[key] = reach
    return reach


def qls_reachable(rs: RootSystem, mu: Weight, a: Fraction, src: WeylElt, dst: WeylElt) -> bool:
    return dst in _reach_sets(rs, mu, a)[src]


def enumerate_qls(rs: RootSystem, mu: Weight, cuts=None) -> list:
    """All quantum LS paths of shape mu, sorted deterministically.

    ``cuts`` overrides the candidate cut values (used by denser-grid checks).
    """
    if rs.rank > 3 or pair(mu.coeffs, rs.theta_coroot) > 6:
        raise WeightTooLarge("enumeration guarded to rank <= 3 and <mu, theta^vee> <= 6")
    key = ("qls", mu.coeffs, None if cuts is None else tuple(cuts))
    got = rs._cache.get(key)
    if got is not None:
        return got
    J = rs.J_of(mu)
    verts = rs.weyl_min_reps(J)
    cand = candidate_cuts(cut_denominators(rs, mu)) if cuts is None else sorted(set(cuts))
    out = []

    def rec(dirs_rev, cuts_rev):
        # dirs_rev = (w_s, w_{s-1}, ...), cuts_rev = (1, a_{s-1}, ...)
        out.append(QLSPath(mu, tuple(reversed(dirs_rev)), (Fraction(0),) + tuple(reversed(cuts_rev))))
        last_w, last_a = dirs_rev[-1], cuts_rev[-1]
        for a in cand:
            if a >= last_a:
                break
            reach = _reach_sets(rs, mu, a)[last_w]
            for w in verts:
                if w != last_w and w in reach:
                    rec(dirs_rev + (w,), cuts_rev + (a,))

    for w in verts:
        rec((w,), (Fraction(1),))
    out.sort(key=_qls_key)
    rs._cache[key] = out
    return out


def _qls_key(eta: QLSPath):
    return (len(eta.dirs), [(len(w.word), w.word) for w in eta.dirs], eta.cuts)


def is_qls(eta: QLSPath) -> bool:
    rs = eta.rs
    s = len(eta.dirs)
    if len(eta.cuts) != s + 1 or eta.cuts[0] != 0 or eta.cuts[-1] != 1:
        return False
    if any(a >= b for a, b in zip(eta.cuts, eta.cuts[1:])):
        return False
    J = rs.J_of(eta.shape)
    if any(rs.min_coset_rep(w, J) != w for w in eta.dirs):
        return False
    for u in range(s - 1):
        if eta.dirs[u] == eta.dirs[u + 1]:
            return False
        if not qls_reachable(rs, eta.shape, eta.cuts[u + 1], eta.dirs[u + 1], eta.dirs[u]):
            return False
    return True


def wt(eta: QLSPath) -> Weight:
    n = len(eta.shape.coeffs)
    acc = [Fraction(0)] * n
    for u, w in enumerate(eta.dirs):
        h = eta.cuts[u + 1] - eta.cuts[u]
        for k, c in enumerate(w.act_weight_coeffs(eta.shape.coeffs)):
            acc[k] += h * c
    if any(a.denominator != 1 for a in acc):
        raise ArithmeticError("non-integral weight")
    return Weight(tuple(int(a) for a in acc), 0)


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError("non-integral degree")
    return int(x)


def deg(eta: QLSPath) -> int:
    """``Deg(eta) = -sum_{u<s} a_u <mu, wt(w_{u+1} => w_u)>``."""
    rs = eta.rs
    J = rs.J_of(eta.shape)
    tot = Fraction(0)
    for u in range(len(eta.dirs) - 1):
        tot += eta.cuts[u + 1] * pair(eta.shape.coeffs, qbg_wt(rs, eta.dirs[u + 1], eta.dirs[u], J))
    return _as_int(-tot)


def _tilde(eta: QLSPath, x: WeylElt):
    rs = eta.rs
    J = rs.J_of(eta.shape)
    seq = [x]
    for w in reversed(eta.dirs):
        seq.append(tbmin(rs, w, J, seq[-1]))
    return seq  # seq[k] = w~_{s+1-k}


def iota_wrt(eta: QLSPath, x: WeylElt) -> WeylElt:
    """``w~_1`` from ``w~_{s+1} = x``, ``w~_u = min(w_u W_J, <=_{w~_{u+1}})``."""
    return _tilde(eta, x)[-1]


def xi(eta: QLSPath, x: WeylElt) -> tuple:
    """``xi(eta, x) = sum_u wt(w~_{u+1} => w~_u)``."""
    rs = eta.rs
    seq = _tilde(eta, x)
    acc = rs.zero()
    for a, b in zip(seq, seq[1:]):
        acc = vadd(acc, qbg_wt(rs, a, b))
    return acc


def deg_wrt(eta: QLSPath, x: WeylElt) -> int:
    """``Deg_x(eta) = -sum_{u=1}^{s} a_u <mu, wt(w~_{u+1} => w~_u)>``."""
    rs = eta.rs
    seq = _tilde(eta, x)
    s = len(eta.dirs)
    tot = Fraction(0)
    for k in range(s):
        u = s - k  # pair (w~_{u+1}, w~_u)
        tot += eta.cuts[u] * pair(eta.shape.coeffs, qbg_wt(rs, seq[k], seq[k + 1]))
    return _as_int(-tot)


def _hat(eta: QLSPath, v: WeylElt):
    rs = eta.rs
    J = rs.J_of(eta.shape)
    seq = [v]
    for w in eta.dirs:
        seq.append(tbmax(rs, w, J, seq[-1]))
    return seq  # seq[u] = w^_u


def kappa_wrt(eta: QLSPath, v: WeylElt) -> WeylElt:
    """``w^_s`` from ``w^_0 = v``, ``w^_u = max(w_u W_J, <=*_{w^_{u-1}})``."""
    return _hat(eta, v)[-1]


def zeta(eta: QLSPath, v: WeylElt) -> tuple:
    """``zeta(eta, v) = wt(w^_1 => v) + sum_{u<s} wt(w^_{u+1} => w^_u)``."""
    rs = eta.rs
    seq = _hat(eta, v)
    acc = qbg_wt(rs, seq[1], v)
    for u in range(1, len(eta.dirs)):
        acc = vadd(acc, qbg_wt(rs, seq[u + 1], seq[u]))
    return acc


def pi_eta_translations(eta: QLSPath) -> list:
    """``xi_s = 0``, ``xi_u = xi_{u+1} + wt(w_{u+1} => w_u)``."""
    rs = eta.rs
    J = rs.J_of(eta.shape)
    s = len(eta.dirs)
    xs = [rs.zero()] * s
    for u in range(s - 2, -1, -1):
        xs[u] = vadd(xs[u + 1], qbg_wt(rs, eta.dirs[u + 1], eta.dirs[u], J))
    return xs


def lift_pi_eta(eta: QLSPath) -> SLSPath:
    """``pi_eta = (w_1 Π(t_xi_1), ..., w_s; a)``."""
    rs = eta.rs
    J = rs.J_of(eta.shape)
    xs = pi_eta_translations(eta)
    dirs = tuple(pi_J(rs, AffineElt(w, x), J) for w, x in zip(eta.dirs, xs))
    return SLSPath(eta.shape, dirs, eta.cuts)


def lift_pi_chi_eta(eta: QLSPath, chi) -> SLSPath:
    """The element of the component ``SLS_chi`` over eta with final direction ``kappa(eta)``."""
    rs = eta.rs
    mu = eta.shape
    J = rs.J_of(mu)
    xs = pi_eta_translations(eta)
    marks = sorted(set(eta.cuts) | set(turn_points(mu)))
    pieces = []
    for lo, hi in zip(marks, marks[1:]):
        u = next(k for k in range(len(eta.dirs)) if eta.cuts[k] < hi <= eta.cuts[k + 1])
        tr = vadd(xs[u], chi_shift(chi, mu, hi))
        pieces.append((lo, hi, pi_J(rs, AffineElt(eta.dirs[u], tr), J)))
    return _normalize(mu, pieces)


def cl_project(pi: SLSPath) -> QLSPath:
    """Forget translations and merge equal neighbouring directions."""
    dirs, cuts = [], [Fraction(0)]
    for u, x in enumerate(pi.dirs):
        if dirs and dirs[-1] == x.w:
            cuts[-1] = pi.cuts[u + 1]
        else:
            dirs.append(x.w)
            cuts.append(pi.cuts[u + 1])
    return QLSPath(pi.shape, tuple(dirs), tuple(cuts))


def qls_to_json(eta: QLSPath) -> dict:
    return {
        "shape": list(eta.shape.coeffs),
        "dirs": [list(w.word) for w in eta.dirs],
        "cuts": [f"{a.numerator}/{a.denominator}" for a in eta.cuts],
    }
