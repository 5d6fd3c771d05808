"""Minimal and maximal lifts along the Peterson projection ``Π^J``."""

from __future__ import annotations

from itertools import product

from .affine import AffineElt, ParaAffElt, pi_J
from .qbg import qbg_wt, tbmax, tbmin
from .rootdata import RootSystem, vadd, vsub
from .siorder import affine_leq, si_leq


class PreconditionFailed(ValueError):
    pass


def min_lift(rs: RootSystem, y: AffineElt, x: ParaAffElt) -> AffineElt:
    """``min Lift_{⪰y}(x)``, defined when ``x ⪰ Π^J(y)``."""
    J = x.J
    if not si_leq(rs, pi_J(rs, y, J), x):
        raise PreconditionFailed("x is not above Π^J(y)")
    w = tbmin(rs, x.w, J, y.w)
    gamma = vadd(x.xibar, rs.proj_down(vadd(y.xi, qbg_wt(rs, y.w, w)), J))
    return AffineElt(w, gamma)


def max_lift(rs: RootSystem, y: AffineElt, x: ParaAffElt) -> AffineElt:
    """``max Lift_{⪯y}(x)``, defined when ``Π^J(y) ⪰ x``."""
    J = x.J
    if not si_leq(rs, x, pi_J(rs, y, J)):
        raise PreconditionFailed("x is not below Π^J(y)")
    w = tbmax(rs, x.w, J, y.w)
    gamma = vadd(x.xibar, rs.proj_down(vsub(y.xi, qbg_wt(rs, w, y.w)), J))
    return AffineElt(w, gamma)


def lift_set(rs: RootSystem, x: ParaAffElt, radius: int) -> list:
    """``Lift(x)`` restricted to ``Q_J^vee`` components of size at most ``radius``."""
    J = sorted(x.J)
    out = []
    for u in rs.weyl_J(x.J):
        for c in product(range(-radius, radius + 1), repeat=len(J)):
            xi = list(x.xibar)
            for j, v in zip(J, c):
                xi[j - 1] += v
            out.append(AffineElt(x.w * u, tuple(xi)))
    return out


def min_lift_scan(rs: RootSystem, y: AffineElt, x: ParaAffElt, radius: int = 3) -> AffineElt:
    """Brute-force minimum of ``Lift(x) ∩ {⪰ y}`` within the box; must be unique."""
    cands = [z for z in lift_set(rs, x, radius) if affine_leq(rs, y, z)]
    mins = [m for m in cands if all(affine_leq(rs, m, z) for z in cands)]
    if len(mins) != 1:
        raise PreconditionFailed(f"{len(mins)} minima in scanned box")
    return mins[0]


def max_lift_scan(rs: RootSystem, y: AffineElt, x: ParaAffElt, radius: int = 3) -> AffineElt:
    cands = [z for z in lift_set(rs, x, radius) if affine_leq(rs, z, y)]
    maxs = [m for m in cands if all(affine_leq(rs, z, m) for z in cands)]
    if len(maxs) != 1:
        raise PreconditionFailed(f"{len(maxs)} maxima in scanned box")
    return maxs[0]
