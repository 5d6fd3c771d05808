"""The affine Weyl group ``W ⋉ Q^vee`` and canonical (W^J)_af representatives."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import NamedTuple

from .rootdata import RootSystem, WeylElt, Weight, pair, vadd, vneg, vscale


class AffineElt(NamedTuple):
    """The element ``w t_xi``."""

    w: WeylElt
    xi: tuple

    def __repr__(self):
        return f"{self.w!r}·t{list(self.xi)}"


class ParaAffElt(NamedTuple):
    """``w Π^J(t_xi)`` stored canonically as ``(w in W^J, [xi]^J, J)``."""

    w: WeylElt
    xibar: tuple
    J: frozenset

    def __repr__(self):
        return f"{self.w!r}·Π(t{list(self.xibar)})"


class AffineRoot(NamedTuple):
    """The real root ``alpha + n delta``."""

    alpha: tuple
    n: int

    def is_positive(self) -> bool:
        return self.n > 0 or (self.n == 0 and all(c >= 0 for c in self.alpha))


def identity(rs: RootSystem) -> AffineElt:
    return AffineElt(rs.identity, rs.zero())


def translation(rs: RootSystem, xi) -> AffineElt:
    return AffineElt(rs.identity, tuple(xi))


def mul(x: AffineElt, y: AffineElt) -> AffineElt:
    """``(w t_xi)(v t_zeta) = wv t_{v^{-1} xi + zeta}``."""
    vinv = y.w.inverse()
    return AffineElt(x.w * y.w, vadd(vinv.act_coroot(x.xi), y.xi))


def inverse(x: AffineElt) -> AffineElt:
    return AffineElt(x.w.inverse(), vneg(x.w.act_coroot(x.xi)))


def reflection(rs: RootSystem, beta: AffineRoot) -> AffineElt:
    """``s_{alpha + n delta} = s_alpha t_{n alpha^vee}``."""
    alpha = beta.alpha
    sgn = 1 if rs.is_positive_root(alpha) else -1
    cor = vscale(sgn, rs.coroot(vscale(sgn, alpha)))
    return AffineElt(rs.reflection(alpha), vscale(beta.n, cor))


def simple_affine(rs: RootSystem, i: int) -> AffineElt:
    if i == 0:
        return reflection(rs, AffineRoot(vneg(rs.theta_root), 1))
    return AffineElt(rs.s(i), rs.zero())


def simple_reflect(rs: RootSystem, i: int, x: AffineElt) -> AffineElt:
    """``s_i x`` for ``i`` in ``I_af = {0} ∪ I``."""
    if i == 0:
        return mul(simple_affine(rs, 0), x)
    return AffineElt(rs.s(i) * x.w, x.xi)


def level_zero_act(rs: RootSystem, x: AffineElt, nu: Weight) -> Weight:
    """``w t_xi`` acts by ``nu -> w nu - <nu, xi> delta``."""
    return Weight(x.w.act_weight_coeffs(nu.coeffs), nu.dcoeff - pair(nu.coeffs, x.xi))


def act_affine_root(rs: RootSystem, x: AffineElt, beta: AffineRoot) -> AffineRoot:
    """``w t_xi (alpha + n delta) = w alpha + (n - <alpha, xi>) delta``."""
    return AffineRoot(x.w.act_root(beta.alpha), beta.n - rs.root_pair(beta.alpha, x.xi))


def semiinf_length(rs: RootSystem, x: AffineElt) -> int:
    """``ℓ(w) + 2 <rho, xi>``."""
    return len(x.w.word) + 2 * sum(x.xi)


def in_parabolic(rs: RootSystem, x: AffineElt, J) -> bool:
    """Whether ``x`` is a (W^J)_af element.

    For ``alpha`` in ``Δ_J^+`` the pairing ``<alpha, xi>`` must be ``0`` (with
    ``w alpha > 0``) or ``-1`` (with ``w alpha < 0``).
    """
    for alpha in rs.positive_roots_J(J):
        p = rs.root_pair(alpha, x.xi)
        if p == 0:
            if not rs.is_positive_root(x.w.act_root(alpha)):
                return False
        elif p == -1:
            if rs.is_positive_root(x.w.act_root(alpha)):
                return False
        else:
            return False
    return True


def in_parabolic_scan(rs: RootSystem, x: AffineElt, J, nmax: int = 3) -> bool:
    """Brute-force positivity scan over ``(Δ_J)_af^+`` with ``n <= nmax``."""
    for alpha in rs.positive_roots_J(J):
        for sgn in (1, -1):
            a = vscale(sgn, alpha)
            for n in range(0 if sgn == 1 else 1, nmax + 1):
                if not act_affine_root(rs, x, AffineRoot(a, n)).is_positive():
                    return False
    return True


def _solve(m, rhs):
    """Exact solution of a small nonsingular linear system."""
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(m, rhs)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[i][n] / a[i][i] for i in range(n)]


def translation_rep(rs: RootSystem, xibar, J) -> AffineElt:
    """The element ``Π^J(t_xi) = u t_eta`` of ``W_af`` with ``u in W_J``."""
    J = frozenset(J)
    xibar = tuple(xibar)
    key = ("trep", xibar, J)
    got = rs._cache.get(key)
    if got is not None:
        return got
    Jl = sorted(J)
    if not Jl:
        res = AffineElt(rs.identity, xibar)
        rs._cache[key] = res
        return res
    a = rs.cartan
    # unknown eta_i for i in J; <alpha_j, eta> = sum_i a_ij eta_i
    m = [[a[i - 1][j - 1] for i in Jl] for j in Jl]
    base = [sum(a[i][j - 1] * xibar[i] for i in range(rs.rank) if i + 1 not in J) for j in Jl]
    posJ = rs.positive_roots_J(J)
    res = None
    for p in product((0, -1), repeat=len(Jl)):
        sol = _solve(m, [pj - b for pj, b in zip(p, base)])
        if any(s.denominator != 1 for s in sol):
            continue
        eta = list(xibar)
        for i, s in zip(Jl, sol):
            eta[i - 1] = int(s)
        eta = tuple(eta)
        pairs = [rs.root_pair(al, eta) for al in posJ]
        if any(q not in (0, -1) for q in pairs):
            continue
        neg = {al for al, q in zip(posJ, pairs) if q == -1}
        for u in rs.weyl_J(J):
            if all((not rs.is_positive_root(u.act_root(al))) == (al in neg) for al in posJ):
                res = AffineElt(u, eta)
                break
        if res is not None:
            break
    if res is None:
        raise ArithmeticError("no (W^J)_af representative found")
    rs._cache[key] = res
    return res


def pi_J(rs: RootSystem, x: AffineElt, J) -> ParaAffElt:
    J = frozenset(J)
    return ParaAffElt(rs.min_coset_rep(x.w, J), rs.proj_up(x.xi, J), J)


def para(rs: RootSystem, w: WeylElt, xi, J) -> ParaAffElt:
    """``Π^J(w t_xi)`` for convenience."""
    return pi_J(rs, AffineElt(w, tuple(xi)), J)


def para_lift(rs: RootSystem, x: ParaAffElt) -> AffineElt:
    """The actual element of ``W_af`` represented by ``x``."""
    rep = translation_rep(rs, x.xibar, x.J)
    return AffineElt(x.w * rep.w, rep.xi)


def para_length(rs: RootSystem, x: ParaAffElt) -> int:
    return semiinf_length(rs, para_lift(rs, x))


def para_left_mul(rs: RootSystem, z: AffineElt, x: ParaAffElt) -> ParaAffElt:
    """``Π^J(z x)`` for ``z = v t_zeta``: ``(⌊v w⌋, [w^{-1} zeta + xi]^J)``."""
    w = x.w
    xi = vadd(w.inverse().act_coroot(z.xi), x.xibar)
    return ParaAffElt(rs.min_coset_rep(z.w * w, x.J), rs.proj_up(xi, x.J), x.J)


def para_translate(rs: RootSystem, x: ParaAffElt, beta) -> ParaAffElt:
    """``Π^J(x t_beta)``."""
    return ParaAffElt(x.w, rs.proj_up(vadd(x.xibar, beta), x.J), x.J)


def para_weight(rs: RootSystem, x: ParaAffElt, lam: Weight) -> Weight:
    """``x lambda = w lambda - <lambda, xi> delta`` (lambda with ``J_lambda ⊇ J``)."""
    return Weight(x.w.act_weight_coeffs(lam.coeffs), lam.dcoeff - pair(lam.coeffs, x.xibar))


def coroot_pairing_affine(rs: RootSystem, nu_coeffs, i: int) -> int:
    """``<nu, alpha_i^vee>`` on level-zero weights (``alpha_0^vee`` gives ``-<nu, theta^vee>``)."""
    if i == 0:
        return -pair(nu_coeffs, rs.theta_coroot)
    return nu_coeffs[i - 1]


def para_reflect(rs: RootSystem, i: int, x: ParaAffElt, lam: Weight):
    """``Π^J(s_i x)`` when ``<x lambda, alpha_i^vee> != 0``; otherwise ``None`` (x is fixed)."""
    p = coroot_pairing_affine(rs, x.w.act_weight_coeffs(lam.coeffs), i)
    if p == 0:
        return None
    return para_left_mul(rs, simple_affine(rs, i), x)


def para_simple_left(rs: RootSystem, i: int, x: ParaAffElt) -> ParaAffElt:
    return para_left_mul(rs, simple_affine(rs, i), x)


def star_dual(rs: RootSystem, x: ParaAffElt) -> ParaAffElt:
    """``Π^{J*}(x w∘) = ⌊w w∘⌋^{J*} Π^{J*}(t_{-xi*})``."""
    Js = rs.star_set(x.J)
    w = rs.min_coset_rep(x.w * rs.w0, Js)
    return ParaAffElt(w, rs.proj_up(vneg(rs.star_coroot(x.xibar)), Js), Js)


def affine_to_json(x: AffineElt) -> dict:
    return {"w": list(x.w.word), "xi": list(x.xi)}


def para_to_json(x: ParaAffElt) -> dict:
    return {"w": list(x.w.word), "xibar": list(x.xibar), "J": sorted(x.J)}


def para_from_json(rs: RootSystem, d: dict) -> ParaAffElt:
    J = frozenset(d.get("J", ()))
    return pi_J(rs, AffineElt(rs.from_word(d["w"]), tuple(d["xibar"])), J)
