"""Standard monomial theory: tensor crystals, the component bijection Θ and Φ_{λμ}."""

from __future__ import annotations

from collections import deque
from itertools import product
from typing import NamedTuple

from .affine import AffineElt, coroot_pairing_affine, para_lift, pi_J
from .lifts import PreconditionFailed
from .rootdata import Weight, vadd
from .siorder import si_leq
from .slspath import (
    SLSPath,
    check_partition_tuple,
    component_of,
    dual,
    e_op,
    eps,
    extremal_path,
    f_op,
    iota,
    iota_wrt,
    kappa,
    kappa_wrt,
    partitions,
    phi as path_phi,
    weyl_act,
    wt,
)


class ConstraintViolation(ValueError):
    pass


class AnchorNotFound(RuntimeError):
    pass


class TransportMismatch(AssertionError):
    pass


class TensorElt(NamedTuple):
    left: SLSPath
    right: SLSPath

    def __repr__(self):
        return f"{self.left!r} ⊗ {self.right!r}"


class ThetaDatum(NamedTuple):
    sigma: tuple
    chi: tuple
    xi: tuple


# tensor crystal --------------------------------------------------------------


def tensor_wt(b: TensorElt) -> Weight:
    return wt(b.left) + wt(b.right)


def tensor_eps(b: TensorElt, i: int) -> int:
    rs = b.left.rs
    return max(eps(b.left, i), eps(b.right, i) - coroot_pairing_affine(rs, wt(b.left).coeffs, i))


def tensor_phi(b: TensorElt, i: int) -> int:
    rs = b.left.rs
    return max(path_phi(b.right, i), path_phi(b.left, i) + coroot_pairing_affine(rs, wt(b.right).coeffs, i))


def tensor_f(i: int, b: TensorElt):
    """``f_i`` acts on the left factor iff ``phi_i(left) > eps_i(right)``."""
    if path_phi(b.left, i) > eps(b.right, i):
        got = f_op(b.left, i)
        return None if got is None else TensorElt(got, b.right)
    got = f_op(b.right, i)
    return None if got is None else TensorElt(b.left, got)


def tensor_e(i: int, b: TensorElt):
    """``e_i`` acts on the left factor iff ``phi_i(left) >= eps_i(right)``."""
    if path_phi(b.left, i) >= eps(b.right, i):
        got = e_op(b.left, i)
        return None if got is None else TensorElt(got, b.right)
    got = e_op(b.right, i)
    return None if got is None else TensorElt(b.left, got)


def tensor_dual(b: TensorElt) -> TensorElt:
    """``(pi ⊗ eta)^* = eta^* ⊗ pi^*``."""
    return TensorElt(dual(b.right), dual(b.left))


def tensor_weyl_reflect(b: TensorElt, i: int) -> TensorElt:
    n = coroot_pairing_affine(b.left.rs, tensor_wt(b).coeffs, i)
    for _ in range(abs(n)):
        b = tensor_f(i, b) if n > 0 else tensor_e(i, b)
    return b


# the bijection Θ -------------------------------------------------------------


def _pad(part, n):
    return list(part) + [0] * (n - len(part))


def _strip(parts):
    return tuple(p for p in parts if p)


def theta(d: ThetaDatum, lam: Weight, mu: Weight) -> tuple:
    """``Par(lambda, mu) -> Par(lambda + mu)``, column by column."""
    check_partition_tuple(d.sigma, lam)
    check_partition_tuple(d.chi, mu)
    out = []
    for i, (li, mi) in enumerate(zip(lam.coeffs, mu.coeffs)):
        c = d.xi[i]
        if (li == 0 or mi == 0) and c != 0:
            raise ConstraintViolation(f"xi must vanish at index {i + 1}")
        chi = _pad(d.chi[i], max(mi - 1, 0))
        if li and mi and chi and c < chi[0]:
            raise ConstraintViolation(f"c_{i + 1} < chi_1 at index {i + 1}")
        parts = []
        if li:
            parts += [s + c for s in _pad(d.sigma[i], li - 1)] + [c]
        if mi:
            parts += chi
        out.append(_strip(parts))
    return tuple(out)


def theta_inv(omega, lam: Weight, mu: Weight) -> ThetaDatum:
    nu = lam + mu
    check_partition_tuple(omega, nu)
    sig, chi, xi = [], [], []
    for i, (li, mi) in enumerate(zip(lam.coeffs, mu.coeffs)):
        om = _pad(omega[i], li + mi - 1) if li + mi else []
        if li and mi:
            c = om[li - 1]
            sig.append(_strip(o - c for o in om[: li - 1]))
            chi.append(_strip(om[li:]))
            xi.append(c)
        elif li:
            sig.append(_strip(om))
            chi.append(())
            xi.append(0)
        else:
            sig.append(())
            chi.append(_strip(om))
            xi.append(0)
    return ThetaDatum(tuple(sig), tuple(chi), tuple(xi))


def par_lambda_mu(lam: Weight, mu: Weight, maxpart: int) -> list:
    """``Par(lambda, mu)`` with all entries (and the c_i) at most maxpart."""
    n = len(lam.coeffs)
    sigs = [partitions(max(li - 1, 0), maxpart) for li in lam.coeffs]
    chis = [partitions(max(mi - 1, 0), maxpart) for mi in mu.coeffs]
    cs = [range(maxpart + 1) if li and mi else range(1) for li, mi in zip(lam.coeffs, mu.coeffs)]
    out = []
    for s in product(*sigs):
        for c in product(*chis):
            for x in product(*cs):
                if all(not c[i] or x[i] >= c[i][0] for i in range(n) if lam.coeffs[i] and mu.coeffs[i]):
                    out.append(ThetaDatum(s, c, x))
    return out


# Φ_{λμ} by transport ---------------------------------------------------------


def anchor_image(rs, x: AffineElt, d: ThetaDatum, lam: Weight, mu: Weight) -> TensorElt:
    """``Φ(x · pi_omega) = (x t_xi · pi_sigma) ⊗ (x · pi_chi)``."""
    xt = AffineElt(x.w, vadd(x.xi, d.xi))
    left = weyl_act(xt, extremal_path(rs, d.sigma, lam))
    right = weyl_act(x, extremal_path(rs, d.chi, mu))
    return TensorElt(left, right)


def _as_anchor(psi: SLSPath, base: SLSPath):
    """x with ``psi = x · base`` if psi is a Weyl translate of the extremal path base."""
    if psi.cuts != base.cuts:
        return None
    rs = psi.rs
    x = para_lift(rs, kappa(psi))
    return x if weyl_act(x, base) == psi else None


def _transport_word(psi: SLSPath, base: SLSPath, budget: int):
    rs = psi.rs
    ops = range(rs.rank + 1)
    seen = {psi: None}
    queue = deque([(psi, 0)])
    while queue:
        cur, depth = queue.popleft()
        x = _as_anchor(cur, base)
        if x is not None:
            word = []
            node = cur
            while seen[node] is not None:
                prev, op = seen[node]
                word.append(op)
                node = prev
            return x, word[::-1]
        if depth >= budget:
            continue
        for i in ops:
            for kind, fn in (("e", e_op), ("f", f_op)):
                nxt = fn(cur, i)
                if nxt is not None and nxt not in seen:
                    seen[nxt] = (cur, (kind, i))
                    queue.append((nxt, depth + 1))
    raise AnchorNotFound(f"no extremal anchor within {budget} steps")


def phi(psi: SLSPath, lam: Weight, mu: Weight, budget: int = 40) -> TensorElt:
    """``Φ_{lambda mu}(psi)``: walk to an anchor ``x · pi_omega``, map it, walk back."""
    rs = psi.rs
    key = ("phi", psi, lam.coeffs, mu.coeffs)
    got = rs._cache.get(key)
    if got is not None:
        return got
    omega = component_of(psi)
    d = theta_inv(omega, lam, mu)
    base = extremal_path(rs, omega, lam + mu)
    x, word = _transport_word(psi, base, budget)
    b = anchor_image(rs, x, d, lam, mu)
    for kind, i in reversed(word):
        b = tensor_f(i, b) if kind == "e" else tensor_e(i, b)
        if b is None:
            raise TransportMismatch("inverse word left the tensor crystal")
    rs._cache[key] = b
    return b


def phi_word_independent(psi: SLSPath, lam: Weight, mu: Weight, i: int) -> bool:
    """Recompute Φ(psi) through the neighbour ``f_i psi`` (or ``e_i psi``) and compare."""
    b = phi(psi, lam, mu)
    nb = f_op(psi, i)
    if nb is not None:
        return tensor_e(i, phi(nb, lam, mu)) == b
    nb = e_op(psi, i)
    if nb is not None:
        return tensor_f(i, phi(nb, lam, mu)) == b
    return True


# Demazure-compatibility ------------------------------------------------------


def sm_member_upper(b: TensorElt, y: AffineElt) -> bool:
    """``kappa(eta) ⪰ Π^{J_mu}(y)`` and ``kappa(pi) ⪰ Π^{J_lambda}(iota(eta, y))``."""
    rs = b.left.rs
    Jl, Jm = rs.J_of(b.left.shape), rs.J_of(b.right.shape)
    if not si_leq(rs, pi_J(rs, y, Jm), kappa(b.right)):
        return False
    z = iota_wrt(b.right, y)
    return si_leq(rs, pi_J(rs, z, Jl), kappa(b.left))


def sm_member_lower(b: TensorElt, y: AffineElt) -> bool:
    """``iota(pi) ⪯ Π^{J_lambda}(y)`` and ``iota(eta) ⪯ Π^{J_mu}(kappa(pi, y))``."""
    rs = b.left.rs
    Jl, Jm = rs.J_of(b.left.shape), rs.J_of(b.right.shape)
    if not si_leq(rs, iota(b.left), pi_J(rs, y, Jl)):
        return False
    z = kappa_wrt(b.left, y)
    return si_leq(rs, iota(b.right), pi_J(rs, z, Jm))


def smt_direction_identity(psi: SLSPath, y: AffineElt, lam: Weight, mu: Weight, mode: str = ">=") -> bool:
    """``iota(psi, y) = iota(pi, iota(eta, y))`` (mode ``>=``) or ``kappa(psi, y) = kappa(eta, kappa(pi, y))``."""
    rs = psi.rs
    J = rs.J_of(psi.shape)
    b = phi(psi, lam, mu)
    py = pi_J(rs, y, J)
    if mode == ">=":
        if not si_leq(rs, py, kappa(psi)):
            raise PreconditionFailed("psi is not in the Demazure crystal above y")
        return iota_wrt(psi, y) == iota_wrt(b.left, iota_wrt(b.right, y))
    if mode == "<=":
        if not si_leq(rs, iota(psi), py):
            raise PreconditionFailed("psi is not in the opposite Demazure crystal below y")
        return kappa_wrt(psi, y) == kappa_wrt(b.right, kappa_wrt(b.left, y))
    raise ValueError(mode)


def initial_final_compatible(psi: SLSPath, lam: Weight, mu: Weight) -> bool:
    """``iota(pi) = Π^{J_lambda}(iota(psi))`` and ``kappa(eta) = Π^{J_mu}(kappa(psi))``."""
    rs = psi.rs
    b = phi(psi, lam, mu)
    Jl, Jm = rs.J_of(lam), rs.J_of(mu)
    ok_i = iota(b.left) == pi_J(rs, para_lift(rs, iota(psi)), Jl)
    ok_k = kappa(b.right) == pi_J(rs, para_lift(rs, kappa(psi)), Jm)
    return ok_i and ok_k
