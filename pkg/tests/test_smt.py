from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qkchev.affine import AffineElt
from qkchev.rootdata import Weight, root_system
from qkchev.slspath import bounded_region, demazure_member, extremal_path, f_op, partition_tuples, straight_path, translate, wt
from qkchev.smt import (
    ConstraintViolation,
    TensorElt,
    ThetaDatum,
    initial_final_compatible,
    par_lambda_mu,
    phi,
    phi_word_independent,
    sm_member_lower,
    sm_member_upper,
    tensor_dual,
    tensor_e,
    tensor_eps,
    tensor_f,
    tensor_phi,
    tensor_wt,
    theta,
    theta_inv,
)

A2 = root_system("A2")
W1, W2, RHO = Weight((1, 0)), Weight((0, 1)), Weight((1, 1))


def test_theta_examples():
    d = ThetaDatum(((), ()), ((), ()), (1, 0))
    assert theta(d, W1, W1) == ((1,), ())
    assert theta_inv(((1,), ()), W1, W1) == d
    assert theta(ThetaDatum(((), ()), ((), ()), (0, 0)), W1, W2) == ((), ())
    with pytest.raises(ConstraintViolation):
        theta(ThetaDatum(((), ()), ((), ()), (0, 1)), W1, W1)
    with pytest.raises(ConstraintViolation):
        theta(ThetaDatum(((), ()), ((2,), ()), (1, 0)), W1, Weight((2, 0)))


@pytest.mark.parametrize("lam,mu", [((1, 0), (1, 0)), ((2, 1), (1, 1)), ((1, 2), (2, 0)), ((0, 2), (0, 1)), ((3, 0), (2, 0))])
def test_theta_is_a_bijection(lam, mu):
    lam, mu = Weight(lam), Weight(mu)
    M = 3
    data = par_lambda_mu(lam, mu, M)
    images = [theta(d, lam, mu) for d in data]
    assert len(set(images)) == len(images)
    for d, om in zip(data, images):
        assert theta_inv(om, lam, mu) == d
    # every target with entries at most M comes from a datum with entries at most M
    for om in partition_tuples(lam + mu, M):
        d = theta_inv(om, lam, mu)
        assert theta(d, lam, mu) == om


def test_tensor_signature_rule():
    rs = A2
    p = straight_path(rs, W1)
    b = TensorElt(p, p)
    assert tensor_wt(b) == Weight((2, 0))
    assert (tensor_eps(b, 1), tensor_phi(b, 1)) == (0, 2)
    # phi_1(left) = 1 > eps_1(right) = 0, so f_1 hits the left factor first
    b1 = tensor_f(1, b)
    assert b1 == TensorElt(f_op(p, 1), p)
    assert tensor_f(1, b1) == TensorElt(f_op(p, 1), f_op(p, 1))
    assert tensor_e(1, b1) == b
    assert tensor_dual(tensor_dual(b1)) == b1


def test_phi_on_extremal_anchor():
    rs = A2
    lam = Weight((2, 0))
    base = extremal_path(rs, ((1,), ()), lam)
    got = phi(base, W1, W1)
    assert got == TensorElt(translate(straight_path(rs, W1), (1, 0)), straight_path(rs, W1))
    assert phi(straight_path(rs, lam), W1, W1) == TensorElt(straight_path(rs, W1), straight_path(rs, W1))


@pytest.mark.parametrize("lam,mu", [(W1, W1), (W1, W2), (RHO, W1)])
def test_phi_is_an_injective_morphism(lam, mu):
    rs = A2
    region = bounded_region(rs, lam + mu, 2)
    members = set(region)
    images = {}
    for p in region:
        b = phi(p, lam, mu)
        assert b not in images
        images[b] = p
        assert tensor_wt(b) == wt(p)
        assert initial_final_compatible(p, lam, mu)
        for i in range(3):
            assert phi_word_independent(p, lam, mu, i)
            q = f_op(p, i)
            if q is not None and q in members:
                assert phi(q, lam, mu) == tensor_f(i, b)


def test_membership_transfers():
    rs = A2
    lam, mu = W1, W1
    box = [AffineElt(w, xi) for w in rs.weyl for xi in itertools.product(range(-1, 2), repeat=2)]
    for p in bounded_region(rs, lam + mu, 1):
        b = phi(p, lam, mu)
        for y in box:
            assert demazure_member(p, y) == sm_member_upper(b, y)
            assert demazure_member(p, y, "<=") == sm_member_lower(b, y)


@settings(max_examples=40, deadline=None)
@given(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(0, 4))
def test_theta_round_trip_random(lam, mu, M):
    lam, mu = Weight(lam), Weight(mu)
    for d in par_lambda_mu(lam, mu, M)[:50]:
        assert theta_inv(theta(d, lam, mu), lam, mu) == d
