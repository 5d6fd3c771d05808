from __future__ import annotations

from fractions import Fraction

import pytest

from qkchev.qlspath import (
    QLSPath,
    WeightTooLarge,
    cl_project,
    cut_denominators,
    deg,
    deg_wrt,
    enumerate_qls,
    is_qls,
    iota_wrt,
    kappa_wrt,
    lift_pi_chi_eta,
    lift_pi_eta,
    wt,
    xi,
    zeta,
)
from qkchev.rootdata import Weight, root_system
from qkchev.slspath import component_of, partition_tuples, validate, wt as sls_wt

A2 = root_system("A2")


@pytest.mark.parametrize(
    "name,lam,count",
    [("A2", (1, 0), 3), ("A2", (1, 1), 9), ("A2", (2, 1), 27), ("C2", (0, 1), 5), ("C2", (1, 1), 20), ("G2", (1, 0), 7), ("G2", (0, 1), 15)],
)
def test_qls_counts(name, lam, count):
    rs = root_system(name)
    paths = enumerate_qls(rs, Weight(lam))
    assert len(paths) == count
    assert all(is_qls(p) for p in paths)
    assert len(set(paths)) == count


@pytest.mark.parametrize("name,lam", [("A2", (1, 1)), ("A2", (2, 1)), ("C2", (1, 1)), ("G2", (1, 0))])
def test_dense_grid_adds_nothing(name, lam):
    rs = root_system(name)
    grid = [Fraction(k, 60) for k in range(1, 60)]
    assert enumerate_qls(rs, Weight(lam), grid) == enumerate_qls(rs, Weight(lam))


def test_cut_denominators():
    assert cut_denominators(A2, Weight((1, 1))) == [1, 2]
    assert cut_denominators(root_system("C2"), Weight((0, 1))) == [1, 2]


def test_rho_listing_and_degrees():
    rs = A2
    rho = Weight((1, 1))
    paths = enumerate_qls(rs, rho)
    straight = [p for p in paths if len(p.dirs) == 1]
    assert len(straight) == 6 and all(deg(p) == 0 for p in straight)
    two = {p.dirs: p for p in paths if len(p.dirs) == 2}
    w = rs.from_word
    assert set(two) == {(rs.identity, rs.w0), (w([1, 2]), rs.s(2)), (w([2, 1]), rs.s(1))}
    assert deg(two[(rs.identity, rs.w0)]) == -1
    assert deg(two[(w([1, 2]), rs.s(2))]) == 0
    assert all(p.cuts == (0, Fraction(1, 2), 1) for p in two.values())
    assert wt(two[(rs.identity, rs.w0)]) == Weight((0, 0))


def test_degree_with_respect_to_x():
    rs = A2
    eta = QLSPath(Weight((1, 0)), (rs.identity,), (Fraction(0), Fraction(1)))
    assert deg_wrt(eta, rs.identity) == 0
    assert deg_wrt(eta, rs.s(1)) == -1
    assert iota_wrt(eta, rs.s(1)) == rs.identity
    assert xi(eta, rs.s(1)) == (1, 0)
    assert kappa_wrt(eta, rs.s(1)) == rs.identity
    assert zeta(eta, rs.s(1)) == (0, 0)


def test_weight_guard():
    with pytest.raises(WeightTooLarge):
        enumerate_qls(A2, Weight((4, 3)))


@pytest.mark.parametrize("name,lam", [("A2", (1, 1)), ("A2", (2, 0)), ("C2", (1, 1)), ("G2", (0, 1))])
def test_lifts_are_semiinfinite_paths(name, lam):
    rs = root_system(name)
    lam = Weight(lam)
    for eta in enumerate_qls(rs, lam):
        p = lift_pi_eta(eta)
        assert validate(p)
        assert cl_project(p) == eta
        assert sls_wt(p).coeffs == wt(eta).coeffs
        assert sls_wt(p).dcoeff == deg(eta)
        for chi in partition_tuples(lam, 2):
            q = lift_pi_chi_eta(eta, chi)
            assert validate(q)
            assert cl_project(q) == eta
            assert component_of(q) == chi
