from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qozeta.branch import derive_invariants, random_branch, validate
from qozeta.fan import Rho, SigmaMinus, SigmaPlus, SigmaTop, build_fan
from qozeta.motivic import LTPoly, factor_poly
from qozeta.ztop import (
    RatS,
    candidate_pole_multiset,
    candidate_poles,
    check_cp_equals_fan,
    chi_top_oracle,
    cp_list,
    divide_by_factor,
    j_theta,
    j_theta_simplicial,
    lc_identity_check,
    newton_data,
    scp_list,
    special_vectors,
    z_top,
)

seeds = st.integers(min_value=0, max_value=10_000)
coeffs = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=5), min_size=1, max_size=3)
factors = st.lists(st.tuples(st.integers(1, 6), st.integers(1, 6)), max_size=3)
rats = st.builds(RatS, coeffs, factors)


def example_sum():
    return (
        RatS((13, 24), [(3, 8), (5, 24)])
        + RatS((22, 96), [(5, 24), (3, 8), (11, 52)])
        - RatS((0, 1), [(1, 1), (3, 8), (11, 52)])
    )


@given(rats, rats)
def test_rats_field_laws(a, b):
    assert a + b == b + a
    assert (a + b) - b == a
    assert a * b == b * a
    for s0 in (1, 2, 5):
        assert (a + b)(s0) == a(s0) + b(s0)
        assert (a * b)(s0) == a(s0) * b(s0)


def test_rats_normalization():
    r = RatS((2, 4), [(2, 4)])
    assert r == RatS.const(1) and not r.den
    assert RatS((1,), [(2, 4)]).den == {(1, 2): 1}
    assert str(RatS((1,), [(1, 1)])) == "1/(1+s)"
    with pytest.raises(ValueError):
        RatS((1,), [(0, 1)])


def test_example_ztop(example):
    zt = z_top(example)
    assert zt == example_sum()
    assert zt.num == (165, 1196, 2260, 1248)
    assert sorted(zt.den) == [(1, 1), (3, 8), (5, 24), (11, 52)]


def test_example_j_minus(example):
    fan = build_fan(example)
    cone = fan.cone(SigmaMinus(2))
    assert j_theta(fan, cone) == j_theta_simplicial(example, cone) == RatS((2,), [(3, 8), (5, 24), (11, 52)])


def test_cusp_ztop(cusp):
    fan = build_fan(cusp)
    assert z_top(cusp) == RatS((5, 4), [(6 - 1, 6), (1, 1)])
    want = {Rho(1): RatS((1,), [(5, 6)]), SigmaPlus(1): RatS((2,), [(5, 6)]), SigmaMinus(1): RatS((3,), [(5, 6)]), SigmaTop(1): RatS((1,), [(1, 1), (5, 6)])}
    for cid, value in want.items():
        assert j_theta(fan, fan.cone(cid)) == value


def test_smooth_cancellation(smooth):
    assert z_top(smooth) == RatS((1,), [(1, 1)])
    assert special_vectors(smooth) == [(1, 1)]
    assert (3, 2) not in candidate_pole_multiset(smooth)
    assert lc_identity_check(smooth, 1)
    assert chi_top_oracle(smooth, 3) == F(1, 4)


@pytest.mark.parametrize("which", ["example", "cusp", "smooth"])
@pytest.mark.parametrize("s0", [1, 2, 3, 7])
def test_chi_top_fixtures(request, which, s0):
    inv = request.getfixturevalue(which)
    assert chi_top_oracle(inv, s0) == z_top(inv)(s0)


@settings(max_examples=25)
@given(seeds)
def test_chi_top_random(seed):
    inv = derive_invariants(random_branch(seed))
    zt = z_top(inv)
    assert all(chi_top_oracle(inv, s0) == zt(s0) for s0 in (1, 2, 3))


def test_example_poles(example):
    assert candidate_poles(example) == [(1, 1), (3, 8), (5, 24), (11, 52)]
    assert special_vectors(example) == []
    with pytest.raises(ValueError, match="not applicable"):
        lc_identity_check(example, 1)


def test_example_newton(example):
    nd = newton_data(example)
    assert nd.p == ((2, 2), (1, 2)) and nd.q == ((1, 3), (0, 1))
    assert nd.B == ((8, 24), (8, 52)) and nd.b == ((3, 5), (3, 11))
    assert cp_list(example) == [(8, 3), (24, 5), (8, 3), (52, 11), (1, 1)]
    assert scp_list(example) == cp_list(example)
    assert check_cp_equals_fan(example)


def test_cusp_cp(cusp):
    assert cp_list(cusp) == [(6, 5), (1, 1)]


def test_special_level_two():
    inv = derive_invariants(validate([["1/2", "5/2"]], 2))
    assert special_vectors(inv) == [(1, 1)]
    assert lc_identity_check(inv, 1)
    assert z_top(inv) == RatS((7, 5), [(1, 1), (7, 10)])
    assert scp_list(inv) == [cp_list(inv)[1], (1, 1)]


@given(seeds)
def test_poles_and_newton_random(seed):
    inv = derive_invariants(random_branch(seed))
    zt = z_top(inv)
    allowed = candidate_pole_multiset(inv)
    assert not (zt.den - allowed)
    assert check_cp_equals_fan(inv)
    for _, j in special_vectors(inv):
        assert lc_identity_check(inv, j)


@given(st.dictionaries(st.tuples(st.integers(-5, 5), st.integers(0, 4)), st.integers(-3, 3), max_size=5), st.integers(1, 5), st.integers(1, 4))
def test_divide_by_factor(poly, a, b):
    p = LTPoly(poly)
    product = p * factor_poly((a, b))
    assert divide_by_factor(product, a, b) == p
    if p:
        assert divide_by_factor(product + LTPoly({(0, 0): 1}), a, b) is None
