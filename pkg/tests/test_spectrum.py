from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qozeta.branch import derive_invariants, random_branch, validate
from qozeta.motivic import COMPAT_PRINTED, POINT, MotivicPoly, Mu, LaurentL
from qozeta.spectrum import (
    T_,
    FracPoly,
    exponents_in_range,
    p_nr,
    p_nre,
    p_r,
    q_nr,
    q_split,
    sp_of,
    spectrum_prime,
    spectrum_prime_via_milnor,
    spectrum_sp,
)

seeds = st.integers(min_value=0, max_value=10_000)


def test_fracpoly_arithmetic():
    a = FracPoly({F(1, 2): 1, F(1): 2})
    assert a + a == 2 * a
    assert a * FracPoly.const(1) == a
    assert (a - a) == FracPoly()
    assert a.substitute_root(2) == FracPoly({F(1, 4): 1, F(1, 2): 2})
    assert a.invert().invert() == a
    assert str(FracPoly({F(5, 6): 1, F(7, 6): 1})) == "t^(5/6) + t^(7/6)"


def test_split_at_one():
    low, high = q_split(2, 3)
    assert low == FracPoly({F(5, 6): 1}) and high == FracPoly({F(7, 6): 1})
    with pytest.raises(ArithmeticError):
        FracPoly({F(1): 1}).split_at_one()


def test_building_blocks():
    assert p_r(3) == FracPoly({0: 1, F(1, 3): 1, F(2, 3): 1})
    assert p_r(1) == 1
    with pytest.raises(ValueError):
        q_nr(2, 4)
    assert p_nr(2, 3) == p_nre(2, 3, 1)


@pytest.mark.parametrize("n,r", [(2, 5), (3, 4), (3, 5), (2, 3), (5, 7)])
def test_quasi_homogeneous(n, r):
    inv = derive_invariants(validate([[F(r, n)]], 1))
    brute = FracPoly({F(i, n) + F(j, r): 1 for i in range(1, n) for j in range(1, r)})
    assert spectrum_prime(inv) == brute


def test_cusp_and_smooth(cusp, smooth):
    assert spectrum_prime(cusp) == FracPoly({F(5, 6): 1, F(7, 6): 1})
    assert spectrum_prime(smooth) == FracPoly()


def test_example_spectrum(example):
    assert spectrum_prime(example) == FracPoly({F(k, 8): 1 for k in range(9, 16)})


def test_example_printed_orientation(example):
    printed = spectrum_prime(example, COMPAT_PRINTED)
    assert printed != spectrum_prime(example)
    assert printed == (2 * T_ - T_ * T_) * FracPoly({F(1, 4): 1, F(1, 2): 1, F(3, 4): 1})


def test_sp_of_rules():
    m = MotivicPoly.atom(POINT, LaurentL.monomial(2)) + MotivicPoly.atom(Mu(3))
    assert sp_of(m) == T_ * T_ + p_r(3)
    with pytest.raises(ValueError):
        sp_of(MotivicPoly.atom(POINT, LaurentL.monomial(-1)))


@settings(max_examples=20)
@given(seeds)
def test_closed_formula_matches_milnor_fiber(seed):
    inv = derive_invariants(random_branch(seed))
    sp = spectrum_prime(inv)
    assert sp == spectrum_prime_via_milnor(inv)
    assert exponents_in_range(sp, inv.d)
    assert spectrum_sp(inv) == FracPoly.monomial(inv.d + 1) * sp.invert()


@settings(max_examples=20)
@given(seeds)
def test_plane_branch_milnor_number(seed):
    """For curves Sp'(1) is the Milnor number and the spectrum is symmetric."""
    inv = derive_invariants(random_branch(seed, d_max=1))
    sp = spectrum_prime(inv)
    beta = [inv.e[0]] + [inv.e[0] * inv.gamma[j][0] for j in range(1, inv.g + 1)]
    mu = sum((inv.nj(j) - 1) * beta[j] for j in range(1, inv.g + 1)) - beta[0] + 1
    assert sum(c for _, c in sp.items()) == mu
    assert all(c > 0 for _, c in sp.items())
    assert spectrum_sp(inv) == sp
