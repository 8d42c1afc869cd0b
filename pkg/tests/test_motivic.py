from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qozeta.branch import derive_invariants, random_branch
from qozeta.fan import Rho, SigmaMinus, SigmaPlus, SigmaTop, build_fan
from qozeta.motivic import (
    COMPAT_PRINTED,
    L,
    ONE_MINUS_L,
    POINT,
    Atom,
    Curve,
    LaurentL,
    LTPoly,
    MotivicPoly,
    Mu,
    RatLT,
    c_mono,
    coefficient_of_T,
    cone_limit,
    cone_limit_closed,
    laurent_divexact,
    milnor_fiber_closed,
    milnor_fiber_via_limit,
    minus_identity_holds,
    mu_Hk,
    oracle_coefficient,
    oracle_series,
    rat_equal,
    s_theta,
    series_of_T,
    z_mono,
    z_naive,
    zeta,
)

seeds = st.integers(min_value=0, max_value=10_000)
laurent = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4).map(LaurentL)


def test_atoms():
    assert Mu(1) == POINT
    assert str(Curve(2, 3, 1)) == "Curve(2,3,1)"
    for a in (POINT, Mu(4), Curve(4, 1, 1)):
        assert Atom.parse(str(a)) == a
    with pytest.raises(ValueError):
        Curve(2, 4, 1)


@given(laurent, laurent, laurent)
def test_laurent_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == LaurentL()


@given(laurent, laurent)
def test_laurent_exact_division(a, b):
    if not b:
        return
    assert laurent_divexact(a * b, b) == a


def test_motivic_products():
    assert MotivicPoly.atom(Mu(2), L) * MotivicPoly.atom(POINT, L - 1) == MotivicPoly.atom(Mu(2), L * L - L)
    with pytest.raises(ArithmeticError):
        MotivicPoly.atom(Mu(2)) * MotivicPoly.atom(Mu(3))


def test_geometric_series():
    # 1 / (1 - L^{-1} T) = sum L^{-n} T^n
    r = RatLT.from_poly(LTPoly({(0, 0): 1}), [(1, 1)])
    assert r.series(5, 10) == [LaurentL.monomial(-n) for n in range(6)]
    assert r.limit() == LaurentL()


def test_limit_rule():
    # L^{-a} T^b / (1 - L^{-a} T^b) -> -1
    r = RatLT.from_poly(LTPoly({(-2, 3): 1}), [(2, 3)])
    assert r.limit() == LaurentL.const(-1)
    # a T-free factor stays in the denominator and must divide out exactly
    q = RatLT.from_poly(LTPoly({(0, 0): 1, (-1, 0): -1, (0, 1): 1, (-1, 1): -1}), [(1, 0), (0, 1)])
    assert q.limit() == LaurentL.const(-1)


def test_rat_equal_cross_multiplication():
    a = RatLT.from_poly(LTPoly({(0, 0): 1, (-1, 1): 1}), [(2, 2)])
    b = RatLT.from_poly(LTPoly({(0, 0): 1}), [(1, 1)])
    assert rat_equal(a, b)
    assert not rat_equal(a, a + a)


def test_cusp_series(cusp):
    zm = z_mono(cusp)
    assert coefficient_of_T(zm, 1, 20) == MotivicPoly()
    assert coefficient_of_T(zm, 2, 20) == MotivicPoly.atom(Mu(2), LaurentL.monomial(-1))
    assert mu_Hk(cusp, (1, 1, 2)) == MotivicPoly.atom(Mu(2), LaurentL.monomial(-1) - LaurentL.monomial(-2))


def test_unrealizable_vector(cusp):
    with pytest.raises(ValueError, match="not realizable"):
        mu_Hk(cusp, (1, 1, 3))


@pytest.mark.parametrize("which", ["cusp", "example", "smooth"])
@pytest.mark.parametrize("variant", ["naive", "mono"])
def test_series_oracle_fixtures(request, which, variant):
    inv = request.getfixturevalue(which)
    closed = series_of_T(zeta(inv, variant), 20, 20)
    assert closed[1:] == oracle_series(inv, 20, 20, variant)[1:]


def test_single_coefficient_route(cusp):
    assert coefficient_of_T(z_naive(cusp), 7, 12) == oracle_coefficient(cusp, 7, 12, "naive")


@settings(max_examples=15)
@given(seeds, st.sampled_from(["naive", "mono"]))
def test_series_oracle_random(seed, variant):
    inv = derive_invariants(random_branch(seed))
    assert series_of_T(zeta(inv, variant), 10, 10)[1:] == oracle_series(inv, 10, 10, variant)[1:]


def test_cusp_milnor_fiber(cusp):
    want = MotivicPoly.atom(POINT, ONE_MINUS_L) + MotivicPoly.atom(Mu(2)) + MotivicPoly.atom(Mu(3)) + MotivicPoly.atom(Curve(2, 3, 1))
    assert milnor_fiber_closed(cusp) == want == milnor_fiber_via_limit(cusp)


def test_example_milnor_fiber(example):
    quad = L * L - 3 * L + 2
    want = (
        MotivicPoly.atom(POINT, quad)
        + MotivicPoly.atom(Mu(4), quad)
        + MotivicPoly.atom(Mu(8))
        + MotivicPoly.atom(Curve(2, 1, 4), ONE_MINUS_L)
        + MotivicPoly.atom(Curve(4, 1, 1), ONE_MINUS_L)
    )
    assert milnor_fiber_closed(example) == want == milnor_fiber_via_limit(example)


@given(seeds)
def test_milnor_routes_agree(seed):
    inv = derive_invariants(random_branch(seed))
    assert milnor_fiber_closed(inv) == milnor_fiber_via_limit(inv)
    assert milnor_fiber_closed(inv, COMPAT_PRINTED) == milnor_fiber_via_limit(inv, COMPAT_PRINTED)


@given(seeds)
def test_cone_limits(seed):
    inv = derive_invariants(random_branch(seed))
    fan = build_fan(inv)
    for c in fan.cones:
        assert cone_limit(fan, c) == cone_limit_closed(inv, c)


def test_compat_swaps_classes(example):
    fan = build_fan(example)
    plus, minus = fan.cone(SigmaPlus(1)), fan.cone(SigmaMinus(1))
    assert c_mono(example, plus) == MotivicPoly.atom(Mu(example.rj(1) * example.e[1]))
    assert c_mono(example, minus) == MotivicPoly.atom(Mu(example.nj(1) * example.e[1]))
    assert c_mono(example, plus, COMPAT_PRINTED) == c_mono(example, minus)
    assert c_mono(example, fan.cone(Rho(2))) == MotivicPoly.atom(Curve(4, 1, 1))
    assert c_mono(example, fan.cone(SigmaTop(2))) == MotivicPoly.atom(POINT)


@pytest.mark.parametrize("j", [1, 2])
def test_example_minus_identity(example, j):
    assert minus_identity_holds(build_fan(example), j, 20, 20)


@given(seeds)
def test_minus_identity_random(seed):
    fan = build_fan(derive_invariants(random_branch(seed)))
    assert all(minus_identity_holds(fan, j, 12, 15) for j in range(1, fan.inv.g + 1))


def test_simplicial_minus_agrees_with_direct(example):
    from qozeta.motivic import s_theta_simplicial

    fan = build_fan(example)
    cone = fan.cone(SigmaMinus(2))
    assert rat_equal(s_theta(fan, cone), s_theta_simplicial(example, cone))


@pytest.mark.parametrize("p", [2, 3])
def test_naive_coefficients_count_jets(cusp, p):
    """Point counts of jets over F_p give the naive coefficients at L = p.

    The T^n coefficient is L^{d+1} times the measure of arcs through the origin
    with ord(y^2 - x^3) = n, which only depends on their n-jets.
    """
    from itertools import product

    series = series_of_T(z_naive(cusp), 4, 40)
    for n in range(1, 5):
        count = 0
        for xs in product(range(p), repeat=n):
            for ys in product(range(p), repeat=n):
                x, y = (0,) + xs, (0,) + ys
                f = _poly_sub(_poly_pow(y, 2, n + 1, p), _poly_pow(x, 3, n + 1, p), p)
                if next((i for i, c in enumerate(f) if c), None) == n:
                    count += 1
        measure = F(count, p ** (2 * (n + 1)))
        value = sum((F(c) * F(p) ** e for e, c in series[n].coeffs.get(POINT, LaurentL()).items()), F(0))
        assert measure * p ** 2 == value


def _poly_pow(a, k, n, p):
    out = [1] + [0] * (n - 1)
    for _ in range(k):
        new = [0] * n
        for i, x in enumerate(out):
            for j, y in enumerate(a):
                if i + j < n:
                    new[i + j] = (new[i + j] + x * y) % p
        out = new
    return out


def _poly_sub(a, b, p):
    return [(x - y) % p for x, y in zip(a, b)]
