from fractions import Fraction as F
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qozeta.branch import (
    BranchValidationError,
    derive_invariants,
    is_normalized,
    order_in_quotient,
    random_branch,
    validate,
)
from qozeta.exact import group_index
from qozeta.ztop import z_top

seeds = st.integers(min_value=0, max_value=10_000)


def test_example_invariants(example):
    assert example.n == (2, 4)
    assert example.e == (8, 4, 1)
    assert example.gamma[1] == (F(1, 2), F(3, 2))
    assert example.gamma[2] == (F(1), F(13, 4))
    assert example.r == (1, 1)
    assert example.ell == (0, 2, 2)


@pytest.mark.parametrize(
    "lam,n,e,r",
    [
        ([["3/2"]], (2,), (2, 1), (3,)),
        ([["1/2"]], (2,), (2, 1), (1,)),
        ([["5/3"]], (3,), (3, 1), (5,)),
    ],
)
def test_plane_curve_invariants(lam, n, e, r):
    inv = derive_invariants(validate(lam, 1))
    assert (inv.n, inv.e, inv.r, inv.ell) == (n, e, r, (0, 1))


@pytest.mark.parametrize(
    "lam,d,kind",
    [
        ([["1/2", "3/2"], ["1/2", "3/2"]], 2, "lattice"),
        ([["1", "1"], ["1/2", "2"]], 2, "ordering"),
        ([], 1, "empty"),
        ([["0", "0"]], 2, "zero"),
        ([["-1/2"]], 1, "negative"),
        ([["1/2", "1/3"], ["1/2"]], 2, "ragged"),
        ([["2"]], 1, "lattice"),
        ([["a"]], 1, "malformed"),
    ],
)
def test_validation_errors(lam, d, kind):
    with pytest.raises(BranchValidationError) as info:
        validate(lam, d)
    assert info.value.kind == kind


def test_ordering_error_position():
    with pytest.raises(BranchValidationError, match=r"ordering violated at \(2, 1\)") as info:
        validate([["1", "1/2"], ["1/2", "2"]], 2)
    assert (info.value.level, info.value.coordinate) == (2, 1)


def test_lattice_error_message():
    with pytest.raises(BranchValidationError, match="lambda_2 lies in M_1"):
        validate([["1/2", "3/2"], ["1/2", "3/2"]], 2)


@pytest.mark.parametrize(
    "lam,d,expected",
    [
        ([["1/2", "3/2"], ["1/2", "7/4"]], 2, (False, (1, 0))),
        ([["3/2"]], 1, (True, None)),
        ([["1/2"]], 1, (False, None)),
        ([["3/2", "1/2"]], 2, (True, None)),
    ],
)
def test_is_normalized(lam, d, expected):
    assert is_normalized(validate(lam, d)) == expected


def test_normalizing_permutation_normalizes(example):
    flag, perm = is_normalized(example.branch)
    assert not flag
    assert is_normalized(example.branch.permuted(perm))[0]


def test_random_branch_deterministic():
    assert random_branch(7) == random_branch(7)
    assert random_branch(7) != random_branch(8)


def test_random_branch_bad_bounds():
    with pytest.raises(ValueError):
        random_branch(0, d_max=0)


@given(seeds)
def test_random_branch_contract(seed):
    b = random_branch(seed)
    assert 1 <= b.d <= 3 and 1 <= b.g <= 3
    assert all(a.denominator <= 6 for v in b.lam for a in v)
    assert validate(b.lam, b.d) == b


@given(seeds)
def test_structural_invariants(seed):
    inv = derive_invariants(random_branch(seed))
    for j in range(1, inv.g + 1):
        assert gcd(inv.rj(j), inv.nj(j)) == 1
        assert inv.nj(j) >= 2
    for j in range(1, inv.g):
        lhs = tuple(inv.nj(j) * a for a in inv.gamma[j])
        assert all(x <= y for x, y in zip(lhs, inv.gamma[j + 1])) and lhs != inv.gamma[j + 1]
    for j in range(inv.g):
        total = [F(0)] * inv.d
        for i in range(j + 1):
            total = [t + inv.e[i] * (a - b) for t, a, b in zip(total, inv.lam(i + 1), inv.lam(i))]
        assert tuple(total) == tuple(inv.e[j] * a for a in inv.gamma[j + 1])
    assert inv.ell[0] == 0 < inv.ell[1]
    assert all(a <= b for a, b in zip(inv.ell[1:], inv.ell[2:]))


@given(seeds)
def test_order_of_gamma_is_n(seed):
    inv = derive_invariants(random_branch(seed))
    for j in range(1, inv.g + 1):
        assert order_in_quotient(inv.gamma[j], inv.lattices[j - 1]) == inv.nj(j)


@given(seeds)
def test_indices_multiply(seed):
    inv = derive_invariants(random_branch(seed))
    assert group_index(inv.lattices[0], inv.lattices[-1]) == inv.e[0]
    assert all(inv.e[j - 1] == inv.nj(j) * inv.e[j] for j in range(1, inv.g + 1))


@given(seeds, st.randoms(use_true_random=False))
def test_permutation_commutes(seed, rnd):
    b = random_branch(seed)
    perm = list(range(b.d))
    rnd.shuffle(perm)
    a, c = derive_invariants(b), derive_invariants(b.permuted(perm))
    assert (a.n, a.e, a.r, a.ell) == (c.n, c.e, c.r, c.ell)
    for ga, gc in zip(a.gamma, c.gamma):
        assert tuple(ga[p] for p in perm) == gc
    assert z_top(a) == z_top(c)
