"""Characteristic exponents of a quasi-ordinary branch and their invariants."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence

from .exact import (
    LatticeBasis,
    RatVector,
    group_index,
    integral_length,
    rat_vector,
    vadd,
    vscale,
    vsub,
)


class BranchValidationError(ValueError):
    """Invalid exponent data.  ``kind`` is a short machine-readable tag."""

    def __init__(self, kind: str, message: str, level: int | None = None, coordinate: int | None = None):
        super().__init__(message)
        self.kind = kind
        self.level = level
        self.coordinate = coordinate


@dataclass(frozen=True)
class QOBranchData:
    """Validated exponents ``lam[0] <= ... <= lam[g-1]``, each a vector in Q^d."""

    d: int
    lam: tuple

    @property
    def g(self) -> int:
        return len(self.lam)

    def permuted(self, perm: Sequence[int]) -> "QOBranchData":
        """Reorder base coordinates: new coordinate ``i`` is old ``perm[i]``."""
        return QOBranchData(self.d, tuple(tuple(v[p] for p in perm) for v in self.lam))


def _lattice_after(prev: LatticeBasis, v: RatVector) -> LatticeBasis:
    return LatticeBasis.from_generators(list(prev.rows) + [v])


def validate(raw: Iterable[Iterable], d: int) -> QOBranchData:
    """Check the exponent conditions and return the branch data.

    Raises :class:`BranchValidationError` describing the first violation.
    """
    if not isinstance(d, int) or d < 1:
        raise BranchValidationError("dimension", f"d must be a positive integer, got {d!r}")
    try:
        lam = [rat_vector(row) for row in raw]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise BranchValidationError("malformed", str(exc)) from exc
    if not lam:
        raise BranchValidationError("empty", "empty exponent list")
    for j, v in enumerate(lam, start=1):
        if len(v) != d:
            raise BranchValidationError("ragged", f"exponent {j} has length {len(v)}, expected {d}", level=j)
        for i, a in enumerate(v, start=1):
            if a < 0:
                raise BranchValidationError("negative", f"negative entry at ({j}, {i})", j, i)
    if all(a == 0 for a in lam[0]):
        raise BranchValidationError("zero", "the first exponent must be nonzero", level=1)
    for j in range(1, len(lam)):
        for i in range(d):
            if lam[j][i] < lam[j - 1][i]:
                raise BranchValidationError(
                    "ordering", f"ordering violated at ({j + 1}, {i + 1})", level=j + 1, coordinate=i + 1
                )
    lattice = LatticeBasis.standard(d)
    for j, v in enumerate(lam, start=1):
        if lattice.contains(v):
            raise BranchValidationError(
                "lattice", f"lambda_{j} lies in M_{j - 1}", level=j
            )
        lattice = _lattice_after(lattice, v)
    return QOBranchData(d, tuple(lam))


def order_in_quotient(v: Sequence, coarse: LatticeBasis, bound: int = 10**6) -> int:
    """Smallest ``k >= 1`` with ``k * v`` in ``coarse`` (by direct search)."""
    for k in range(1, bound + 1):
        if coarse.contains(vscale(k, v)):
            return k
    raise ArithmeticError("order search exceeded bound")


@dataclass(frozen=True)
class QOInvariants:
    """All numerical data derived from the exponents.

    Sequences follow the usual indexing with a leading sentinel where it is
    natural: ``e = (e_0, ..., e_g)``, ``gamma = (0, gamma_1, ..., gamma_g)``,
    ``ell = (0, l_1, ..., l_g)``, ``lattices = (M_0, ..., M_g)``.  The tuples
    ``n`` and ``r`` hold ``n_1..n_g`` and ``r_1..r_g``.
    """

    branch: QOBranchData
    lattices: tuple
    duals: tuple
    n: tuple
    e: tuple
    gamma: tuple
    r: tuple
    ell: tuple

    @property
    def d(self) -> int:
        return self.branch.d

    @property
    def g(self) -> int:
        return self.branch.g

    @property
    def m(self) -> int:
        """Ambient rank ``d + g + 1`` of the fan."""
        return self.d + self.g + 1

    def lam(self, j: int) -> RatVector:
        """lambda_j, with lambda_0 = 0."""
        return self.branch.lam[j - 1] if j >= 1 else tuple(Fraction(0) for _ in range(self.d))

    def nj(self, j: int) -> int:
        """n_j, with n_0 = 1."""
        return self.n[j - 1] if j >= 1 else 1

    def rj(self, j: int) -> int:
        return self.r[j - 1]

    def nprod(self, a: int, b: int) -> int:
        """n_a * ... * n_b (1 when the range is empty)."""
        return prod(self.nj(i) for i in range(a, b + 1))

    def in_dual(self, nu: Sequence[int], j: int) -> bool:
        """Membership of an integer vector in N_j."""
        return all(sum(Fraction(a) * b for a, b in zip(nu, self.lam(i))).denominator == 1 for i in range(1, j + 1))


def derive_invariants(b: QOBranchData) -> QOInvariants:
    d, g = b.d, b.g
    lattices = [LatticeBasis.standard(d)]
    for v in b.lam:
        lattices.append(_lattice_after(lattices[-1], v))
    n = tuple(group_index(lattices[j - 1], lattices[j]) for j in range(1, g + 1))
    e0 = prod(n)
    e = [e0]
    for nj in n:
        e.append(e[-1] // nj)
    zero = tuple(Fraction(0) for _ in range(d))
    gamma = [zero, b.lam[0]]
    for j in range(1, g):
        gamma.append(vadd(vscale(n[j - 1], gamma[j]), vsub(b.lam[j], b.lam[j - 1])))
    r = tuple(integral_length(vscale(n[j - 1], gamma[j]), lattices[j - 1]) for j in range(1, g + 1))
    ell = (0,) + tuple(sum(1 for a in v if a != 0) for v in b.lam)
    inv = QOInvariants(
        branch=b,
        lattices=tuple(lattices),
        duals=tuple(L.dual() for L in lattices),
        n=n,
        e=tuple(e),
        gamma=tuple(gamma),
        r=r,
        ell=ell,
    )
    check_invariants(inv)
    return inv


def check_invariants(inv: QOInvariants) -> None:
    """Assert the structural identities every derived branch must satisfy."""
    g = inv.g
    for j in range(1, g + 1):
        if gcd(inv.rj(j), inv.nj(j)) != 1:
            raise AssertionError(f"gcd(r_{j}, n_{j}) != 1")
        if inv.nj(j) < 2:
            raise AssertionError(f"n_{j} < 2")
    for j in range(1, g):
        lhs = vscale(inv.nj(j), inv.gamma[j])
        rhs = inv.gamma[j + 1]
        if not all(a <= b for a, b in zip(lhs, rhs)) or lhs == rhs:
            raise AssertionError(f"n_{j} gamma_{j} < gamma_{j + 1} fails")
    for j in range(0, g):
        total = tuple(Fraction(0) for _ in range(inv.d))
        for i in range(0, j + 1):
            total = vadd(total, vscale(inv.e[i], vsub(inv.lam(i + 1), inv.lam(i))))
        if total != vscale(inv.e[j], inv.gamma[j + 1]):
            raise AssertionError(f"weighted increment identity fails at j={j}")
    ell = inv.ell
    if ell[0] != 0 or ell[1] < 1 or any(ell[j] > ell[j + 1] for j in range(g)):
        raise AssertionError("ell sequence is not monotone")


def is_normalized(b: QOBranchData) -> tuple[bool, tuple | None]:
    """Return ``(flag, perm)``.

    ``perm`` (0-based, see :meth:`QOBranchData.permuted`) is given when the
    coordinate columns are out of lexicographic order; it sorts them.
    """
    columns = [tuple(v[i] for v in b.lam) for i in range(b.d)]
    lex_ok = all(columns[i] >= columns[i + 1] for i in range(b.d - 1))
    first = b.lam[0]
    excluded = first[0] < 1 and all(a == 0 for a in first[1:])
    if lex_ok:
        return (not excluded, None)
    perm = tuple(sorted(range(b.d), key=lambda i: columns[i], reverse=True))
    return (False, perm)


def random_branch(seed: int, d_max: int = 3, g_max: int = 3, denominator_bound: int = 6, retries: int = 500) -> QOBranchData:
    """Deterministic pseudo-random valid branch.

    Every coordinate of every exponent is a rational with denominator at most
    ``denominator_bound``.  Each new exponent raises some coordinates of the
    previous one; candidates lying in the current lattice are rejected.
    """
    if min(d_max, g_max, denominator_bound) < 1:
        raise ValueError("bounds must be positive")
    rng = random.Random(seed)

    def bump(a: Fraction) -> Fraction:
        q = rng.randint(1, denominator_bound)
        start = -((-a.numerator * q) // a.denominator)  # ceil(a * q)
        return Fraction(start + rng.randint(0, 2 * q), q)

    for _ in range(retries):
        d = rng.randint(1, d_max)
        g = rng.randint(1, g_max)
        lam = []
        lattice = LatticeBasis.standard(d)
        while len(lam) < g:
            prev = lam[-1] if lam else tuple(Fraction(0) for _ in range(d))
            cand = None
            for _ in range(50):
                v = tuple(a if lam and rng.random() < 0.4 else bump(a) for a in prev)
                if v != prev and not lattice.contains(v):
                    cand = v
                    break
            if cand is None:
                break
            lam.append(cand)
            lattice = _lattice_after(lattice, cand)
        if len(lam) == g:
            return validate(lam, d)
    raise RuntimeError(f"random_branch failed to produce a branch for seed {seed}")
