"""Exact rational linear algebra over lattices.

Everything here works with :class:`fractions.Fraction` and Python integers.
Vectors are plain tuples; matrices are tuples of row tuples.  No floating
point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

RatVector = tuple  # tuple[Fraction, ...]
IntVector = tuple  # tuple[int, ...]


class LatticeError(ValueError):
    """Raised when a lattice-theoretic precondition fails."""


def as_fraction(x) -> Fraction:
    """Parse ``x`` (int, Fraction or a string such as ``"7/4"``) exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"malformed rational {x!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_vector(values: Iterable) -> RatVector:
    return tuple(as_fraction(v) for v in values)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("length mismatch")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def is_integral(v: Iterable) -> bool:
    return all(Fraction(a).denominator == 1 for a in v)


def to_int_vector(v: Iterable) -> IntVector:
    out = []
    for a in v:
        a = Fraction(a)
        if a.denominator != 1:
            raise LatticeError(f"{a} is not an integer")
        out.append(a.numerator)
    return tuple(out)


def primitive_integer_multiple(v: Sequence) -> IntVector:
    """Shortest positive multiple of a nonzero rational vector lying in Z^n."""
    fr = [Fraction(a) for a in v]
    if all(a == 0 for a in fr):
        raise LatticeError("zero vector has no primitive multiple")
    den = reduce(lcm, (a.denominator for a in fr), 1)
    ints = [int(a * den) for a in fr]
    g = reduce(gcd, (abs(a) for a in ints), 0)
    return tuple(a // g for a in ints)


# -- dense exact solving -----------------------------------------------------


def solve_in_span(rows: Sequence[Sequence], v: Sequence) -> tuple | None:
    """Return ``x`` with ``x · rows = v``, or ``None`` if ``v`` is outside the span.

    The rows must be linearly independent; otherwise :class:`LatticeError`.
    """
    k = len(rows)
    n = len(v)
    # Columns of the system are the given rows; augmented with v.
    aug = [[Fraction(rows[i][c]) for i in range(k)] + [Fraction(v[c])] for c in range(n)]
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, n) if aug[i][col] != 0), None)
        if piv is None:
            raise LatticeError("rows are linearly dependent")
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [a * inv for a in aug[r]]
        for i in range(n):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if any(aug[i][k] != 0 for i in range(r, n)):
        return None
    return tuple(aug[i][k] for i in range(k))


def rank(rows: Sequence[Sequence]) -> int:
    mat = [[Fraction(a) for a in row] for row in rows]
    if not mat:
        return 0
    n = len(mat[0])
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(r + 1, len(mat)):
            if mat[i][col] != 0:
                f = mat[i][col] / mat[r][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def determinant(rows: Sequence[Sequence]) -> Fraction:
    mat = [[Fraction(a) for a in row] for row in rows]
    n = len(mat)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        for i in range(col + 1, n):
            if mat[i][col] != 0:
                f = mat[i][col] / mat[col][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[col])]
    return det


def inverse(rows: Sequence[Sequence]) -> tuple:
    n = len(rows)
    aug = [[Fraction(a) for a in rows[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise LatticeError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def transpose(rows: Sequence[Sequence]) -> tuple:
    return tuple(zip(*rows))


# -- integer normal forms ----------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_decomposition(matrix: Sequence[Sequence[int]]):
    """Return ``(D, P, Q)`` with ``P · A · Q = D`` in Smith normal form.

    ``P`` and ``Q`` are unimodular; the diagonal of ``D`` is nonnegative and
    each entry divides the next.
    """
    d = [[int(a) for a in row] for row in matrix]
    m = len(d)
    n = len(d[0]) if m else 0
    p = _identity(m)
    q = _identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        d[dst] = [a + f * b for a, b in zip(d[dst], d[src])]
        p[dst] = [a + f * b for a, b in zip(p[dst], p[src])]

    def add_col(dst, src, f):
        for row in d:
            row[dst] += f * row[src]
        for row in q:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return d, p, q
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = d[t][t]
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // piv))
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // piv))
                    clean = clean and d[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % piv),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if d[t][t] < 0:
            d[t] = [-a for a in d[t]]
            p[t] = [-a for a in p[t]]
    return d, p, q


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors ``d_1 | d_2 | ...`` (zeros included, at the end).

    >>> smith_normal_form([[2, 4], [6, 8]])
    [2, 4]
    """
    d, _, _ = smith_decomposition(matrix)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def hermite_rows(generators: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows are dropped."""
    a = [[int(x) for x in row] for row in generators]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        while True:
            live = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            leftover = False
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    f = a[i][c] // a[r][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                    leftover = leftover or a[i][c] != 0
            if not leftover:
                break
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                f = a[i][c] // a[r][c]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            r += 1
    return a[:r]


# -- lattices ----------------------------------------------------------------


@dataclass(frozen=True)
class LatticeBasis:
    """A full-rank lattice in Q^d given by rational basis rows."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(rat_vector(r) for r in self.rows)
        if not rows:
            raise LatticeError("empty basis")
        if any(len(r) != len(rows[0]) for r in rows):
            raise LatticeError("ragged basis")
        if len(rows) != len(rows[0]) or determinant(rows) == 0:
            raise LatticeError("basis rows must be a basis of the ambient space")
        object.__setattr__(self, "rows", rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def standard(cls, d: int) -> "LatticeBasis":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)))

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence]) -> "LatticeBasis":
        """Lattice spanned by rational generators, returned in Hermite form."""
        gens = [rat_vector(g) for g in generators]
        den = reduce(lcm, (a.denominator for g in gens for a in g), 1)
        ints = [[int(a * den) for a in g] for g in gens]
        hnf = hermite_rows(ints)
        return cls(tuple(tuple(Fraction(x, den) for x in row) for row in hnf))

    def coordinates(self, v: Sequence) -> RatVector:
        x = solve_in_span(self.rows, rat_vector(v))
        assert x is not None  # full rank
        return x

    def contains(self, v: Sequence) -> bool:
        return is_integral(self.coordinates(v))

    def point(self, coords: Sequence) -> RatVector:
        out = [Fraction(0)] * self.dim
        for c, row in zip(coords, self.rows, strict=True):
            if c:
                out = [a + c * b for a, b in zip(out, row)]
        return tuple(out)

    def dual(self) -> "LatticeBasis":
        """The lattice {n : <n, m> in Z for all m} (basis: inverse transpose)."""
        return LatticeBasis(transpose(inverse(self.rows)))

    def product_with_z(self) -> "LatticeBasis":
        """This lattice times Z, as a lattice in one more dimension."""
        rows = [tuple(r) + (Fraction(0),) for r in self.rows]
        rows.append(tuple([Fraction(0)] * self.dim) + (Fraction(1),))
        return LatticeBasis(tuple(rows))


def coordinates_in_basis(v: Sequence, basis: LatticeBasis) -> RatVector:
    """Unique ``x`` with ``x · B = v``.

    >>> coordinates_in_basis((4, 13), LatticeBasis(((Fraction(1, 2), Fraction(3, 2)), (0, 1))))
    (Fraction(8, 1), Fraction(1, 1))
    """
    return basis.coordinates(v)


def group_index(coarse: LatticeBasis, fine: LatticeBasis) -> int:
    """Index ``[fine : coarse]`` of a full-rank sublattice."""
    coords = [fine.coordinates(r) for r in coarse.rows]
    if not all(is_integral(c) for c in coords):
        raise LatticeError("not a sublattice")
    det = determinant(coords)
    if det == 0:
        raise LatticeError("not a full-rank sublattice")
    return abs(int(det))


def primitive_on_ray(direction: Sequence, lattice: LatticeBasis) -> RatVector:
    """Smallest positive multiple of ``direction`` that lies in ``lattice``."""
    coords = lattice.coordinates(direction)
    return lattice.point(primitive_integer_multiple(coords))


def integral_length(v: Sequence, lattice: LatticeBasis) -> int:
    """gcd of the coordinates of a lattice vector ``v``."""
    coords = lattice.coordinates(v)
    if not is_integral(coords):
        raise LatticeError(f"{tuple(map(str, v))} is not in the lattice")
    g = reduce(gcd, (abs(int(c)) for c in coords), 0)
    if g == 0:
        raise LatticeError("zero vector has no integral length")
    return g
