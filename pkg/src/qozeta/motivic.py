"""Formal arithmetic with classes of the atoms Point, Mu(n) and Curve(n, r, e).

Scalars are Laurent polynomials in L (:class:`LaurentL`).  Rational functions
in (L, T) are kept as unreduced sums of fractions whose denominators are
products of factors ``1 - L^{-a} T^b``; every linear operation (series
coefficients, the limit T -> infinity, the L -> 1 specialization) is applied
summand by summand, and a common denominator is formed only for equality
tests and divisibility checks.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .branch import QOInvariants
from .fan import (
    RHO,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_TOP,
    SigmaMinus,
    Cone,
    Fan,
    build_fan,
    classify_vector,
    d_theta,
    enumerate_orders_upto,
    eta,
    hat_decomposition,
    xi,
)

COMPAT_PRINTED = "printed"


# -- atoms -------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Atom:
    kind: int  # 0 point, 1 mu, 2 curve (also the sort order)
    args: tuple = ()

    def __str__(self) -> str:
        if self.kind == 0:
            return "Point"
        if self.kind == 1:
            return f"Mu({self.args[0]})"
        return "Curve({},{},{})".format(*self.args)

    @classmethod
    def parse(cls, text: str) -> "Atom":
        text = text.strip()
        if text == "Point":
            return POINT
        name, _, rest = text.partition("(")
        args = tuple(int(a) for a in rest.rstrip(")").split(","))
        if name == "Mu" and len(args) == 1:
            return Mu(*args)
        if name == "Curve" and len(args) == 3:
            return Curve(*args)
        raise ValueError(f"unknown atom {text!r}")


POINT = Atom(0)


def Point() -> Atom:
    return POINT


def Mu(n: int) -> Atom:
    if n < 1:
        raise ValueError("Mu(n) needs n >= 1")
    return POINT if n == 1 else Atom(1, (n,))


def Curve(n: int, r: int, e: int) -> Atom:
    if n < 2 or r < 1 or e < 1 or gcd(n, r) != 1:
        raise ValueError(f"invalid curve atom Curve({n},{r},{e})")
    return Atom(2, (n, r, e))


# -- Laurent polynomials in L ----------------------------------------------------


class LaurentL:
    """Immutable Laurent polynomial in L with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> "LaurentL":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentL":
        return cls({e: c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentL.const(other)
        return isinstance(other, LaurentL) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LaurentL") -> "LaurentL":
        out = dict(self.terms)
        for e, c in _as_laurent(other).terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentL(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentL":
        return LaurentL({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentL":
        return self + (-_as_laurent(other))

    def __rsub__(self, other) -> "LaurentL":
        return _as_laurent(other) - self

    def __mul__(self, other) -> "LaurentL":
        other = _as_laurent(other)
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentL(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentL":
        out = LaurentL.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentL":
        return LaurentL({e + k: c for e, c in self.terms.items()})

    def truncate(self, precision: int) -> "LaurentL":
        """Keep exponents >= -precision."""
        return LaurentL({e: c for e, c in self.terms.items() if e >= -precision})

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def __call__(self, x):
        return sum((c * Fraction(x) ** e for e, c in self.terms.items()), Fraction(0))

    def __repr__(self) -> str:
        return f"LaurentL({self.items()})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "" if e == 0 else ("L" if e == 1 else f"L^{e}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _as_laurent(x) -> LaurentL:
    if isinstance(x, LaurentL):
        return x
    if isinstance(x, int):
        return LaurentL.const(x)
    raise TypeError(f"cannot use {x!r} as a Laurent polynomial")


L = LaurentL.monomial(1)
L_MINUS_1 = L - 1
ONE_MINUS_L = 1 - L


def laurent_divexact(num: LaurentL, den: LaurentL) -> LaurentL:
    """Exact quotient in Z[L, 1/L]; raises ArithmeticError if it does not exist."""
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    if not num:
        return LaurentL()
    rem = dict(num.terms)
    top_d, lead = den.max_exp(), den.terms[den.max_exp()]
    low_d = den.min_exp()
    quotient: dict[int, int] = {}
    floor_exp = num.min_exp() - low_d
    while rem:
        top = max(rem)
        qe = top - top_d
        if qe < floor_exp:
            raise ArithmeticError("inexact Laurent division")
        c, r = divmod(rem[top], lead)
        if r:
            raise ArithmeticError("inexact Laurent division")
        quotient[qe] = c
        for e, dc in den.terms.items():
            key = e + qe
            rem[key] = rem.get(key, 0) - c * dc
            if rem[key] == 0:
                del rem[key]
    return LaurentL(quotient)


# -- bivariate polynomials in (L, T) ------------------------------------------------


class LTPoly:
    """Polynomial in T with Laurent coefficients in L, keyed by (L-exp, T-exp)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, int] | None = None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def from_laurent(cls, p: LaurentL, t_exp: int = 0) -> "LTPoly":
        return cls({(e, t_exp): c for e, c in p.terms.items()})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LTPoly) and self.terms == other.terms

    def __add__(self, other: "LTPoly") -> "LTPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LTPoly(out)

    def __neg__(self) -> "LTPoly":
        return LTPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "LTPoly") -> "LTPoly":
        return self + (-other)

    def __mul__(self, other) -> "LTPoly":
        if isinstance(other, LaurentL):
            other = LTPoly.from_laurent(other)
        elif isinstance(other, int):
            return LTPoly({k: c * other for k, c in self.terms.items()})
        out: dict[tuple, int] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return LTPoly(out)

    __rmul__ = __mul__

    def t_degree(self) -> int:
        return max((b for _, b in self.terms), default=-1)

    def t_coefficient(self, b: int) -> LaurentL:
        return LaurentL({a: c for (a, bb), c in self.terms.items() if bb == b})

    def __repr__(self) -> str:
        return f"LTPoly({sorted(self.terms.items())})"


def factor_poly(f: tuple) -> LTPoly:
    """The polynomial 1 - L^{-a} T^b for a descriptor (a, b)."""
    a, b = f
    return LTPoly({(0, 0): 1, (-a, b): -1})


def _binom(e: int, k: int) -> Fraction:
    """Generalized binomial coefficient for integer (possibly negative) e."""
    out = Fraction(1)
    for i in range(k):
        out = out * (e - i) / (i + 1)
    return out


def _series_inverse(u: list, order: int) -> list:
    inv = [Fraction(1) / u[0]]
    for k in range(1, order + 1):
        s = sum((u[i] * inv[k - i] for i in range(1, min(k, len(u) - 1) + 1)), Fraction(0))
        inv.append(-s / u[0])
    return inv


def _series_mul(x: list, y: list, order: int) -> list:
    out = [Fraction(0)] * (order + 1)
    for i, a in enumerate(x[: order + 1]):
        if a:
            for j, b in enumerate(y[: order + 1 - i]):
                out[i + j] += a * b
    return out


# -- rational functions in (L, T) ------------------------------------------------


def _fkey(factors: Iterable[tuple]) -> tuple:
    return tuple(sorted(factors))


class RatLT:
    """A finite sum of fractions N / prod(1 - L^{-a} T^b).

    ``summands`` is a tuple of ``(LTPoly, factors)`` with ``factors`` a sorted
    tuple of ``(a, b)`` descriptors (repetitions allowed).
    """

    __slots__ = ("summands",)

    def __init__(self, summands: Iterable[tuple] = ()):
        merged: dict[tuple, LTPoly] = {}
        for num, factors in summands:
            key = _fkey(factors)
            for f in key:
                if f[0] < 0 or f[1] < 0 or f == (0, 0):
                    raise ValueError(f"inadmissible denominator factor {f}")
            merged[key] = merged[key] + num if key in merged else num
        self.summands = tuple((n, k) for k, n in sorted(merged.items()) if n)

    @classmethod
    def from_poly(cls, num: LTPoly, factors: Iterable[tuple] = ()) -> "RatLT":
        return cls([(num, tuple(factors))])

    def __add__(self, other: "RatLT") -> "RatLT":
        return RatLT(self.summands + other.summands)

    def __neg__(self) -> "RatLT":
        return RatLT((-n, f) for n, f in self.summands)

    def __sub__(self, other: "RatLT") -> "RatLT":
        return self + (-other)

    def scale(self, c) -> "RatLT":
        """Multiply by a Laurent polynomial in L (or an LTPoly)."""
        return RatLT((n * c, f) for n, f in self.summands)

    def __bool__(self) -> bool:
        return bool(self.summands)

    # combined form ------------------------------------------------------

    def common_denominator(self) -> Counter:
        common: Counter = Counter()
        for _, factors in self.summands:
            for f, k in Counter(factors).items():
                common[f] = max(common[f], k)
        return common

    def combined(self) -> tuple[LTPoly, Counter]:
        common = self.common_denominator()
        total = LTPoly()
        for num, factors in self.summands:
            missing = common - Counter(factors)
            for f, k in missing.items():
                for _ in range(k):
                    num = num * factor_poly(f)
            total = total + num
        return total, common

    @property
    def numerator(self) -> LTPoly:
        return self.combined()[0]

    @property
    def denominator(self) -> list:
        return sorted(self.combined()[1].elements())

    # linear functionals -------------------------------------------------

    def is_degree_zero(self) -> bool:
        return all(n.t_degree() <= sum(b for _, b in f) for n, f in self.summands)

    def series(self, n_max: int, precision: int) -> list:
        """Coefficients of T^0..T^n_max, each truncated to L-exponents >= -precision."""
        acc: dict[tuple, int] = {}
        for num, factors in self.summands:
            cur = {k: c for k, c in num.terms.items() if k[1] <= n_max and k[0] >= -precision}
            for a, b in factors:
                cur = _divide_series(cur, a, b, n_max, precision)
            for k, c in cur.items():
                acc[k] = acc.get(k, 0) + c
        out = [dict() for _ in range(n_max + 1)]
        for (a, b), c in acc.items():
            if c:
                out[b][a] = c
        return [LaurentL(t) for t in out]

    def coefficient(self, n: int, precision: int) -> LaurentL:
        return self.series(n, precision)[n]

    def limit(self) -> LaurentL:
        """Image under the ring map sending L^e T^i / (1 - L^e T^i) to -1 (i > 0)."""
        num_total = LaurentL()
        den_total: Counter = Counter()
        parts = []
        for num, factors in self.summands:
            deg = sum(b for _, b in factors)
            if num.t_degree() > deg:
                raise ArithmeticError("numerator T-degree exceeds denominator: no limit")
            top = num.t_coefficient(deg)
            sign = (-1) ** sum(1 for _, b in factors if b > 0)
            shift = sum(a for a, b in factors if b > 0)
            stuck = Counter(a for a, b in factors if b == 0)
            parts.append((top.shift(shift) * sign, stuck))
            for a, k in stuck.items():
                den_total[a] = max(den_total[a], k)
        for top, stuck in parts:
            for a, k in (den_total - stuck).items():
                for _ in range(k):
                    top = top * (1 - LaurentL.monomial(-a))
            num_total = num_total + top
        for a, k in den_total.items():
            for _ in range(k):
                num_total = laurent_divexact(num_total, 1 - LaurentL.monomial(-a))
        return num_total

    def chi_specialization(self, s0: int) -> Fraction:
        """Put T = L^{-s0}, L = 1 + eps and return the eps^0 coefficient.

        Raises ArithmeticError if negative powers of eps survive in the sum.
        """
        total: dict[int, Fraction] = {}
        for num, factors in self.summands:
            ms = [a + b * s0 for a, b in factors]
            r = len(ms)
            # 1 - (1+eps)^{-m} = eps * u_m(eps)
            inv_u = [Fraction(1)]
            for m in ms:
                u = [-_binom(-m, k + 1) for k in range(r + 1)]
                inv_u = _series_mul(inv_u, _series_inverse(u, r), r)
            numer = [Fraction(0)] * (r + 1)
            for (a, b), c in num.terms.items():
                e = a - b * s0
                for k in range(r + 1):
                    numer[k] += c * _binom(e, k)
            prod_ = _series_mul(numer, inv_u, r)
            for k in range(r + 1):
                total[k - r] = total.get(k - r, Fraction(0)) + prod_[k]
        poles = {k: v for k, v in total.items() if k < 0 and v}
        if poles:
            raise ArithmeticError(f"unexpected pole at L = 1 of order {-min(poles)}")
        return total.get(0, Fraction(0))

    def __repr__(self) -> str:
        return f"RatLT({len(self.summands)} summands)"


def _divide_series(cur: dict, a: int, b: int, n_max: int, precision: int) -> dict:
    """Multiply a truncated series by 1 / (1 - L^{-a} T^b)."""
    if not cur:
        return cur
    out = dict(cur)
    if b > 0:
        # out(l, t) = cur(l, t) + out(l + a, t - b), swept by increasing t
        for t in range(b, n_max + 1):
            for (l, tt), c in [(k, v) for k, v in out.items() if k[1] == t - b]:
                nl = l - a
                if nl >= -precision:
                    out[(nl, t)] = out.get((nl, t), 0) + c
    else:
        # pure L factor: sweep exponents downward
        for l in range(max(k[0] for k in out), -precision - 1, -1):
            for (ll, t), c in [(k, v) for k, v in out.items() if k[0] == l]:
                nl = l - a
                if nl >= -precision:
                    out[(nl, t)] = out.get((nl, t), 0) + c
    return {k: c for k, c in out.items() if c}


def rat_equal(x: RatLT, y: RatLT) -> bool:
    """Equality of rational functions (cross-multiplied numerators agree)."""
    num, _ = (x - y).combined()
    return not num


# -- atom-weighted values ------------------------------------------------------------


class MotivicPoly:
    """Finite map Atom -> LaurentL."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Atom, LaurentL] | None = None):
        self.coeffs = {a: c for a, c in (coeffs or {}).items() if c}

    @classmethod
    def atom(cls, a: Atom, c=1) -> "MotivicPoly":
        return cls({a: _as_laurent(c)})

    def __add__(self, other: "MotivicPoly") -> "MotivicPoly":
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out[a] + c if a in out else c
        return MotivicPoly(out)

    def __neg__(self) -> "MotivicPoly":
        return MotivicPoly({a: -c for a, c in self.coeffs.items()})

    def __sub__(self, other: "MotivicPoly") -> "MotivicPoly":
        return self + (-other)

    def __mul__(self, other) -> "MotivicPoly":
        if isinstance(other, (LaurentL, int)):
            return MotivicPoly({a: c * other for a, c in self.coeffs.items()})
        if isinstance(other, MotivicPoly):
            if set(self.coeffs) <= {POINT}:
                return other * self.coeffs.get(POINT, LaurentL())
            if set(other.coeffs) <= {POINT}:
                return self * other.coeffs.get(POINT, LaurentL())
            raise ArithmeticError("products of two non-Point atoms are not defined")
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, MotivicPoly) and self.coeffs == other.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def truncate(self, precision: int) -> "MotivicPoly":
        return MotivicPoly({a: c.truncate(precision) for a, c in self.coeffs.items()})

    def items(self):
        return sorted(self.coeffs.items())

    def __repr__(self) -> str:
        return f"MotivicPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{a}" for a, c in self.items())


class MotivicRat:
    """Finite map Atom -> RatLT."""

    __slots__ = ("parts",)

    def __init__(self, parts: Mapping[Atom, RatLT] | None = None):
        self.parts = {a: r for a, r in (parts or {}).items() if r}

    def __add__(self, other: "MotivicRat") -> "MotivicRat":
        out = dict(self.parts)
        for a, r in other.parts.items():
            out[a] = out[a] + r if a in out else r
        return MotivicRat(out)

    def __neg__(self) -> "MotivicRat":
        return MotivicRat({a: -r for a, r in self.parts.items()})

    def __sub__(self, other: "MotivicRat") -> "MotivicRat":
        return self + (-other)

    @classmethod
    def weighted(cls, weight: MotivicPoly, rat: RatLT) -> "MotivicRat":
        return cls({a: rat.scale(c) for a, c in weight.coeffs.items()})

    def atoms(self):
        return sorted(self.parts)

    def coefficient_of_T(self, n: int, precision: int) -> MotivicPoly:
        return coefficient_of_T(self, n, precision)

    def limit(self) -> MotivicPoly:
        return MotivicPoly({a: r.limit() for a, r in self.parts.items()})

    def equals(self, other: "MotivicRat") -> bool:
        atoms = set(self.parts) | set(other.parts)
        return all(rat_equal(self.parts.get(a, RatLT()), other.parts.get(a, RatLT())) for a in atoms)


def coefficient_of_T(z: MotivicRat, n: int, precision: int) -> MotivicPoly:
    """T^n coefficient, keeping L-exponents >= -precision."""
    return MotivicPoly({a: r.coefficient(n, precision) for a, r in z.parts.items()})


def series_of_T(z: MotivicRat, n_max: int, precision: int) -> list:
    """Coefficients of T^0..T^n_max in one pass."""
    out = [MotivicPoly() for _ in range(n_max + 1)]
    for a, r in z.parts.items():
        for n, c in enumerate(r.series(n_max, precision)):
            out[n] = out[n] + MotivicPoly.atom(a, c) if c else out[n]
    return out


# -- cones to rational functions ------------------------------------------------------


def s_theta_simplicial(inv: QOInvariants, cone: Cone) -> RatLT:
    j = cone.level
    num: dict[tuple, int] = {}
    for p in d_theta(cone):
        key = (-int(xi(inv, j, p)), eta(p))
        num[key] = num.get(key, 0) + 1
    factors = tuple((int(xi(inv, j, v)), eta(v)) for v in cone.edges)
    return RatLT.from_poly(LTPoly(num), factors)


def s_theta(fan: Fan, cone: Cone) -> RatLT:
    """Lattice-point generating function of the relative interior of ``cone``."""
    inv = fan.inv
    if cone.id.kind == SIGMA_MINUS:
        hat = hat_decomposition(inv, cone.id.j)
        return (
            s_theta_simplicial(inv, hat.rho_prime)
            - s_theta_simplicial(inv, hat.rho_bar)
            - s_theta_simplicial(inv, hat.sigma_bar_plus)
        )
    return s_theta_simplicial(inv, cone)


def minus_identity_holds(fan: Fan, j: int, n_max: int, precision: int) -> bool:
    """Compare the three-term expression for S_{sigma_j^-} with its lattice points.

    The truncated series of the rational function must count exactly the
    order vectors classified into sigma_j^- (with eta <= n_max, xi <= precision).
    """
    inv = fan.inv
    cone = fan.cone(SigmaMinus(j))
    series = s_theta(fan, cone).series(n_max, precision)
    direct = [LaurentL() for _ in range(n_max + 1)]
    for n, items in enumerate_orders_upto(inv, n_max, precision).items():
        for k, cid in items:
            if cid == cone.id:
                direct[n] = direct[n] + LaurentL.monomial(-int(xi(inv, j, k)))
    return all(_as_laurent(a) == b for a, b in zip(series, direct))


def c_naive(cone: Cone) -> LaurentL:
    if cone.id.kind == RHO:
        return (L - 1) * (L - 2)
    return L - 1


def c_mono(inv: QOInvariants, cone: Cone, compat: str | None = None) -> MotivicPoly:
    """Equivariant class attached to a cone.

    With ``compat="printed"`` the two root-of-unity classes are exchanged.
    """
    kind, j = cone.id.kind, cone.id.j
    if kind == SIGMA_TOP:
        return MotivicPoly.atom(POINT)
    plus = Mu(inv.rj(j) * inv.e[j])
    minus = Mu(inv.nj(j) * inv.e[j])
    if compat == COMPAT_PRINTED:
        plus, minus = minus, plus
    if kind == SIGMA_PLUS:
        return MotivicPoly.atom(plus)
    if kind == SIGMA_MINUS:
        return MotivicPoly.atom(minus)
    if kind == RHO:
        return MotivicPoly.atom(Curve(inv.nj(j), inv.rj(j), inv.e[j]))
    raise ValueError(f"no class attached to {cone.id}")


def cone_weight(inv: QOInvariants, cone: Cone, variant: str, compat: str | None = None) -> MotivicPoly:
    """c(theta) (L-1)^{dim-1}, or its monodromic analogue."""
    scale = (L - 1) ** (cone.dim - 1)
    if variant == "naive":
        return MotivicPoly.atom(POINT, c_naive(cone) * scale)
    if variant == "mono":
        return c_mono(inv, cone, compat) * scale
    raise ValueError(f"unknown variant {variant!r}")


def zeta(inv: QOInvariants, variant: str, compat: str | None = None, fan: Fan | None = None) -> MotivicRat:
    fan = fan or build_fan(inv)
    total = MotivicRat()
    for cone in fan.cones:
        total = total + MotivicRat.weighted(cone_weight(inv, cone, variant, compat), s_theta(fan, cone))
    return total


def z_naive(inv: QOInvariants, fan: Fan | None = None) -> MotivicRat:
    return zeta(inv, "naive", fan=fan)


def z_mono(inv: QOInvariants, compat: str | None = None, fan: Fan | None = None) -> MotivicRat:
    return zeta(inv, "mono", compat, fan)


# -- the order-vector side -----------------------------------------------------------


def _dims(inv: QOInvariants, kind: str) -> int:
    return inv.d if kind == RHO else inv.d + 1


def mu_Hk(inv: QOInvariants, k, variant: str = "mono", compat: str | None = None, fan: Fan | None = None) -> MotivicPoly:
    """Measure of the arcs with order vector ``k`` (and, for mono, angular component 1)."""
    hit = classify_vector(inv, k)
    if hit is None:
        raise ValueError(f"k not realizable: {tuple(k)}")
    cid, level = hit
    fan = fan or build_fan(inv)
    cone = fan.cone(cid)
    return cone_weight(inv, cone, variant, compat) * LaurentL.monomial(-int(xi(inv, level, k)))


def oracle_series(
    inv: QOInvariants, n_max: int, precision: int, variant: str = "mono", compat: str | None = None
) -> list:
    """T^0..T^n_max coefficients summed directly over order vectors.

    The weight of a vector has L-degree at most d + 1 above -xi, so all
    vectors with xi <= precision + d + 1 matter for the truncation.
    """
    fan = build_fan(inv)
    weights = {c.id: cone_weight(inv, c, variant, compat) for c in fan.cones}
    orders = enumerate_orders_upto(inv, n_max, precision + inv.d + 1)
    out = [MotivicPoly() for _ in range(n_max + 1)]
    for n, items in orders.items():
        acc = MotivicPoly()
        for k, cid in items:
            level = fan.cone(cid).level
            acc = acc + weights[cid] * LaurentL.monomial(-int(xi(inv, level, k)))
        out[n] = acc.truncate(precision)
    return out


def oracle_coefficient(inv: QOInvariants, n: int, precision: int, variant: str = "mono", compat: str | None = None) -> MotivicPoly:
    return oracle_series(inv, n, precision, variant, compat)[n]


# -- limits and the Milnor fiber ------------------------------------------------------


def cone_limit(fan: Fan, cone: Cone) -> LaurentL:
    """lim_{T -> infinity} of (L-1)^{dim-1} S_theta."""
    return s_theta(fan, cone).scale((L - 1) ** (cone.dim - 1)).limit()


def cone_limit_closed(inv: QOInvariants, cone: Cone) -> LaurentL:
    kind, j, ell = cone.id.kind, cone.id.j, inv.ell
    if kind in (RHO, SIGMA_PLUS):
        return (L - 1) ** (ell[j] - 1) * (-1) ** ell[j]
    if kind == SIGMA_MINUS:
        return (L - 1) ** ell[j - 1] * (-1) ** (ell[j - 1] + 1)
    if kind == SIGMA_TOP:
        return (L - 1) ** ell[inv.g] * (-1) ** (ell[inv.g] + 1)
    raise ValueError(str(cone.id))


def milnor_fiber_closed(inv: QOInvariants, compat: str | None = None) -> MotivicPoly:
    ell = inv.ell
    total = MotivicPoly.atom(POINT, ONE_MINUS_L ** ell[inv.g])
    for j in range(1, inv.g + 1):
        nj, rj, ej = inv.nj(j), inv.rj(j), inv.e[j]
        with_rho, with_minus = Mu(rj * ej), Mu(nj * ej)
        if compat == COMPAT_PRINTED:
            with_rho, with_minus = with_minus, with_rho
        pair = MotivicPoly.atom(Curve(nj, rj, ej)) + MotivicPoly.atom(with_rho)
        total = total + pair * ONE_MINUS_L ** (ell[j] - 1)
        total = total + MotivicPoly.atom(with_minus, ONE_MINUS_L ** ell[j - 1])
    return total


def milnor_fiber_via_limit(inv: QOInvariants, compat: str | None = None) -> MotivicPoly:
    return -z_mono(inv, compat).limit()
