"""Topological zeta function, candidate poles and the Newton-map comparison."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .branch import QOInvariants
from .fan import (
    SIGMA_MINUS,
    Cone,
    Fan,
    Rho,
    SigmaMinus,
    SigmaPlus,
    SigmaTop,
    build_fan,
    eta,
    multiplicity,
    nu_vector,
    unit,
    xi,
)
from .motivic import POINT, L, LTPoly, MotivicRat, s_theta, z_naive

# -- polynomials in s (ascending Fraction coefficients) -------------------------


def _trim(p: Sequence) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(Fraction(c) for c in p)


def padd(p, q) -> tuple:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def pmul(p, q) -> tuple:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def peval(p, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pdiv_linear(p, a: int, A: int) -> tuple:
    """Exact quotient of p by (a + A s), A > 0."""
    root = Fraction(-a, A)
    if peval(p, root) != 0:
        raise ArithmeticError("not divisible")
    # synthetic division by (s - root), then divide by A
    coeffs = list(reversed(p))
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + out[-1] * root)
    return _trim([c / A for c in reversed(out)])


def _linear(a: int, A: int) -> tuple:
    return _trim([a, A])


# -- rational functions in s --------------------------------------------------------


class RatS:
    """N(s) / prod (a + A s), kept reduced with primitive factors, a > 0, A > 0."""

    __slots__ = ("num", "den")

    def __init__(self, num: Iterable = (), den: Iterable[tuple] | Counter = ()):
        num = _trim(num)
        factors = Counter()
        for a, A in (den.elements() if isinstance(den, Counter) else den):
            a, A = int(a), int(A)
            if A < 0 or (A == 0 and a == 0):
                raise ValueError(f"bad linear factor ({a}, {A})")
            g = gcd(a, A)
            num = tuple(c / g for c in num)
            a, A = a // g, A // g
            if A == 0:
                num = tuple(c / a for c in num)
                continue
            if a <= 0:
                raise ValueError(f"linear factor {a} + {A}s has nonpositive constant term")
            factors[(a, A)] += 1
        for f in list(factors):
            while factors[f] and num and peval(num, Fraction(-f[0], f[1])) == 0:
                num = pdiv_linear(num, *f)
                factors[f] -= 1
        self.num = num
        self.den = +factors
        if not num:
            self.den = Counter()

    @classmethod
    def const(cls, c) -> "RatS":
        return cls((Fraction(c),))

    def factors(self) -> list:
        return sorted(self.den.elements())

    def __add__(self, other: "RatS") -> "RatS":
        if not isinstance(other, RatS):
            other = RatS.const(other)
        common = self.den | other.den
        n1 = self.num
        for f, k in (common - self.den).items():
            for _ in range(k):
                n1 = pmul(n1, _linear(*f))
        n2 = other.num
        for f, k in (common - other.den).items():
            for _ in range(k):
                n2 = pmul(n2, _linear(*f))
        return RatS(padd(n1, n2), common)

    __radd__ = __add__

    def __neg__(self) -> "RatS":
        return RatS(tuple(-c for c in self.num), self.den)

    def __sub__(self, other) -> "RatS":
        if not isinstance(other, RatS):
            other = RatS.const(other)
        return self + (-other)

    def __mul__(self, other) -> "RatS":
        if not isinstance(other, RatS):
            other = RatS.const(other)
        return RatS(pmul(self.num, other.num), self.den + other.den)

    __rmul__ = __mul__

    def divide_linear(self, a: int, A: int) -> "RatS":
        return RatS(self.num, self.den + Counter({(a, A): 1}))

    def __call__(self, s0) -> Fraction:
        s0 = Fraction(s0)
        value = peval(self.num, s0)
        for (a, A), k in self.den.items():
            value /= (a + A * s0) ** k
        return value

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatS):
            other = RatS.const(other)
        lhs, rhs = self.num, other.num
        for f, k in other.den.items():
            for _ in range(k):
                lhs = pmul(lhs, _linear(*f))
        for f, k in self.den.items():
            for _ in range(k):
                rhs = pmul(rhs, _linear(*f))
        return lhs == rhs

    def __hash__(self):
        return hash((self.num, frozenset(self.den.items())))

    def __repr__(self) -> str:
        return f"RatS({self})"

    def __str__(self) -> str:
        num = format_spoly(self.num)
        if not self.den:
            return num
        den = "".join(_factor_str(a, A, k) for (a, A), k in sorted(self.den.items()))
        return f"({num})/{den}" if len(self.num) > 1 else f"{num}/{den}"


def _factor_str(a: int, A: int, k: int) -> str:
    body = f"({a}+{'' if A == 1 else A}s)"
    return body if k == 1 else f"{body}^{k}"


def format_spoly(p) -> str:
    if not p:
        return "0"
    parts = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        mono = "" if i == 0 else ("s" if i == 1 else f"s^{i}")
        coef = str(c)
        if mono:
            coef = "" if c == 1 else ("-" if c == -1 else f"{c}*")
        parts.append(f"{coef}{mono}")
    return " + ".join(parts).replace("+ -", "- ")


# -- Z_top ------------------------------------------------------------------------


def _edge_factor(inv: QOInvariants, cone: Cone, v) -> tuple:
    return (int(xi(inv, cone.level, v)), eta(v))


def j_theta_simplicial(inv: QOInvariants, cone: Cone) -> RatS:
    return RatS((Fraction(multiplicity(cone)),), [_edge_factor(inv, cone, v) for v in cone.edges])


def j_theta(fan: Fan, cone: Cone) -> RatS:
    inv = fan.inv
    if cone.id.kind == SIGMA_MINUS:
        j = cone.id.j
        prev = RatS.const(1) if j == 1 else j_theta_simplicial(inv, fan.cone(Rho(j - 1)))
        plus = j_theta_simplicial(inv, fan.cone(SigmaPlus(j)))
        return (prev - plus).divide_linear(1, inv.nprod(j, inv.g))
    return j_theta_simplicial(inv, cone)


def z_top(inv: QOInvariants, fan: Fan | None = None) -> RatS:
    fan = fan or build_fan(inv)
    g = inv.g
    total = j_theta(fan, fan.cone(SigmaTop(g)))
    for j in range(1, g + 1):
        total = total + j_theta(fan, fan.cone(SigmaPlus(j)))
        total = total - j_theta(fan, fan.cone(Rho(j)))
        total = total + j_theta(fan, fan.cone(SigmaMinus(j)))
    return total


def chi_top_oracle(inv: QOInvariants, s0: int) -> Fraction:
    """Specialize the naive zeta function at T = L^{-s0} and L -> 1."""
    if s0 < 1 or int(s0) != s0:
        raise ValueError("s0 must be a positive integer")
    z = z_naive(inv)
    return z.parts[POINT].chi_specialization(int(s0)) if POINT in z.parts else Fraction(0)


# -- special vectors and candidate poles -----------------------------------------------


def special_vectors(inv: QOInvariants) -> list[tuple[int, int]]:
    d, g = inv.d, inv.g
    out = []
    for j in range(1, g + 1):
        hits = [
            i
            for i in range(d)
            if all(inv.lam(jj)[i] == 0 for jj in range(1, j)) and inv.lam(j)[i] == Fraction(1, inv.nj(j))
        ]
        if len(hits) != 1:
            continue
        i = hits[0]
        if j < g and not inv.lam(j + 1)[i] > inv.lam(j)[i]:
            continue
        nu = nu_vector(inv, i + 1, j)
        if (xi(inv, j, nu), eta(nu)) != (inv.nj(j) + 1, inv.nprod(j, g)):
            raise AssertionError(f"special vector ({i + 1},{j}) has unexpected forms")
        out.append((i + 1, j))
    return out


def _primitive_factor(a: int, A: int) -> tuple:
    g = gcd(a, A)
    return (a // g, A // g)


def candidate_pole_multiset(inv: QOInvariants) -> Counter:
    special = set(special_vectors(inv))
    out = Counter({(1, 1): 1})
    for j in range(1, inv.g + 1):
        for i in range(1, inv.d + 1):
            nu = nu_vector(inv, i, j)
            if (i, j) in special or nu == unit(inv.m, i - 1):
                continue
            out[_primitive_factor(int(xi(inv, j, nu)), eta(nu))] += 1
    return out


def candidate_poles(inv: QOInvariants, zt: RatS | None = None) -> list[tuple[int, int]]:
    """Sorted distinct factors (a, A) meaning a + A s.

    Raises AssertionError if the reduced Z_top denominator is not covered.
    """
    allowed = candidate_pole_multiset(inv)
    zt = zt if zt is not None else z_top(inv)
    if zt.den - allowed:
        raise AssertionError(f"Z_top has poles outside the candidate list: {dict(zt.den - allowed)}")
    return sorted(allowed)


# -- Newton-map data --------------------------------------------------------------------


@dataclass(frozen=True)
class NewtonData:
    """p[j-1][i-1], q[j-1][i-1] for levels j and coordinates i; B and b likewise."""

    p: tuple
    q: tuple
    B: tuple
    b: tuple


def newton_data(inv: QOInvariants) -> NewtonData:
    d, g = inv.d, inv.g
    ps, qs, Bs, bs = [], [], [], []
    scale = [1] * d
    for j in range(1, g + 1):
        step = [(inv.lam(j)[i] - inv.lam(j - 1)[i]) * scale[i] for i in range(d)]
        p = tuple(x.denominator for x in step)
        q = tuple(x.numerator for x in step)
        if j == 1:
            B = tuple(inv.e[0] * qi for qi in q)
            b = tuple(pi + qi for pi, qi in zip(p, q))
        else:
            B = tuple(p[i] * Bs[-1][i] + inv.e[j - 1] * q[i] for i in range(d))
            b = tuple(p[i] * bs[-1][i] + q[i] for i in range(d))
        scale = [s * pi for s, pi in zip(scale, p)]
        ps.append(p)
        qs.append(q)
        Bs.append(B)
        bs.append(b)
    return NewtonData(tuple(ps), tuple(qs), tuple(Bs), tuple(bs))


def cp_list(inv: QOInvariants) -> list[tuple[int, int]]:
    nd = newton_data(inv)
    out = [(nd.B[j][i], nd.b[j][i]) for j in range(inv.g) for i in range(inv.d)]
    return out + [(1, 1)]


def scp_list(inv: QOInvariants) -> list[tuple[int, int]]:
    nd = newton_data(inv)
    special = set(special_vectors(inv))
    out = [
        (nd.B[j][i], nd.b[j][i])
        for j in range(inv.g)
        for i in range(inv.d)
        if (i + 1, j + 1) not in special
    ]
    return out + [(1, 1)]


def check_cp_equals_fan(inv: QOInvariants) -> bool:
    nd = newton_data(inv)
    for j in range(1, inv.g + 1):
        for i in range(1, inv.d + 1):
            nu = nu_vector(inv, i, j)
            if (nd.B[j - 1][i - 1], nd.b[j - 1][i - 1]) != (eta(nu), xi(inv, j, nu)):
                return False
    return True


# -- local contributions ---------------------------------------------------------------------


def lc_j(inv: QOInvariants, j: int, fan: Fan | None = None) -> MotivicRat:
    fan = fan or build_fan(inv)
    d, g = inv.d, inv.g
    nxt = fan.cone(SigmaTop(g)) if j == g else fan.cone(SigmaMinus(j + 1))
    big = (
        s_theta(fan, fan.cone(SigmaPlus(j)))
        + s_theta(fan, fan.cone(SigmaMinus(j)))
        + s_theta(fan, nxt)
    ).scale((L - 1) ** (d + 1))
    small = s_theta(fan, fan.cone(Rho(j))).scale((L - 1) ** d * (L - 2))
    return MotivicRat({POINT: big + small})


def divide_by_factor(num: LTPoly, a: int, b: int) -> LTPoly | None:
    """Exact quotient of ``num`` by 1 - L^{-a} T^b (b > 0), or None."""
    rows: dict[int, dict[int, int]] = {}
    for (la, tb), c in num.terms.items():
        rows.setdefault(tb, {})[la] = c
    quotient: dict[tuple, int] = {}
    for t in range(max(rows, default=-1), -1, -1):
        row = {k: v for k, v in rows.get(t, {}).items() if v}
        if not row:
            continue
        if t < b:
            return None
        # top coefficient equals -L^{-a} * Q_{t-b}
        qrow = {la + a: -c for la, c in row.items()}
        for la, c in qrow.items():
            quotient[(la, t - b)] = quotient.get((la, t - b), 0) + c
            # subtract Q_{t-b} * 1 at degree t-b (the -L^{-a}T^b part cancels row t)
            target = rows.setdefault(t - b, {})
            target[la] = target.get(la, 0) - c
        rows[t] = {}
    return LTPoly(quotient)


def lc_identity_check(inv: QOInvariants, j: int) -> bool:
    specials = [s for s in special_vectors(inv) if s[1] == j]
    if not specials:
        raise ValueError("not applicable: no special vector at this level")
    lc = lc_j(inv, j).parts[POINT]
    num, den = lc.combined()
    factor = (inv.nj(j) + 1, inv.nprod(j, inv.g))
    k = den[factor]
    if k == 0:
        return False
    for _ in range(k):
        num = divide_by_factor(num, *factor)
        if num is None:
            return False
    return True
