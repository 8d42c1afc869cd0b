"""Polynomials with rational exponents and the spectrum of the Milnor fiber."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Mapping

from .branch import QOInvariants
from .motivic import COMPAT_PRINTED, Atom, MotivicPoly, milnor_fiber_closed


class FracPoly:
    """Finite integer combination of powers t^alpha with alpha rational."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        out: dict[Fraction, int] = {}
        for a, c in (terms or {}).items():
            a = Fraction(a)
            out[a] = out.get(a, 0) + c
        self.terms = {a: c for a, c in out.items() if c}

    @classmethod
    def monomial(cls, alpha, c: int = 1) -> "FracPoly":
        return cls({Fraction(alpha): c})

    @classmethod
    def const(cls, c: int) -> "FracPoly":
        return cls({Fraction(0): c})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = FracPoly.const(other)
        return isinstance(other, FracPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other) -> "FracPoly":
        other = _as_fp(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return FracPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "FracPoly":
        return FracPoly({a: -c for a, c in self.terms.items()})

    def __sub__(self, other) -> "FracPoly":
        return self + (-_as_fp(other))

    def __rsub__(self, other) -> "FracPoly":
        return _as_fp(other) - self

    def __mul__(self, other) -> "FracPoly":
        other = _as_fp(other)
        out: dict[Fraction, int] = {}
        for a1, c1 in self.terms.items():
            for a2, c2 in other.terms.items():
                out[a1 + a2] = out.get(a1 + a2, 0) + c1 * c2
        return FracPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FracPoly":
        out = FracPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def substitute_root(self, e: int) -> "FracPoly":
        """p(t^{1/e})."""
        return FracPoly({a / e: c for a, c in self.terms.items()})

    def invert(self) -> "FracPoly":
        """t^alpha -> t^{-alpha}."""
        return FracPoly({-a: c for a, c in self.terms.items()})

    def split_at_one(self) -> tuple["FracPoly", "FracPoly"]:
        low = FracPoly({a: c for a, c in self.terms.items() if a < 1})
        high = FracPoly({a: c for a, c in self.terms.items() if a > 1})
        if 1 in self.terms:
            raise ArithmeticError("a term with exponent exactly 1 cannot be split")
        return low, high

    def items(self):
        return sorted(self.terms.items())

    def exponents(self) -> list:
        return sorted(self.terms)

    def __repr__(self) -> str:
        return f"FracPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a, c in self.items():
            mono = "1" if a == 0 else ("t" if a == 1 else f"t^({a})")
            if mono == "1":
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else ("-" + mono if c == -1 else f"{c}*{mono}"))
        return " + ".join(parts).replace("+ -", "- ")


def _as_fp(x) -> FracPoly:
    if isinstance(x, FracPoly):
        return x
    if isinstance(x, int):
        return FracPoly.const(x)
    raise TypeError(f"cannot use {x!r} as a FracPoly")


T_ = FracPoly.monomial(1)


def p_r(r: int) -> FracPoly:
    """1 + t^{1/r} + ... + t^{(r-1)/r}; the spectrum of Mu(r)."""
    if r < 1:
        raise ValueError("r must be positive")
    return FracPoly({Fraction(i, r): 1 for i in range(r)})


def q_nr(n: int, r: int) -> FracPoly:
    if gcd(n, r) != 1:
        raise ValueError(f"gcd({n}, {r}) != 1")
    first = FracPoly({Fraction(i, n): 1 for i in range(1, n)})
    second = FracPoly({Fraction(j, r): 1 for j in range(1, r)})
    return first * second


def q_split(n: int, r: int) -> tuple[FracPoly, FracPoly]:
    return q_nr(n, r).split_at_one()


def p_nre(n: int, r: int, e: int = 1) -> FracPoly:
    """Spectrum of the torus curve (y^n - x^r)^e = 1 with its root-of-unity action."""
    low, high = q_split(n, r)
    inner = T_ - low.substitute_root(e) - FracPoly.monomial(Fraction(e - 1, e)) * high.substitute_root(e)
    return p_r(e) * inner - p_r(n * e) - p_r(r * e)


def p_nr(n: int, r: int) -> FracPoly:
    return p_nre(n, r, 1)


def sp_atom(a: Atom) -> FracPoly:
    if a.kind == 0:
        return FracPoly.const(1)
    if a.kind == 1:
        return p_r(a.args[0])
    return p_nre(*a.args)


def sp_of(m: MotivicPoly) -> FracPoly:
    """Additive spectrum map, using Sp(X L^k) = Sp(X) t^k for k >= 0."""
    total = FracPoly()
    for atom, coeff in m.items():
        base = sp_atom(atom)
        for k, c in coeff.items():
            if k < 0:
                raise ValueError("negative power of L has no spectrum")
            total = total + base * FracPoly.monomial(k, c)
    return total


def spectrum_prime(inv: QOInvariants, compat: str | None = None) -> FracPoly:
    """Closed expression for Sp' in terms of n_j, r_j, e_j and l_j."""
    one_minus_t = 1 - T_
    ell = inv.ell
    total = FracPoly()
    for j in range(1, inv.g + 1):
        nj, rj, ej = inv.nj(j), inv.rj(j), inv.e[j]
        with_curve, alone = p_r(rj * ej), p_r(nj * ej)
        if compat == COMPAT_PRINTED:
            with_curve, alone = alone, with_curve
        total = total + one_minus_t ** (ell[j] - 1) * (p_nre(nj, rj, ej) + with_curve)
        total = total + one_minus_t ** ell[j - 1] * alone
    total = total + one_minus_t ** ell[inv.g] - 1
    return total * (-1) ** inv.d


def spectrum_prime_via_milnor(inv: QOInvariants, compat: str | None = None) -> FracPoly:
    return (sp_of(milnor_fiber_closed(inv, compat)) - 1) * (-1) ** inv.d


def spectrum_sp(inv: QOInvariants, compat: str | None = None) -> FracPoly:
    """Sp = t^{d+1} * iota(Sp')."""
    return FracPoly.monomial(inv.d + 1) * spectrum_prime(inv, compat).invert()


def exponents_in_range(p: FracPoly, d: int) -> bool:
    return all(0 < a < d + 1 for a in p.terms)
