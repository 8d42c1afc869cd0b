"""Verification harness: every closed formula checked against an independent route."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable

from .branch import QOBranchData, QOInvariants, check_invariants, derive_invariants, validate
from .fan import (
    Fan,
    Rho,
    build_fan,
    classify_vector,
    d_theta,
    edge_condition_violations,
    enumerate_orders_upto,
    eta,
    multiplicity,
    xi,
)
from .motivic import (
    LaurentL,
    MotivicPoly,
    Mu,
    milnor_fiber_closed,
    milnor_fiber_via_limit,
    minus_identity_holds,
    oracle_series,
    series_of_T,
    zeta,
)
from .spectrum import FracPoly, exponents_in_range, spectrum_prime, spectrum_prime_via_milnor
from .ztop import (
    RatS,
    candidate_poles,
    check_cp_equals_fan,
    chi_top_oracle,
    lc_identity_check,
    special_vectors,
    z_top,
)


@dataclass(frozen=True)
class VerifyOptions:
    series_order: int = 20
    l_precision: int = 20
    chitop_points: tuple = (1, 2, 3)
    classify_order: int = 12
    classify_precision: int = 15
    compat: str | None = None


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0


@dataclass
class BranchReport:
    branch: QOBranchData
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]


# -- known fixtures -------------------------------------------------------------------

SURFACE_EXAMPLE = ((Fraction(1, 2), Fraction(3, 2)), (Fraction(1, 2), Fraction(7, 4)))
CUSP = ((Fraction(3, 2),),)
SMOOTH = ((Fraction(1, 2),),)


def surface_example_ztop() -> RatS:
    """Z_top of (z^2 - x y^3)^4 - x^4 y^13 written as a sum of three simple fractions."""
    return (
        RatS((13, 24), [(3, 8), (5, 24)])
        + RatS((22, 96), [(5, 24), (3, 8), (11, 52)])
        - RatS((0, 1), [(1, 1), (3, 8), (11, 52)])
    )


def surface_example_spectrum() -> FracPoly:
    return FracPoly({Fraction(k, 8): 1 for k in range(9, 16)})


def _fixture_checks(inv: QOInvariants, opts: VerifyOptions) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    lam = inv.branch.lam
    out = []
    if lam == SURFACE_EXAMPLE:
        def ex_ztop():
            zt = z_top(inv)
            return zt == surface_example_ztop(), str(zt)

        def ex_spectrum():
            sp = spectrum_prime(inv, opts.compat)
            return sp == surface_example_spectrum(), str(sp)

        out += [("fixture: example Z_top", ex_ztop), ("fixture: example spectrum", ex_spectrum)]
    if lam == CUSP:
        def cusp_all():
            sp = spectrum_prime(inv, opts.compat)
            zt = z_top(inv)
            t2 = series_of_T(zeta(inv, "mono", opts.compat), 2, 20)[2]
            want_t2 = MotivicPoly.atom(Mu(2), LaurentL.monomial(-1))
            ok = sp == FracPoly({Fraction(5, 6): 1, Fraction(7, 6): 1}) and zt == RatS((5, 4), [(5, 6), (1, 1)])
            return ok and t2 == want_t2, f"Sp'={sp}; Z_top={zt}; T^2: {t2}"

        out.append(("fixture: cusp", cusp_all))
    if lam == SMOOTH:
        def smooth_all():
            zt = z_top(inv)
            fan = build_fan(inv)
            nu = fan.cone(Rho(1)).edges[0]
            special = (int(xi(inv, 1, nu)), eta(nu))
            cancelled = special_vectors(inv) == [(1, 1)] and special == (3, 2) and special not in zt.den
            return zt == RatS((1,), [(1, 1)]) and cancelled and lc_identity_check(inv, 1), str(zt)

        out.append(("fixture: smooth", smooth_all))
    return out


# -- the suites --------------------------------------------------------------------


def _structural(inv: QOInvariants) -> tuple[bool, str]:
    try:
        check_invariants(inv)
    except AssertionError as exc:
        return False, str(exc)
    for j in range(1, inv.g + 1):
        if gcd(inv.rj(j), inv.nj(j)) != 1:
            return False, f"gcd(r_{j}, n_{j}) != 1"
    return True, ""


def _multiplicities(fan: Fan) -> tuple[bool, str]:
    for c in fan.cones:
        if c.simplicial and len(d_theta(c)) != multiplicity(c):
            return False, f"|D| != mult on {c.id}"
    return True, ""


def _edges(fan: Fan) -> tuple[bool, str]:
    bad = edge_condition_violations(fan)
    return not bad, "; ".join(bad)


def _minus(fan: Fan, opts: VerifyOptions) -> tuple[bool, str]:
    for j in range(1, fan.inv.g + 1):
        if not minus_identity_holds(fan, j, opts.classify_order, opts.classify_precision):
            return False, f"three-term identity fails at j={j}"
    return True, ""


def _classification(inv: QOInvariants, opts: VerifyOptions) -> tuple[bool, str]:
    seen = {}
    for items in enumerate_orders_upto(inv, opts.classify_order, opts.classify_precision).values():
        for k, cid in items:
            if k in seen:
                return False, f"{k} generated under {seen[k]} and {cid}"
            seen[k] = cid
            hit = classify_vector(inv, k)
            if hit is None or hit[0] != cid:
                return False, f"{k} generated under {cid} but classified as {hit}"
    return True, f"{len(seen)} order vectors"


def _series(inv: QOInvariants, fan: Fan, variant: str, opts: VerifyOptions) -> tuple[bool, str]:
    z = zeta(inv, variant, opts.compat, fan)
    closed = series_of_T(z, opts.series_order, opts.l_precision)
    brute = oracle_series(inv, opts.series_order, opts.l_precision, variant, opts.compat)
    for n in range(1, opts.series_order + 1):
        if closed[n] != brute[n]:
            return False, f"T^{n}: closed {closed[n]} vs oracle {brute[n]}"
    return True, ""


def _chitop(inv: QOInvariants, zt: RatS, opts: VerifyOptions) -> tuple[bool, str]:
    for s0 in opts.chitop_points:
        a, b = zt(s0), chi_top_oracle(inv, s0)
        if a != b:
            return False, f"s={s0}: Z_top {a} vs chi_top {b}"
    return True, ""


def _milnor(inv: QOInvariants, opts: VerifyOptions) -> tuple[bool, str]:
    a, b = milnor_fiber_closed(inv, opts.compat), milnor_fiber_via_limit(inv, opts.compat)
    return a == b, "" if a == b else f"closed {a} vs limit {b}"


def _spectrum(inv: QOInvariants, opts: VerifyOptions) -> tuple[bool, str]:
    a, b = spectrum_prime(inv, opts.compat), spectrum_prime_via_milnor(inv, opts.compat)
    if a != b:
        return False, f"closed {a} vs via Milnor fiber {b}"
    if opts.compat is None and not exponents_in_range(a, inv.d):
        return False, f"exponent out of range in {a}"
    return True, ""


def _poles(inv: QOInvariants, zt: RatS) -> tuple[bool, str]:
    if not check_cp_equals_fan(inv):
        return False, "Newton data disagree with the fan forms"
    try:
        candidate_poles(inv, zt)
    except AssertionError as exc:
        return False, str(exc)
    for _, j in special_vectors(inv):
        if not lc_identity_check(inv, j):
            return False, f"special candidate at level {j} does not cancel"
    return True, ""


def verify_branch(branch: QOBranchData, opts: VerifyOptions | None = None) -> BranchReport:
    opts = opts or VerifyOptions()
    report = BranchReport(branch)

    def run(name: str, fn: Callable[[], tuple[bool, str]]) -> None:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, not a harness failure
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        report.checks.append(CheckResult(name, ok, detail, time.perf_counter() - t0))

    try:
        inv = derive_invariants(branch)
    except AssertionError as exc:
        report.checks.append(CheckResult("invariants", False, str(exc)))
        return report
    fan = build_fan(inv)
    zt = z_top(inv, fan)
    run("invariants", lambda: _structural(inv))
    run("multiplicity", lambda: _multiplicities(fan))
    run("edge conditions", lambda: _edges(fan))
    run("minus identity", lambda: _minus(fan, opts))
    run("classification", lambda: _classification(inv, opts))
    run("series naive", lambda: _series(inv, fan, "naive", opts))
    run("series mono", lambda: _series(inv, fan, "mono", opts))
    run("chi_top", lambda: _chitop(inv, zt, opts))
    run("milnor fiber", lambda: _milnor(inv, opts))
    run("spectrum", lambda: _spectrum(inv, opts))
    run("poles", lambda: _poles(inv, zt))
    for name, fn in _fixture_checks(inv, opts):
        run(name, fn)
    return report


# -- shrinking failing inputs ---------------------------------------------------------


def _size(b: QOBranchData) -> tuple:
    return (b.d, b.g, sum(abs(a.numerator) + a.denominator for v in b.lam for a in v))


def _neighbours(b: QOBranchData):
    lam = [list(v) for v in b.lam]
    if b.g > 1:
        yield lam[:-1], b.d
        yield lam[1:], b.d
    if b.d > 1:
        for i in range(b.d):
            yield [v[:i] + v[i + 1:] for v in lam], b.d - 1
    for j, v in enumerate(lam):
        for i, a in enumerate(v):
            for smaller in (Fraction(a.numerator - 1, a.denominator), Fraction(a.numerator, a.denominator - 1) if a.denominator > 1 else None, Fraction(0)):
                if smaller is None or smaller < 0 or smaller == a:
                    continue
                w = [list(x) for x in lam]
                w[j][i] = smaller
                yield w, b.d


def minimize(branch: QOBranchData, still_fails: Callable[[QOBranchData], bool], max_rounds: int = 200) -> QOBranchData:
    """Greedy shrink: keep taking a smaller valid branch on which the check still fails."""
    current = branch
    for _ in range(max_rounds):
        for raw, d in _neighbours(current):
            try:
                cand = validate(raw, d)
            except ValueError:
                continue
            if _size(cand) < _size(current) and still_fails(cand):
                current = cand
                break
        else:
            return current
    return current


def failing_check(report: BranchReport, opts: VerifyOptions) -> tuple[QOBranchData, str]:
    """Minimized counterexample for the first failed check of ``report``."""
    name = report.failures()[0].name

    def still_fails(b: QOBranchData) -> bool:
        r = verify_branch(b, opts)
        return any(c.name == name and not c.ok for c in r.checks)

    return minimize(report.branch, still_fails), name
