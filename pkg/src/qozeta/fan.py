"""The fan of distinguished cones, its linear forms and lattice points.

Coordinates of the ambient lattice Z^m (m = d + g + 1) are indexed here from
0: the first ``d`` slots carry the base vector and slot ``d + i - 1`` carries
the order of the i-th approximate root, i = 1..g+1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import floor, prod
from typing import Iterator, Sequence

from .branch import QOInvariants
from .exact import (
    LatticeBasis,
    dot,
    is_integral,
    primitive_integer_multiple,
    primitive_on_ray,
    rank,
    smith_decomposition,
    solve_in_span,
    to_int_vector,
)

RHO = "rho"
SIGMA_PLUS = "sigma+"
SIGMA_MINUS = "sigma-"
SIGMA_TOP = "sigma_top"
HAT_RHO_PRIME = "hat_rho'"
HAT_RHO_BAR = "hat_rho_bar"
HAT_SIGMA_BAR_PLUS = "hat_sigma_bar+"


@dataclass(frozen=True, order=True)
class ConeId:
    kind: str
    j: int

    def __str__(self) -> str:
        return "sigma_top" if self.kind == SIGMA_TOP else f"{self.kind}_{self.j}"


def Rho(j: int) -> ConeId:
    return ConeId(RHO, j)


def SigmaPlus(j: int) -> ConeId:
    return ConeId(SIGMA_PLUS, j)


def SigmaMinus(j: int) -> ConeId:
    return ConeId(SIGMA_MINUS, j)


def SigmaTop(g: int) -> ConeId:
    return ConeId(SIGMA_TOP, g + 1)


@dataclass(frozen=True)
class Cone:
    id: ConeId
    edges: tuple
    dim: int
    level: int

    @property
    def simplicial(self) -> bool:
        return len(self.edges) == self.dim


@dataclass(frozen=True)
class Fan:
    inv: QOInvariants
    cones: tuple

    def cone(self, cid: ConeId) -> Cone:
        for c in self.cones:
            if c.id == cid:
                return c
        raise KeyError(str(cid))

    def level(self, j: int) -> tuple:
        return tuple(c for c in self.cones if c.level == j)


# -- vectors and linear forms ------------------------------------------------


def unit(m: int, idx: int) -> tuple:
    return tuple(int(i == idx) for i in range(m))


def nu_raw(inv: QOInvariants, i: int, j: int) -> tuple:
    """Unscaled rational generator of the i-th ray of rho_j (1-based i, j)."""
    d, g = inv.d, inv.g
    v = [Fraction(0)] * inv.m
    v[i - 1] = Fraction(1)
    for r in range(1, j + 1):
        v[d + r - 1] = inv.gamma[r][i - 1]
    for r in range(j + 1, g + 2):
        v[d + r - 1] = inv.nprod(j, r - 1) * inv.gamma[j][i - 1]
    return tuple(v)


def nu_vector(inv: QOInvariants, i: int, j: int) -> tuple:
    if j == 0:
        return unit(inv.m, i - 1)
    return primitive_integer_multiple(nu_raw(inv, i, j))


def xi(inv: QOInvariants, j: int, k: Sequence) -> Fraction:
    d = inv.d
    total = sum((Fraction(a) for a in k[:d]), Fraction(0))
    for i in range(1, j):
        total += (1 - inv.nj(i)) * k[d + i - 1]
    return total + k[d + j - 1]


def eta(k: Sequence):
    return k[-1]


def upsilon(inv: QOInvariants, j: int, nu: Sequence, r) -> tuple:
    """Linear map from (N_{j-1} x Z) onto the span of sigma_j^-."""
    d, g = inv.d, inv.g
    nu = tuple(Fraction(a) for a in nu)
    out = list(nu) + [Fraction(0)] * (g + 1)
    for i in range(1, j):
        out[d + i - 1] = dot(nu, inv.gamma[i])
    top = r + inv.nj(j - 1) * dot(nu, inv.gamma[j - 1])
    out[d + j - 1] = top
    for i in range(j + 1, g + 2):
        out[d + i - 1] = inv.nprod(j, i - 1) * top
    return tuple(out)


# -- the fan -----------------------------------------------------------------


def _dedup(vectors) -> tuple:
    seen = []
    for v in vectors:
        if v not in seen:
            seen.append(v)
    return tuple(seen)


def rho_edges(inv: QOInvariants, j: int) -> tuple:
    return tuple(nu_vector(inv, i, j) for i in range(1, inv.d + 1))


def build_fan(inv: QOInvariants) -> Fan:
    d, g, m = inv.d, inv.g, inv.m
    cones = []
    for j in range(1, g + 1):
        rho = rho_edges(inv, j)
        cones.append(Cone(Rho(j), rho, d, j))
        cones.append(Cone(SigmaPlus(j), rho + (unit(m, d + j - 1),), d + 1, j))
        cones.append(Cone(SigmaMinus(j), _dedup(rho_edges(inv, j - 1) + rho), d + 1, j))
    cones.append(Cone(SigmaTop(g), rho_edges(inv, g) + (unit(m, d + g),), d + 1, g + 1))
    return Fan(inv, tuple(cones))


def edge_condition_violations(fan: Fan) -> list[str]:
    """Check the sign and height-zero conditions on every edge.

    For an edge ``v`` of a level-``j`` cone: ``xi_j(v) >= 0``; edges shared
    with ``rho_{j-1}`` give the same value under ``xi_{j-1}``; and an edge with
    ``eta(v) = 0`` has ``xi_j(v) = 1`` and is either the extra ray of
    ``sigma_j^+`` or a base unit vector along which ``lambda_{j-1}`` vanishes.
    """
    inv, m, d = fan.inv, fan.inv.m, fan.inv.d
    bad = []
    for cone in fan.cones:
        j = cone.level
        prev = set(rho_edges(inv, j - 1)) if j >= 2 else set()
        for v in cone.edges:
            val = xi(inv, j, v)
            if val < 0:
                bad.append(f"{cone.id}: xi({v}) < 0")
            if v in prev and val != xi(inv, j - 1, v):
                bad.append(f"{cone.id}: xi_{j}({v}) != xi_{j - 1}({v})")
            if eta(v) != 0:
                continue
            if val != 1:
                bad.append(f"{cone.id}: eta({v}) = 0 but xi = {val}")
            extra = cone.id.kind == SIGMA_PLUS and v == unit(m, d + j - 1)
            base = any(v == unit(m, i) and inv.lam(j - 1)[i] == 0 for i in range(d))
            if not (extra or base):
                bad.append(f"{cone.id}: unexpected height-zero edge {v}")
    return bad


# -- lattice points of simplicial cones ---------------------------------------


def _require_simplicial(cone: Cone) -> None:
    if not cone.simplicial:
        raise ValueError(f"{cone.id} is not simplicial: use hat decomposition")


def multiplicity(cone: Cone) -> int:
    """Index of the edge lattice inside the saturated span lattice."""
    _require_simplicial(cone)
    diag, _, _ = smith_decomposition(cone.edges)
    return prod(diag[i][i] for i in range(len(cone.edges)))


def d_theta(cone: Cone) -> list[tuple]:
    """Lattice points sum a_i v_i with every a_i in (0, 1].

    Coset representatives of the edge lattice in the saturated lattice are
    read off a Smith decomposition ``P V Q = D``: the saturated lattice is
    ``{c V : (c P^{-1})_k d_k in Z}``.
    """
    _require_simplicial(cone)
    edges = cone.edges
    r = len(edges)
    diag, p, _ = smith_decomposition(edges)
    divisors = [diag[i][i] for i in range(r)]
    points = []
    for ts in itertools.product(*(range(dk) for dk in divisors)):
        cprime = [Fraction(t, dk) for t, dk in zip(ts, divisors)]
        coeffs = [sum((cprime[k] * p[k][i] for k in range(r)), Fraction(0)) for i in range(r)]
        coeffs = [a - floor(a) or Fraction(1) for a in coeffs]
        points.append(_combine(edges, coeffs))
    return points


def _combine(edges, coeffs) -> tuple:
    m = len(edges[0])
    return to_int_vector(sum((a * v[c] for a, v in zip(coeffs, edges)), Fraction(0)) for c in range(m))


def d_theta_bruteforce(edges: Sequence[Sequence[int]]) -> list[tuple]:
    """Reference enumeration by scanning the bounding box of the parallelepiped."""
    m = len(edges[0])
    lo = [sum(min(0, v[c]) for v in edges) for c in range(m)]
    hi = [sum(max(0, v[c]) for v in edges) for c in range(m)]
    out = []
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        coeffs = solve_in_span(edges, x)
        if coeffs is not None and all(0 < a <= 1 for a in coeffs):
            out.append(tuple(x))
    return out


def in_relative_interior(cone: Cone, k: Sequence) -> bool:
    """Generic membership of a point in the relative interior (simplicial cones)."""
    _require_simplicial(cone)
    coeffs = solve_in_span(cone.edges, k)
    return coeffs is not None and all(a > 0 for a in coeffs)


def in_closed_cone(cone: Cone, k: Sequence) -> bool:
    _require_simplicial(cone)
    coeffs = solve_in_span(cone.edges, k)
    return coeffs is not None and all(a >= 0 for a in coeffs)


# -- decomposition of sigma_j^- -----------------------------------------------


@dataclass(frozen=True)
class HatDecomposition:
    """Images of rho', rho_bar_j and sigma_bar_j^+ in Z^m.

    For every point, 1[int sigma_j^-] = 1[int rho'] - 1[int rho_bar] - 1[int sigma_bar^+].
    """

    rho_prime: Cone
    rho_bar: Cone
    sigma_bar_plus: Cone


def source_lattice(inv: QOInvariants, j: int) -> LatticeBasis:
    """N'_{j-1} = N_{j-1} x Z."""
    return inv.duals[j - 1].product_with_z()


def hat_decomposition(inv: QOInvariants, j: int) -> HatDecomposition:
    if not 1 <= j <= inv.g:
        raise ValueError("level out of range")
    d = inv.d
    lat = source_lattice(inv, j)
    delta = tuple(a - b for a, b in zip(inv.lam(j), inv.lam(j - 1)))

    def image(direction) -> tuple:
        src = primitive_on_ray(direction, lat)
        img = upsilon(inv, j, src[:d], src[d])
        vec = to_int_vector(img)
        if primitive_integer_multiple(vec) != vec:
            raise AssertionError("image of a primitive source vector is not primitive")
        return vec

    up = image(tuple([0] * d) + (1,))
    base = tuple(image(tuple(int(c == i) for c in range(d)) + (0,)) for i in range(d))
    bar = tuple(image(tuple(Fraction(int(c == i)) for c in range(d)) + (delta[i],)) for i in range(d))
    return HatDecomposition(
        rho_prime=Cone(ConeId(HAT_RHO_PRIME, j), base + (up,), d + 1, j),
        rho_bar=Cone(ConeId(HAT_RHO_BAR, j), bar, d, j),
        sigma_bar_plus=Cone(ConeId(HAT_SIGMA_BAR_PLUS, j), bar + (up,), d + 1, j),
    )


def upsilon_image_is_saturated(inv: QOInvariants, j: int) -> bool:
    """Check that the image of N'_{j-1} is all of span(sigma_j^-) cap Z^m."""
    lat = source_lattice(inv, j)
    d = inv.d
    imgs = [upsilon(inv, j, row[:d], row[d]) for row in lat.rows]
    if not all(is_integral(v) for v in imgs):
        return False
    ints = [to_int_vector(v) for v in imgs]
    diag, _, _ = smith_decomposition(ints)
    return rank(ints) == d + 1 and all(diag[i][i] == 1 for i in range(d + 1))


# -- order vectors --------------------------------------------------------------


def classify_vector(inv: QOInvariants, k: Sequence[int]) -> tuple[ConeId, int] | None:
    """Cone whose relative interior contains the order vector ``k``, with its depth."""
    d, g = inv.d, inv.g
    if len(k) != inv.m:
        raise ValueError(f"order vector must have length {inv.m}")
    if any(a <= 0 for a in k):
        raise ValueError("order vectors have strictly positive entries")
    nu = tuple(k[:d])
    K = lambda i: k[d + i - 1]  # noqa: E731
    pair = [Fraction(0)] + [dot(nu, inv.gamma[i]) for i in range(1, g + 1)]

    def prefix_ok(upto: int) -> bool:
        return all(K(i) == pair[i] for i in range(1, upto + 1))

    for j in range(1, g + 1):
        if inv.in_dual(nu, j) and prefix_ok(j) and all(
            K(i) == inv.nprod(j, i - 1) * pair[j] for i in range(j + 1, g + 2)
        ):
            return Rho(j), j
        if not (inv.in_dual(nu, j - 1) and prefix_ok(j - 1)):
            continue
        c = inv.nj(j) * pair[j]
        if K(j) > pair[j] and all(K(i) == inv.nprod(j + 1, i - 1) * c for i in range(j + 1, g + 2)):
            return SigmaPlus(j), j
        if inv.nj(j - 1) * pair[j - 1] < K(j) < pair[j] and all(
            K(i) == inv.nprod(j, i - 1) * K(j) for i in range(j + 1, g + 2)
        ):
            return SigmaMinus(j), j
    if inv.in_dual(nu, g) and prefix_ok(g) and K(g + 1) > inv.nj(g) * pair[g]:
        return SigmaTop(g), g + 1
    return None


def _compositions(d: int, total_max: int) -> Iterator[tuple]:
    """Positive integer vectors of length d with coordinate sum <= total_max."""
    if d == 0:
        yield ()
        return
    for first in range(1, total_max - d + 2):
        for rest in _compositions(d - 1, total_max - first):
            yield (first,) + rest


def enumerate_orders_upto(inv: QOInvariants, n_max: int, xi_bound) -> dict[int, list]:
    """All order vectors with eta <= n_max and xi <= xi_bound, grouped by eta.

    Points are produced from the explicit description of each cone interior;
    the coordinate sum of the base part never exceeds the value of xi.
    """
    d, g = inv.d, inv.g
    out: dict[int, list] = {n: [] for n in range(1, n_max + 1)}

    def emit(k, cid, level):
        n = k[-1]
        if 1 <= n <= n_max and xi(inv, level, k) <= xi_bound:
            out[n].append((k, cid))

    for nu in _compositions(d, int(floor(xi_bound))):
        pair = [Fraction(0)] + [dot(nu, inv.gamma[i]) for i in range(1, g + 1)]
        depth = 0
        while depth < g and inv.in_dual(nu, depth + 1):
            depth += 1
        for j in range(1, g + 1):
            head = list(nu) + [int(pair[i]) for i in range(1, j)]
            if depth >= j:
                tail = [pair[j]] + [inv.nprod(j, i - 1) * pair[j] for i in range(j + 1, g + 2)]
                emit(tuple(head + [int(a) for a in tail]), Rho(j), j)
            if depth < j - 1:
                continue
            c = inv.nj(j) * pair[j]
            tail = [int(inv.nprod(j + 1, i - 1) * c) for i in range(j + 1, g + 2)]
            if tail[-1] <= n_max:
                kj = floor(pair[j]) + 1
                while True:
                    k = tuple(head + [kj] + tail)
                    if xi(inv, j, k) > xi_bound:
                        break
                    emit(k, SigmaPlus(j), j)
                    kj += 1
            lower = inv.nj(j - 1) * pair[j - 1]
            kj = floor(lower) + 1
            while kj < pair[j] and inv.nprod(j, g) * kj <= n_max:
                k = tuple(head + [kj] + [inv.nprod(j, i - 1) * kj for i in range(j + 1, g + 2)])
                emit(k, SigmaMinus(j), j)
                kj += 1
        if depth == g:
            head = list(nu) + [int(pair[i]) for i in range(1, g + 1)]
            for top in range(floor(inv.nj(g) * pair[g]) + 1, n_max + 1):
                k = tuple(head + [top])
                if xi(inv, g + 1, k) > xi_bound:
                    break
                emit(k, SigmaTop(g), g + 1)
    return out


def enumerate_orders(inv: QOInvariants, eta_target: int, xi_bound) -> list:
    return enumerate_orders_upto(inv, eta_target, xi_bound)[eta_target]


def enumerate_orders_bruteforce(inv: QOInvariants, eta_target: int, xi_bound) -> list:
    """Reference scan of a bounding box through :func:`classify_vector`.

    Only suitable for small bounds.  On every cone ``k_{d+j} <= xi + n_{j-1} k_{d+j-1}``
    and the earlier slots are bounded by ``eta``, which gives the box.
    """
    d, g = inv.d, inv.g
    cap = int(floor(xi_bound)) + max(inv.n) * eta_target
    found = []
    for nu in _compositions(d, int(floor(xi_bound))):
        for mid in itertools.product(range(1, cap + 1), repeat=g):
            k = tuple(nu) + mid + (eta_target,)
            hit = classify_vector(inv, k)
            if hit is not None and xi(inv, hit[1], k) <= xi_bound:
                found.append((k, hit[0]))
    return found


def fan_summary(fan: Fan) -> list[dict]:
    """Serializable description of every cone."""
    inv = fan.inv
    rows = []
    for c in fan.cones:
        rows.append(
            {
                "id": str(c.id),
                "edges": [list(v) for v in c.edges],
                "mult": multiplicity(c) if c.simplicial else None,
                "forms": [[xi(inv, c.level, v), eta(v)] for v in c.edges],
            }
        )
    return rows
