"""Chebyshev-Dickson systems: classical families, iterated resultants and the
three routes to a characteristic polynomial on a sublattice."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

from .conv import charpoly as matrix_charpoly
from .ff import FieldElem, make_field, p_adic_valuation
from .fourier import _check_pfree, charpoly_pfree, symbol
from .lattice import KernelSpec, Sublattice, p_complement, product_quotient, pushforward, quotient
from .poly import LaurentPoly, MultiPoly, Poly, laurent_to_fraction, poly_gcd, resultant, subresultant

ROUTES = ("matrix", "product", "resultant")


class ChebError(ValueError):
    pass


# ------------------------------------------------------------ classical families

GF2 = make_field(2, 1)


@lru_cache(maxsize=None)
def chebyshev_T(n: int) -> Poly:
    """T_0 = 0, T_1 = x, T_{k+1} = x T_k + T_{k-1} over GF(2)."""
    if n < 0:
        raise ChebError("n must be nonnegative")
    x = Poly.x(GF2)
    prev, cur = Poly(GF2), x
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, x * cur + prev
    return cur


def chebyshev_T_shifted(n: int) -> Poly:
    """T_n(x + 1)."""
    return chebyshev_T(n).shift(1)


def dickson(n: int, kind: str, alpha: FieldElem) -> Poly:
    """D_n(x, alpha) (kind 'first') or E_n(x, alpha) (kind 'second')."""
    if n < 0:
        raise ChebError("n must be nonnegative")
    F = alpha.field
    x = Poly.x(F)
    if kind == "first":
        prev, cur = Poly.const(F, 2), x
    elif kind == "second":
        prev, cur = Poly.const(F, 1), x
    else:
        raise ChebError(f"kind must be 'first' or 'second', got {kind!r}")
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, x * cur - prev * alpha
    return cur


def lights_out_winnable(m: int, n: int) -> bool:
    """Every pattern on the m x n torus is winnable iff gcd(T_m, T_n(x+1)) = 1."""
    if m < 1 or n < 1:
        raise ChebError("torus sides must be positive")
    return poly_gcd(chebyshev_T(m), chebyshev_T_shifted(n)).deg == 0


# ------------------------------------------------------------ resultants


def iterated_resultant(omega: LaurentPoly, orders: Sequence[int]) -> Poly:
    """res_{y_s}( ... res_{y_1}(y^alpha x - P(y), y_1^{n_1} - 1) ..., y_s^{n_s} - 1).

    Variables are eliminated in increasing n_i; any order gives the same
    polynomial up to sign.  The final step runs over dense polynomials in x.
    """
    if omega.is_zero():
        raise ChebError("iterated resultant of the zero Laurent polynomial")
    orders = tuple(int(n) for n in orders)
    s = omega.rank
    if len(orders) != s:
        raise ChebError(f"{len(orders)} orders for a rank-{s} Laurent polynomial")
    F = omega.field
    P, alpha = laurent_to_fraction(omega)
    nv = s + 1
    terms: dict = {}
    terms[(1,) + tuple(alpha)] = F.one
    for e, c in P.terms.items():
        key = (0,) + e
        terms[key] = terms.get(key, F.zero) - c
    Q = MultiPoly(F, nv, terms)
    elim = sorted(range(s), key=lambda i: (orders[i], i))
    for i in elim[:-1]:
        g = MultiPoly.var(F, nv, i + 1, orders[i]) - 1
        Q = resultant(Q, g, i + 1)
    last = elim[-1] + 1
    coeffs = [c.to_poly(0) for c in Q.as_univariate(last)]
    n = orders[elim[-1]]
    g = [Poly.const(F, -1)] + [Poly(F)] * (n - 1) + [Poly.const(F, 1)]
    return subresultant(coeffs, g)


def charpoly_via_resultant(a: KernelSpec, orders: Sequence[int], basis=None) -> Poly:
    _check_pfree(orders, a.field.p)
    return iterated_resultant(symbol(a, basis), orders).monic()


def charpoly_route(a: KernelSpec, orders: Sequence[int], route: str = "matrix", basis=None) -> Poly:
    """CharPoly of f -> f * a on the product sublattice Lambda_{n, V} by the named route."""
    orders = tuple(int(n) for n in orders)
    if route == "matrix":
        G = product_quotient(orders, basis)
        return matrix_charpoly(pushforward(a, G))
    if route == "product":
        return charpoly_pfree(a, orders, basis)
    if route == "resultant":
        return charpoly_via_resultant(a, orders, basis)
    raise ChebError(f"unknown route {route!r}; expected one of {ROUTES}")


@dataclass(frozen=True)
class ChebSystemEntry:
    sublattice: Sublattice
    poly: Poly
    route: str


def charpoly_on_sublattice(cortege, L: Sublattice) -> Poly:
    """gcd over j of the matrix charpolys of a_j on Lambda / L."""
    if isinstance(cortege, KernelSpec):
        cortege = (cortege,)
    G = quotient(L)
    out = None
    for a in cortege:
        P = matrix_charpoly(pushforward(a, G))
        out = P if out is None else poly_gcd(out, P)
    return out


def cheb_entry(cortege, L: Sublattice) -> ChebSystemEntry:
    return ChebSystemEntry(L, charpoly_on_sublattice(cortege, L), "matrix")


# ------------------------------------------------------------ divisibility


@dataclass
class DivisibilityReport:
    polys: dict[str, Poly]
    checks: dict[str, bool]
    quotients: dict[str, Poly | None] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": self.checks,
            "polys": {k: str(v) for k, v in self.polys.items()},
            "quotients": {k: (None if v is None else str(v)) for k, v in self.quotients.items()},
        }


def _divides(d: Poly, f: Poly) -> tuple[bool, Poly | None]:
    q, r = divmod(f, d)
    return (r.is_zero(), q if r.is_zero() else None)


def divisibility_check(cortege, L1: Sublattice, L2: Sublattice, containment: bool = True) -> DivisibilityReport:
    """Verify CharPoly_{L2} | CharPoly_{L1} (L1 in L2) and the sum/intersection refinements."""
    if containment and not L2.contains_lattice(L1):
        raise ChebError("L1 is not contained in L2")
    lat = {"L1": L1, "L2": L2, "sum": L1 + L2, "meet": L1 & L2}
    polys = {k: charpoly_on_sublattice(cortege, v) for k, v in lat.items()}
    checks: dict[str, bool] = {}
    quotients: dict[str, Poly | None] = {}
    g = poly_gcd(polys["L1"], polys["L2"])
    ok, q = _divides(polys["sum"], g)
    checks["sum | gcd(L1, L2)"], quotients["gcd/sum"] = ok, q
    from .poly import poly_lcm

    l = poly_lcm(polys["L1"], polys["L2"])
    ok, q = _divides(l, polys["meet"])
    checks["lcm(L1, L2) | meet"], quotients["meet/lcm"] = ok, q
    if containment:
        ok, q = _divides(polys["L2"], polys["L1"])
        checks["L2 | L1"], quotients["L1/L2"] = ok, q
    return DivisibilityReport(polys, checks, quotients)


def p_power_reduce(cortege, L: Sublattice, verify: bool = True) -> tuple[Sublattice, int]:
    """(L'', alpha): L'' the p-free overlattice, with CharPoly_L = CharPoly_{L''}^(p^alpha)."""
    if isinstance(cortege, KernelSpec):
        cortege = (cortege,)
    p = cortege[0].field.p
    L2 = p_complement(L, p)
    alpha = p_adic_valuation(L.index // L2.index, p)
    if verify:
        lhs = charpoly_on_sublattice(cortege, L)
        rhs = charpoly_on_sublattice(cortege, L2) ** (p**alpha)
        if lhs != rhs:
            raise AssertionError(f"p-power identity failed on {L}")
    return L2, alpha
