"""Multi-order tables of harmonic torsion points, line periods, the
partnership graph, the suborder function and unit-group orders."""

from __future__ import annotations

import csv
import hashlib
import itertools
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx

from .ff import FieldElem, embed, factor_power_minus_one, make_field, multiplicative_order
from .fourier import harmonic_points, multi_order, symbol, torus
from .lattice import KernelSpec
from .poly import Poly, poly_gcd, squarefree_decomposition

__all__ = [
    "multi_order",
    "CountTable",
    "table_build",
    "cell_counts",
    "mobius",
    "line_period",
    "line_max",
    "line_values",
    "verify_line_period",
    "cortege_hash",
    "LevelSetReport",
    "CountError",
    "PartnershipGraph",
    "partnership_graph",
    "suborder",
    "level_set_check",
    "unit_group_order",
    "unit_count_bruteforce",
]


class CountError(ValueError):
    pass


def _cortege(c) -> tuple[KernelSpec, ...]:
    if isinstance(c, KernelSpec):
        return (c,)
    return tuple(c)


def cortege_hash(cortege: Sequence[KernelSpec]) -> str:
    blob = json.dumps([a.to_json() for a in cortege], sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


# ------------------------------------------------------------ tables


def mobius(n: int) -> int:
    if n == 1:
        return 1
    out = 1
    m = n
    q = 2
    while q * q <= m:
        if m % q == 0:
            m //= q
            if m % q == 0:
                return 0
            out = -out
        q += 1
    if m > 1:
        out = -out
    return out


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def cell_counts(cortege, orders: Sequence[int], basis=None) -> tuple[int, int]:
    """(d, s): harmonic points in mu_n, and those of exact multi-order n."""
    pts = harmonic_points(_cortege(cortege), tuple(orders), basis, max_points=None)
    orders = tuple(orders)
    s = sum(1 for pt in pts.points if pt.multi_order == orders)
    return len(pts), s


def _cell_job(args) -> tuple[tuple[int, ...], int, int]:
    kernels_json, orders, basis = args
    cortege = tuple(KernelSpec.from_json(k) for k in kernels_json)
    d, s = cell_counts(cortege, orders, basis)
    return tuple(orders), d, s


@dataclass
class CountTable:
    cortege: tuple[KernelSpec, ...]
    bounds: tuple[int, ...]
    entries: dict[tuple[int, ...], tuple[int, int]] = dc_field(default_factory=dict)
    excluded: list[tuple[int, ...]] = dc_field(default_factory=list)

    @property
    def p(self) -> int:
        return self.cortege[0].field.p

    @property
    def rank(self) -> int:
        return len(self.bounds)

    def d(self, n: Sequence[int]) -> int:
        return self.entries[tuple(n)][0]

    def s(self, n: Sequence[int]) -> int:
        return self.entries[tuple(n)][1]

    def s_mobius(self, n: Sequence[int]) -> int:
        """s by Moebius inversion of the d-values over componentwise divisors."""
        n = tuple(n)
        total = 0
        for dv in itertools.product(*[_divisors(x) for x in n]):
            mu = math.prod(mobius(x // y) for x, y in zip(n, dv))
            if mu:
                total += mu * self.d(dv)
        return total

    def divisor_sum(self, n: Sequence[int]) -> int:
        n = tuple(n)
        return sum(self.s(dv) for dv in itertools.product(*[_divisors(x) for x in n]))

    def check(self) -> list[str]:
        """Self-consistency problems (empty when all identities hold)."""
        bad = []
        for n in self.entries:
            if self.divisor_sum(n) != self.d(n):
                bad.append(f"divisor sum fails at {n}")
            if self.s_mobius(n) != self.s(n):
                bad.append(f"Moebius inversion disagrees with bucketing at {n}")
        return bad

    def sidecar(self) -> dict:
        F = self.cortege[0].field
        return {
            "cortege_hash": cortege_hash(self.cortege),
            "field": F.to_json(),
            "bounds": list(self.bounds),
            "kernels": [a.to_json() for a in self.cortege],
        }

    def write_csv(self, path: str) -> None:
        cols = [f"n{i + 1}" for i in range(self.rank)] + ["d", "s"]
        tmp = path + ".tmp"
        with open(tmp, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(cols)
            for n in sorted(self.entries):
                d, s = self.entries[n]
                w.writerow(list(n) + [d, s])
        os.replace(tmp, path)
        with open(path + ".json", "w") as fh:
            json.dump(self.sidecar(), fh, indent=1, sort_keys=True)
            fh.write("\n")

    @staticmethod
    def read_csv(path: str) -> dict[tuple[int, ...], tuple[int, int]]:
        out = {}
        with open(path, newline="") as fh:
            r = csv.reader(fh)
            header = next(r)
            k = len(header) - 2
            for row in r:
                vals = [int(x) for x in row]
                out[tuple(vals[:k])] = (vals[k], vals[k + 1])
        return out

    def to_json(self) -> dict:
        return {
            **self.sidecar(),
            "entries": [{"orders": list(n), "d": d, "s": s} for n, (d, s) in sorted(self.entries.items())],
            "excluded": [list(n) for n in self.excluded],
        }


def table_build(
    cortege,
    bounds: Sequence[int],
    basis=None,
    workers: int = 1,
    out: str | None = None,
    resume: bool = True,
    progress=None,
) -> CountTable:
    """Fill d and s for every n <= bounds with all n_i prime to p."""
    cortege = _cortege(cortege)
    bounds = tuple(int(b) for b in bounds)
    if any(a.rank != len(bounds) for a in cortege):
        raise CountError("bounds length does not match the kernel rank")
    p = cortege[0].field.p
    table = CountTable(cortege, bounds)
    cells = []
    for n in itertools.product(*[range(1, b + 1) for b in bounds]):
        if any(x % p == 0 for x in n):
            table.excluded.append(n)
        else:
            cells.append(n)
    if out and resume and os.path.exists(out) and os.path.exists(out + ".json"):
        with open(out + ".json") as fh:
            side = json.load(fh)
        if side.get("cortege_hash") == cortege_hash(cortege):
            for n, v in CountTable.read_csv(out).items():
                if n in set(cells):
                    table.entries[n] = v
    todo = [n for n in cells if n not in table.entries]
    kjson = [a.to_json() for a in cortege]
    bt = None if basis is None else [list(v) for v in basis]
    jobs = [(kjson, n, bt) for n in todo]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_cell_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = []
        for i, (k, n, b) in enumerate(jobs):
            d, s = cell_counts(cortege, n, basis)
            results.append((n, d, s))
            if progress:
                progress(i + 1, len(jobs))
    for n, d, s in results:
        table.entries[tuple(n)] = (d, s)
    table.entries = dict(sorted(table.entries.items()))
    if out:
        table.write_csv(out)
    return table


# ------------------------------------------------------------ line periods


def _restricted_polys(cortege, n_prime: Sequence[int]):
    """For each xi' in mu_{n'}: the gcd over j of y^alpha sigma_j(xi', y), over the torus field."""
    cortege = _cortege(cortege)
    base = cortege[0].field
    n_prime = tuple(n_prime)
    s = cortege[0].rank
    if len(n_prime) != s - 1:
        raise CountError(f"need {s - 1} leading orders, got {len(n_prime)}")
    T = torus(base.p, n_prime, base) if n_prime else None
    W = T.field if T else base
    points = list(T.group.elements()) if T else [()]
    out = []
    for k in points:
        xi = T.point(k) if T else ()
        g = None
        for a in cortege:
            L = symbol(a)
            coeffs: dict[int, FieldElem] = {}
            for e, c in L.terms.items():
                v = embed(c, W)
                for x, ei in zip(xi, e[:-1]):
                    v = v * (x**ei if ei >= 0 else x.inverse() ** (-ei))
                coeffs[e[-1]] = coeffs.get(e[-1], W.zero) + v
            coeffs = {j: c for j, c in coeffs.items() if not c.is_zero()}
            if not coeffs:
                P = Poly(W)
            else:
                lo = min(coeffs)
                arr = [W.zero] * (max(coeffs) - lo + 1)
                for j, c in coeffs.items():
                    arr[j - lo] = c
                P = Poly(W, arr)
            if g is None:
                g = P
            elif P.is_zero():
                pass
            elif g.is_zero():
                g = P
            else:
                g = poly_gcd(g, P)
        out.append((k, g))
    return W, out


def _radical(P: Poly) -> Poly:
    rad = Poly.const(P.field, 1)
    for g in squarefree_decomposition(P).values():
        rad = rad * g
    return rad


def _order_of_x(rad: Poly, max_bits) -> int:
    """Multiplicative order of x modulo a squarefree rad with rad(0) != 0."""
    F = rad.field
    x = Poly.x(F)
    one = Poly.const(F, 1)
    if rad.deg == 0:
        return 1
    # smallest e with rad | x^(Q^e) - x: lcm of the irreducible factor degrees
    e = 0
    cur = x % rad
    while True:
        e += 1
        cur = cur.powmod(F.order, rad)
        if cur == x % rad:
            break
    k = F.order**e - 1
    for q in factor_power_minus_one(F.p, F.r * e, max_bits):
        while k % q == 0 and x.powmod(k // q, rad) == one:
            k //= q
    return k


def line_period(cortege, n_prime: Sequence[int], max_bits: int | None | str = "bound") -> int:
    """l(n'): the minimal period of m -> d(n', m), the lcm of ord(eta) over partial solutions."""
    W, polys = _restricted_polys(cortege, n_prime)
    l = 1
    for k, g in polys:
        if g.is_zero():
            raise CountError(f"symbol vanishes identically on the line through {k}: not periodic")
        g = _strip_x(g)
        if g.deg < 1:
            continue
        l = math.lcm(l, _order_of_x(_radical(g), max_bits))
    return l


def _strip_x(g: Poly) -> Poly:
    while g.deg >= 1 and g.coeff(0).is_zero():
        g = Poly(g.field, g.coeffs[1:])
    return g


def line_max(cortege, n_prime: Sequence[int]) -> int:
    """max over m of d(n', m): the number of partial solutions (xi', eta)."""
    W, polys = _restricted_polys(cortege, n_prime)
    total = 0
    for k, g in polys:
        if g.is_zero():
            raise CountError(f"symbol vanishes identically on the line through {k}")
        g = _strip_x(g)
        if g.deg >= 1:
            total += _radical(g).deg
    return total


def line_values(cortege, n_prime: Sequence[int], ms: Iterable[int]) -> dict[int, int]:
    return {m: cell_counts(cortege, tuple(n_prime) + (m,))[0] for m in ms}


def verify_line_period(cortege, n_prime: Sequence[int], l: int, window: int = 40) -> bool:
    """d(n', m) = d(n', m + j l) for p-coprime m <= window, j the least shift keeping p-coprimality."""
    p = _cortege(cortege)[0].field.p
    for m in range(1, window + 1):
        if m % p == 0:
            continue
        j = 1
        while (m + j * l) % p == 0:
            j += 1
        a = cell_counts(cortege, tuple(n_prime) + (m,))[0]
        b = cell_counts(cortege, tuple(n_prime) + (m + j * l,))[0]
        if a != b:
            return False
    return True


# ------------------------------------------------------------ partnership graph


@dataclass
class PartnershipGraph:
    bound: int
    vertices: list[int]
    edges: dict[tuple[int, int], int]

    @property
    def graph(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self.vertices)
        for (m, n), lab in self.edges.items():
            G.add_edge(m, n, label=lab)
        return G

    def components(self) -> list[list[int]]:
        comps = [sorted(c) for c in nx.connected_components(self.graph)]
        return sorted(comps)

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "vertices": self.vertices,
            "edges": [{"m": m, "n": n, "s": s} for (m, n), s in sorted(self.edges.items())],
            "components": self.components(),
        }


def _graph_cell(args):
    kjson, m, n = args
    a = KernelSpec.from_json(kjson)
    return (m, n), cell_counts(a, (m, n))[1]


def partnership_graph(a: KernelSpec, bound: int, workers: int = 1) -> PartnershipGraph:
    if a.rank != 2:
        raise CountError("the partnership graph is defined for rank-2 kernels")
    if not symbol(a).is_symmetric():
        raise CountError("the symbol is not invariant under swapping the coordinates")
    p = a.field.p
    verts = [n for n in range(1, bound + 1) if n % p]
    pairs = [(m, n) for i, m in enumerate(verts) for n in verts[i:]]
    jobs = [(a.to_json(), m, n) for m, n in pairs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_graph_cell, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_graph_cell(j) for j in jobs]
    edges = {mn: s for mn, s in sorted(results) if s}
    return PartnershipGraph(bound, verts, edges)


def suborder(n: int, base: int = 2) -> int:
    """min j >= 1 with base^j = +-1 mod n."""
    if n < 1 or math.gcd(n, base) != 1:
        raise CountError(f"suborder needs n >= 1 coprime to {base}, got {n}")
    if n <= 2:
        return 1
    x = 1
    for j in range(1, n + 1):
        x = x * base % n
        if x == 1 or x == n - 1:
            return j
    raise AssertionError("unreachable")


@dataclass
class LevelSetReport:
    components: list[list[int]]
    levels: list[list[int]]

    @property
    def ok(self) -> bool:
        return all(len(set(lv)) == 1 for lv in self.levels)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "components": [
                {"vertices": c, "suborders": sorted(set(lv))} for c, lv in zip(self.components, self.levels)
            ],
        }


def level_set_check(graph: PartnershipGraph, base: int = 2) -> LevelSetReport:
    comps = graph.components()
    return LevelSetReport(comps, [[suborder(v, base) for v in c] for c in comps])


# ------------------------------------------------------------ unit groups


def unit_group_order(n: int) -> int:
    """|(GF(2)[x]/(x^n - 1))^x| = 2^n prod_{d | n} (1 - 2^-f(d))^g(d), f = ord_d 2, g = phi/f."""
    if n < 1 or n % 2 == 0:
        raise CountError(f"n must be odd and positive, got {n}")
    nu = Fraction(2**n)
    for d in _divisors(n):
        f = multiplicative_order(2, d)
        phi = sum(1 for k in range(1, d + 1) if math.gcd(k, d) == 1)
        g = phi // f
        nu *= (1 - Fraction(1, 2**f)) ** g
    if nu.denominator != 1:
        raise AssertionError("unit group order is not an integer")
    return int(nu)


def unit_count_bruteforce(n: int) -> int:
    """Count units of GF(2)[x]/(x^n - 1) by testing every residue."""
    F = make_field(2, 1)
    mod = Poly(F, [1] + [0] * (n - 1) + [1])
    count = 0
    for bits in range(1, 2**n):
        f = Poly(F, [(bits >> i) & 1 for i in range(n)])
        if poly_gcd(f, mod).deg == 0:
            count += 1
    return count
