"""Fourier analysis on finite abelian groups of order prime to p.

Characters of G = Z/n_1 + ... + Z/n_k are indexed by exponent tuples k,

    chi_k(g) = prod_i zeta_{n_i}^(k_i g_i),   zeta_{n_i} = zeta_N^(N / n_i),

with N the exponent of G and zeta_N fixed by :func:`convlat.ff.root_of_unity`.
The character chi_k is the torsion point (zeta_{n_1}^k_1, ..., zeta_{n_k}^k_k).
Under f -> f * a it is an eigenvector with eigenvalue sigma_a(chi_k(e_1), ...),
which equals a_hat(chi_{-k}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache, reduce
from typing import Iterator, Sequence

import numpy as np

from .ff import (
    Field,
    FieldElem,
    FieldError,
    common_field,
    embed,
    get_embedding,
    make_field,
    multiplicative_order,
    root_of_unity,
)
from .lattice import AbelianGroup, GroupFunction, KernelSpec, Sublattice, inverse_unimodular, pushforward
from .poly import LaurentPoly, Poly

DEFAULT_MAX_POINTS = 10**6


class FourierError(ValueError):
    """Fourier analysis requested where the group order is divisible by p."""


def _check_pfree(orders: Sequence[int], p: int) -> None:
    bad = [n for n in orders if n % p == 0]
    if bad:
        raise FourierError(f"orders {tuple(orders)} not coprime to p={p} (offending: {bad})")
    if any(n < 1 for n in orders):
        raise FourierError(f"orders must be positive, got {tuple(orders)}")


# ------------------------------------------------------------ torus engine


class Torus:
    """mu_n inside an explicit field W, with a power table of zeta_N."""

    def __init__(self, p: int, orders: Sequence[int], base: Field | None = None):
        orders = tuple(int(n) for n in orders)
        _check_pfree(orders, p)
        base = base or make_field(p, 1)
        if base.p != p:
            raise FieldError(f"base field {base!r} has characteristic {base.p}, not {p}")
        self.p = p
        self.orders = orders
        self.base = base
        self.N = reduce(math.lcm, orders, 1)
        m = multiplicative_order(p, self.N)
        self.field = make_field(p, math.lcm(base.r, m))
        Fz, z = root_of_unity(p, self.N)
        self.zeta = embed(z, self.field)
        self.scale = np.array([self.N // n for n in orders], dtype=np.int64)

    @cached_property
    def group(self) -> AbelianGroup:
        return AbelianGroup.torus(self.orders)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def powers(self) -> np.ndarray:
        """(N, r) table of zeta_N^j."""
        W = self.field
        out = np.zeros((self.N, W.r), np.int64)
        x = W.one
        for j in range(self.N):
            out[j] = x.coeffs
            x = x * self.zeta
        return out

    def zeta_n(self, i: int) -> FieldElem:
        return self.zeta ** int(self.scale[i])

    def point(self, exponents: Sequence[int]) -> tuple[FieldElem, ...]:
        return tuple(self.zeta ** (int(k) * int(c) % self.N) for k, c in zip(exponents, self.scale))

    def exponent_chunks(self, chunk: int = 1 << 15) -> Iterator[tuple[int, np.ndarray]]:
        """Yield (start, (m, s) exponent rows) in row-major order."""
        total = self.size
        s = len(self.orders)
        radix = np.ones(s, dtype=np.int64)
        for i in range(s - 2, -1, -1):
            radix[i] = radix[i + 1] * self.orders[i + 1]
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            ks = (idx[:, None] // radix[None, :]) % np.array(self.orders, dtype=np.int64)[None, :]
            yield start, ks

    def _coeff_arr(self, c: FieldElem) -> tuple[int | None, np.ndarray]:
        cw = embed(c, self.field)
        if all(v == 0 for v in cw.coeffs[1:]):
            return cw.coeffs[0], np.array(cw.coeffs, np.int64)
        return None, np.array(cw.coeffs, np.int64)

    def eval_laurent(self, L: LaurentPoly, ks: np.ndarray) -> np.ndarray:
        """Values L(zeta^k) for exponent rows ks, as an (m, r) array over self.field."""
        if L.rank != len(self.orders):
            raise FourierError(f"rank {L.rank} symbol on a rank-{len(self.orders)} torus")
        W = self.field
        out = np.zeros((ks.shape[0], W.r), np.int64)
        pw = self.powers
        scaled = ks * self.scale[None, :]
        for e, c in L.terms.items():
            idx = (scaled @ np.array(e, dtype=np.int64)) % self.N
            scalar, carr = self._coeff_arr(c)
            if scalar is not None:
                out += scalar * pw[idx]
            else:
                out += W.arr_mul(pw[idx], carr[None, :])
            out %= W.p
        return out


@lru_cache(maxsize=256)
def torus(p: int, orders: tuple[int, ...], base: Field | None = None) -> Torus:
    return Torus(p, orders, base)


# ------------------------------------------------------------ points


@dataclass(frozen=True, order=True)
class TorsionPoint:
    """xi = (zeta_{n_1}^k_1, ..., zeta_{n_s}^k_s)."""

    orders: tuple[int, ...]
    exponents: tuple[int, ...]
    p: int = dc_field(compare=False)

    def coords(self, base: Field | None = None) -> tuple[FieldElem, ...]:
        return torus(self.p, self.orders, base).point(self.exponents)

    @property
    def multi_order(self) -> tuple[int, ...]:
        return tuple(n // math.gcd(k, n) for k, n in zip(self.exponents, self.orders))

    def power(self, q: int) -> TorsionPoint:
        return TorsionPoint(self.orders, tuple(k * q % n for k, n in zip(self.exponents, self.orders)), self.p)

    def inverse(self) -> TorsionPoint:
        return TorsionPoint(self.orders, tuple(-k % n for k, n in zip(self.exponents, self.orders)), self.p)

    def to_json(self) -> dict:
        return {"orders": list(self.orders), "exponents": list(self.exponents)}


def multi_order(xi: TorsionPoint | Sequence[FieldElem]) -> tuple[int, ...]:
    if isinstance(xi, TorsionPoint):
        return xi.multi_order
    from .ff import element_order

    return tuple(element_order(x) for x in xi)


@dataclass(frozen=True)
class SymbolicVarietySlice:
    cortege: tuple[KernelSpec, ...]
    orders: tuple[int, ...]
    points: tuple[TorsionPoint, ...]
    basis: tuple[tuple[int, ...], ...] | None = None

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def exponent_set(self) -> set[tuple[int, ...]]:
        return {pt.exponents for pt in self.points}

    def to_json(self) -> dict:
        return {"orders": list(self.orders), "count": len(self.points), "points": [list(pt.exponents) for pt in self.points]}


# ------------------------------------------------------------ symbols


def _basis_coords(basis: Sequence[Sequence[int]] | None, s: int):
    if basis is None:
        return None
    B = [list(r) for r in zip(*basis)]
    return inverse_unimodular(B)


def symbol(a: KernelSpec, basis: Sequence[Sequence[int]] | None = None) -> LaurentPoly:
    """sigma_{a,V} = sum a(v) x^(-alpha(v)), alpha(v) the coordinates of v in V."""
    Bi = _basis_coords(basis, a.rank)
    terms: dict = {}
    for v, c in a.terms.items():
        alpha = v if Bi is None else tuple(sum(x * y for x, y in zip(row, v)) for row in Bi)
        e = tuple(-x for x in alpha)
        terms[e] = terms.get(e, a.field.zero) + c
    return LaurentPoly(a.field, a.rank, terms)


def _cortege(cortege) -> tuple[KernelSpec, ...]:
    if isinstance(cortege, KernelSpec):
        return (cortege,)
    out = tuple(cortege)
    if not out:
        raise FourierError("empty cortege")
    return out


def _common_base(cortege: Sequence[KernelSpec]) -> Field:
    return common_field(*(a.field for a in cortege))


def hat_via_symbol(a: KernelSpec, orders: Sequence[int], basis=None) -> GroupFunction:
    """a_hat on G-dual, indexed by k, via a_hat(chi_k) = sigma(zeta^(-k))."""
    T = torus(a.field.p, tuple(orders), a.field)
    L = symbol(a, basis)
    G = T.group
    ks = (-G.coords) % np.array(T.orders, dtype=np.int64)
    return GroupFunction(AbelianGroup(G.orders), T.field, T.eval_laurent(L, ks))


def symbol_values(a: KernelSpec, orders: Sequence[int], basis=None) -> tuple[Torus, np.ndarray]:
    """(torus, values sigma(zeta^k) for every k in row-major order)."""
    T = torus(a.field.p, tuple(orders), a.field)
    L = symbol(a, basis)
    return T, T.eval_laurent(L, T.group.coords)


def harmonic_points(
    cortege, orders: Sequence[int], basis=None, max_points: int | None = DEFAULT_MAX_POINTS
) -> SymbolicVarietySlice:
    """All xi in mu_n with sigma_{a_j}(xi) = 0 for every j, by exhaustive evaluation."""
    cortege = _cortege(cortege)
    orders = tuple(int(n) for n in orders)
    base = _common_base(cortege)
    if any(a.rank != len(orders) for a in cortege):
        raise FourierError("kernel rank does not match the number of orders")
    T = torus(base.p, orders, base)
    if max_points is not None and T.size > max_points:
        raise FourierError(f"torus of size {T.size} exceeds max_points={max_points}")
    symbols = [symbol(a, basis) for a in cortege]
    found: list[TorsionPoint] = []
    for _, ks in T.exponent_chunks():
        mask = np.ones(ks.shape[0], dtype=bool)
        for L in symbols:
            vals = T.eval_laurent(L, ks[mask])
            sub = ~np.any(vals, axis=1)
            idx = np.flatnonzero(mask)
            mask[idx[~sub]] = False
            if not mask.any():
                break
        for row in ks[mask]:
            found.append(TorsionPoint(orders, tuple(int(x) for x in row), base.p))
    bt = None if basis is None else tuple(tuple(v) for v in basis)
    return SymbolicVarietySlice(cortege, orders, tuple(found), bt)


def _descend(P: Poly, target: Field) -> Poly:
    if P.field == target:
        return P
    emb = get_embedding(target, P.field)
    return Poly(target, emb.preimage_arr(P.array()))


def product_of_linear(values: np.ndarray, W: Field) -> Poly:
    """prod (x - v) over the rows of values, grouping repeated roots."""
    counts: dict[bytes, tuple[np.ndarray, int]] = {}
    for row in values:
        key = row.tobytes()
        if key in counts:
            counts[key] = (counts[key][0], counts[key][1] + 1)
        else:
            counts[key] = (row, 1)
    result = Poly.const(W, 1)
    for row, k in counts.values():
        v = FieldElem(W, tuple(int(x) for x in row))
        result = result * (Poly.linear_factor(v) ** k)
    return result


def charpoly_pfree(a: KernelSpec, orders: Sequence[int], basis=None) -> Poly:
    """prod over xi in mu_n of (x - sigma_a(xi)), descended to a's field."""
    T, vals = symbol_values(a, orders, basis)
    P = product_of_linear(vals, T.field)
    try:
        return _descend(P, a.field)
    except FieldError as exc:
        raise AssertionError(f"charpoly does not descend to {a.field!r}: {exc}") from exc


# ------------------------------------------------------------ DFT


def _group_torus(G: AbelianGroup, base: Field) -> Torus:
    return torus(base.p, G.orders, base)


def _exponent_matrix(G: AbelianGroup, T: Torus) -> np.ndarray:
    """E[k, g] = sum_i k_i g_i N/n_i mod N."""
    C = G.coords
    return ((C * T.scale[None, :]) @ C.T) % T.N


def dft(f: GroupFunction, field: Field | None = None) -> GroupFunction:
    """f_hat(chi_k) = sum_g f(g) chi_k(g); the result lives over the torus field."""
    G = f.group
    _check_pfree(G.orders, f.field.p)
    T = _group_torus(G, field or f.field)
    W = T.field
    vals = f.embed(W).values
    E = _exponent_matrix(G, T)
    out = np.zeros((G.order, W.r), np.int64)
    pw = T.powers
    for gi in np.flatnonzero(np.any(vals, axis=1)):
        out = (out + W.arr_mul(pw[E[:, gi]], vals[gi][None, :])) % W.p
    return GroupFunction(AbelianGroup(G.orders), W, out)


def idft(fh: GroupFunction, target: Field | None = None, group: AbelianGroup | None = None) -> GroupFunction:
    """f(g) = (1/|G|) sum_k f_hat(k) chi_k(-g); optionally descended to ``target``."""
    G = group or AbelianGroup.torus(fh.group.orders)
    W = fh.field
    _check_pfree(G.orders, W.p)
    T = _group_torus(G, W)
    if T.field != W:
        fh = fh.embed(T.field)
        W = T.field
    E = _exponent_matrix(G, T)
    pw = T.powers
    out = np.zeros((G.order, W.r), np.int64)
    for ki in np.flatnonzero(np.any(fh.values, axis=1)):
        out = (out + W.arr_mul(pw[(-E[ki, :]) % T.N], fh.values[ki][None, :])) % W.p
    inv = W(G.order % W.p).inverse()
    res = GroupFunction(G, W, W.arr_scale(out, inv))
    if target is not None and target != W:
        emb = get_embedding(target, W)
        return GroupFunction(G, target, emb.preimage_arr(res.values))
    return res


def character(G: AbelianGroup, k: Sequence[int], base: Field) -> GroupFunction:
    """chi_k as a function on G over the torus field of ``base``."""
    T = _group_torus(G, base)
    E = (G.coords * T.scale[None, :]) @ np.array(k, dtype=np.int64) % T.N
    return GroupFunction(G, T.field, T.powers[E])


def form1(f1: GroupFunction, f2: GroupFunction) -> FieldElem:
    """<f1, f2>_1 = (1/|G|) sum_g f1(g) f2(-g)."""
    F = f1.field
    s = F.arr_mul(f1.values, f2.values[f1.group.neg_perm]).sum(axis=0) % F.p
    return FieldElem(F, tuple(int(x) for x in s)) * F(f1.group.order % F.p).inverse()


def form2(h1: GroupFunction, h2: GroupFunction) -> FieldElem:
    """<h1, h2>_2 = (1/|G|^2) sum_k h1(k) h2(k)."""
    F = h1.field
    s = F.arr_mul(h1.values, h2.values).sum(axis=0) % F.p
    n = F(h1.group.order % F.p)
    return FieldElem(F, tuple(int(x) for x in s)) * (n * n).inverse()


def standard_form(f1: GroupFunction, f2: GroupFunction) -> FieldElem:
    """<f1, f2> = sum_g f1(g) f2(g)."""
    F = f1.field
    s = F.arr_mul(f1.values, f2.values).sum(axis=0) % F.p
    return FieldElem(F, tuple(int(x) for x in s))


# ------------------------------------------------------------ orbits and traces


def dq_orbits(slice_: SymbolicVarietySlice, q: int) -> list[list[TorsionPoint]]:
    """Orbits of xi -> xi^q on the slice, each listed from its least exponent tuple."""
    from .ff import frobenius

    for a in slice_.cortege:
        if any(frobenius(c, q) != c for c in a.terms.values()):
            raise FourierError(f"kernel values are not in GF({q})")
    pts = {pt.exponents: pt for pt in slice_.points}
    seen: set = set()
    orbits = []
    for e in sorted(pts):
        if e in seen:
            continue
        orbit = []
        cur = pts[e]
        while cur.exponents not in seen:
            if cur.exponents not in pts:
                raise FourierError(
                    f"xi^{q} = {cur.exponents} left the slice: kernel values are not in GF({q})"
                )
            seen.add(cur.exponents)
            orbit.append(cur)
            cur = cur.power(q)
        if cur.exponents != e:
            raise AssertionError("Frobenius orbit did not close")
        orbits.append(orbit)
    return orbits


def _to_group_functions(cortege, G: AbelianGroup | None, orders: Sequence[int] | None):
    if isinstance(cortege, (KernelSpec, GroupFunction)):
        cortege = (cortege,)
    cortege = tuple(cortege)
    if all(isinstance(a, GroupFunction) for a in cortege):
        return cortege[0].group, cortege
    if G is None:
        G = AbelianGroup.torus(orders)
    return G, tuple(pushforward(a, G) for a in cortege)


def eigen_table(funcs: Sequence[GroupFunction]) -> tuple[Torus, np.ndarray]:
    """lambda_j(k) = eigenvalue of f -> f * a_j on chi_k; shape (t, |G|, r)."""
    G = funcs[0].group
    base = common_field(*(f.field for f in funcs))
    T = _group_torus(G, base)
    W = T.field
    E = _exponent_matrix(G, T)
    out = np.zeros((len(funcs), G.order, W.r), np.int64)
    pw = T.powers
    for j, a in enumerate(funcs):
        vals = a.embed(W).values
        for gi in np.flatnonzero(np.any(vals, axis=1)):
            out[j] = (out[j] + W.arr_mul(pw[(-E[:, gi]) % T.N], vals[gi][None, :])) % W.p
    return T, out


def harmonic_exponents(funcs: Sequence[GroupFunction]) -> tuple[Torus, list[tuple[int, ...]]]:
    """Exponent tuples k with chi_k in the common kernel of all f -> f * a_j."""
    T, lam = eigen_table(funcs)
    zero = np.all(~np.any(lam, axis=2), axis=0)
    G = funcs[0].group
    return T, [G.element(i) for i in np.flatnonzero(zero)]


def trace_of_character(G: AbelianGroup, k: Sequence[int], q: int, base: Field) -> GroupFunction:
    """Tr(chi_k) = sum over the D_q-orbit of chi_k, as a function over ``base``."""
    T = _group_torus(G, base)
    W = T.field
    orders = np.array(G.orders, dtype=np.int64)
    k0 = np.array(k, dtype=np.int64) % orders
    cur = k0.copy()
    total = np.zeros((G.order, W.r), np.int64)
    while True:
        E = (G.coords * T.scale[None, :]) @ cur % T.N
        total = (total + T.powers[E]) % W.p
        cur = (cur * q) % orders
        if np.array_equal(cur, k0):
            break
    if base == W:
        return GroupFunction(G, W, total)
    emb = get_embedding(base, W)
    return GroupFunction(G, base, emb.preimage_arr(total))


def trace_kernel_basis(cortege, G: AbelianGroup | None = None, orders: Sequence[int] | None = None) -> list[GroupFunction]:
    """Basis of the common kernel spanned by shifts of traces of harmonic characters."""
    from .linalg import rref

    G, funcs = _to_group_functions(cortege, G, orders)
    base = common_field(*(f.field for f in funcs))
    _check_pfree(G.orders, base.p)
    q = base.order
    T, ks = harmonic_exponents(funcs)
    orders_arr = np.array(G.orders, dtype=np.int64)
    seen: set = set()
    basis_rows: list[np.ndarray] = []
    for k in ks:
        if k in seen:
            continue
        orbit = []
        cur = np.array(k, dtype=np.int64)
        while tuple(int(x) for x in cur) not in seen:
            seen.add(tuple(int(x) for x in cur))
            orbit.append(cur)
            cur = (cur * q) % orders_arr
        h = trace_of_character(G, k, q, base)
        shifts = np.stack([h.values[G.shift_perm(g)] for g in G.coords])
        R, piv = rref(base, shifts)
        if len(piv) != len(orbit):
            raise AssertionError(f"shifts of a trace span {len(piv)} dims, orbit has {len(orbit)}")
        basis_rows.extend(R[: len(piv)])
    return [GroupFunction(G, base, row) for row in basis_rows]


def reconstruct_character(G: AbelianGroup, k: Sequence[int], q: int, base: Field) -> GroupFunction:
    """(1/|G|) sum_g chi(-g) tau_g(Tr chi), which returns chi itself."""
    T = _group_torus(G, base)
    W = T.field
    h = trace_of_character(G, k, q, base).embed(W)
    chi = character(G, k, base)
    acc = np.zeros((G.order, W.r), np.int64)
    neg = chi.values[G.neg_perm]
    for gi, g in enumerate(G.coords):
        acc = (acc + W.arr_mul(h.values[G.shift_perm(g)], neg[gi][None, :])) % W.p
    return GroupFunction(G, W, W.arr_scale(acc, W(G.order % W.p).inverse()))


# ------------------------------------------------------------ characters on lattices


@dataclass(frozen=True)
class VectorCharacter:
    """theta(v) = zeta^<v, v0> on Z^s."""

    zeta: FieldElem
    v0: tuple[int, ...]
    order: int

    def __call__(self, v: Sequence[int]) -> FieldElem:
        return self.zeta ** (sum(a * b for a, b in zip(v, self.v0)) % self.order)

    @property
    def point(self) -> tuple[FieldElem, ...]:
        return tuple(self.zeta ** (x % self.order) for x in self.v0)

    def is_harmonic(self, a: KernelSpec) -> bool:
        from .poly import laurent_eval

        return laurent_eval(symbol(a), self.point).is_zero()

    def period_index(self) -> int:
        return self.order

    def in_period_lattice(self, v: Sequence[int]) -> bool:
        return sum(a * b for a, b in zip(v, self.v0)) % self.order == 0


def character_from_vector(zeta: FieldElem, v0: Sequence[int]) -> VectorCharacter:
    from .ff import element_order

    v0 = tuple(int(x) for x in v0)
    if not any(v0) or reduce(math.gcd, v0, 0) != 1:
        raise FourierError(f"{v0} is not a primitive vector")
    if zeta.is_zero():
        raise FourierError("zeta must be nonzero")
    m = element_order(zeta)
    if m % zeta.field.p == 0:
        raise FourierError("order divisible by p")
    return VectorCharacter(zeta, v0, m)


# ------------------------------------------------------------ periods


def period_subgroup(f: GroupFunction) -> tuple[int, ...]:
    """Indices of g with tau_g f = f, via the support of f_hat."""
    G = f.group
    _check_pfree(G.orders, f.field.p)
    fh = dft(f)
    T = _group_torus(G, f.field)
    E = _exponent_matrix(G, T)
    mask = np.ones(G.order, dtype=bool)
    for ki in np.flatnonzero(np.any(fh.values, axis=1)):
        mask &= E[ki] == 0
    return tuple(int(i) for i in np.flatnonzero(mask))


def direct_period_subgroup(f: GroupFunction) -> tuple[int, ...]:
    G = f.group
    return tuple(
        i for i, g in enumerate(G.coords) if np.array_equal(f.values[G.shift_perm(g)], f.values)
    )


def period_lattice(f: GroupFunction) -> tuple[tuple[int, ...], ...]:
    """The period subgroup as group elements; cross-checked against the definition."""
    idx = period_subgroup(f)
    if idx != direct_period_subgroup(f):
        raise AssertionError("Fourier period subgroup disagrees with the direct one")
    return tuple(f.group.element(i) for i in idx)


def lifted_period_lattice(f: GroupFunction) -> Sublattice:
    """Period lattice of f composed with Z^s -> G for G a torus; any characteristic."""
    G = f.group
    if G != AbelianGroup.torus(G.orders):
        raise FourierError("lifting needs a torus group Z/n_1 + ... + Z/n_s")
    if all(n % f.field.p for n in G.orders):
        idx = period_subgroup(f)
        if idx != direct_period_subgroup(f):
            raise AssertionError("Fourier period subgroup disagrees with the direct one")
    else:
        idx = direct_period_subgroup(f)
    s = G.k
    cols = [[n if i == j else 0 for i in range(s)] for j, n in enumerate(G.orders)]
    cols += [list(G.element(i)) for i in idx]
    return Sublattice.span(cols)


# ------------------------------------------------------------ realization


def realize_charpoly(roots: Sequence[FieldElem], d: int | None = None) -> KernelSpec:
    """A kernel a on Z, supported in [0, d-1], whose charpoly on Z/d has the given roots."""
    d = len(roots) if d is None else d
    if len(roots) != d:
        raise FourierError(f"{len(roots)} roots for degree {d}")
    if d < 1:
        raise FourierError("degree must be positive")
    base = common_field(*(r.field for r in roots))
    _check_pfree((d,), base.p)
    T = torus(base.p, (d,), base)
    W = T.field
    G = AbelianGroup.torus((d,))
    hat = np.zeros((d, W.r), np.int64)
    for i, z in enumerate(roots):
        hat[i] = embed(z, W).coeffs
    a_star = idft(GroupFunction(G, W, hat))
    terms = {(i,): a_star[i] for i in range(d)}
    return KernelSpec(W, 1, terms)
