"""Univariate, Laurent and multivariate polynomials over an explicit finite field.

Univariate polynomials are dense (coefficient arrays), Laurent and
multivariate polynomials are sparse dicts keyed by exponent tuples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

import numpy as np
from scipy.signal import convolve2d

from .ff import Field, FieldElem, FieldMismatchError, common_field, embed


class PolyError(ValueError):
    pass


def _trim(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(np.any(a, axis=1))
    return a[: nz[-1] + 1] if len(nz) else a[:0]


class Poly:
    """Dense univariate polynomial over a :class:`Field`, low-to-high."""

    __slots__ = ("field", "_a", "__weakref__")

    def __init__(self, field: Field, coeffs: Sequence[FieldElem | int] | np.ndarray = ()):
        self.field = field
        if isinstance(coeffs, np.ndarray):
            a = coeffs.astype(np.int64, copy=True).reshape(-1, field.r) % field.p
        else:
            a = field.arr(coeffs) if len(coeffs) else np.zeros((0, field.r), np.int64)
        a = _trim(a)
        a.setflags(write=False)
        self._a = a

    # -- constructors

    @classmethod
    def x(cls, field: Field) -> Poly:
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field: Field, c: FieldElem | int) -> Poly:
        return cls(field, [c])

    @classmethod
    def linear_factor(cls, c: FieldElem) -> Poly:
        """x - c"""
        return cls(c.field, [-c, 1])

    # -- basic access

    @property
    def deg(self) -> int:
        return len(self._a) - 1

    @property
    def coeffs(self) -> tuple[FieldElem, ...]:
        return tuple(self.field.elems(self._a))

    def coeff(self, i: int) -> FieldElem:
        if 0 <= i < len(self._a):
            return FieldElem(self.field, tuple(int(v) for v in self._a[i]))
        return self.field.zero

    @property
    def lc(self) -> FieldElem:
        if self.is_zero():
            raise PolyError("zero polynomial has no leading coefficient")
        return self.coeff(self.deg)

    def is_zero(self) -> bool:
        return len(self._a) == 0

    def is_one(self) -> bool:
        return self.deg == 0 and self.lc.is_one()

    def array(self) -> np.ndarray:
        return self._a

    def _wrap(self, a: np.ndarray) -> Poly:
        return Poly(self.field, a)

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (FieldElem, int, np.integer)):
            return Poly(self.field, [self.field(other)])
        return NotImplemented

    # -- arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self._a), len(o._a))
        out = np.zeros((n, self.field.r), np.int64)
        out[: len(self._a)] += self._a
        out[: len(o._a)] += o._a
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self._a)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (FieldElem, int, np.integer)):
            return self._wrap(self.field.arr_scale(self._a, self.field(other)))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return Poly(self.field)
        F = self.field
        if F.r == 1:
            return self._wrap(np.convolve(self._a[:, 0], o._a[:, 0])[:, None])
        wide = convolve2d(self._a, o._a) % F.p
        return self._wrap(F.arr_reduce(wide))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise PolyError("negative power of a polynomial")
        result = Poly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        if self.deg < o.deg:
            return Poly(F), self
        rem = self._a.copy()
        dq = self.deg - o.deg
        quo = np.zeros((dq + 1, F.r), np.int64)
        inv_lc = o.lc.inverse()
        m = o.deg
        for i in range(self.deg, m - 1, -1):
            t = rem[i]
            if not t.any():
                continue
            c = F.arr_mul(t, np.array(inv_lc.coeffs))
            quo[i - m] = c
            rem[i - m : i + 1] = (rem[i - m : i + 1] - F.arr_scale(o._a, FieldElem(F, tuple(int(v) for v in c)))) % F.p
        return self._wrap(quo), self._wrap(rem[:m] if m > 0 else rem[:0])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other) -> Poly:
        q, rem = divmod(self, other)
        if not rem.is_zero():
            raise PolyError("inexact polynomial division")
        return q

    def divides(self, other: Poly) -> bool:
        return (other % self).is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (FieldElem, int, np.integer)):
            other = Poly(self.field, [self.field(other)])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        return hash((self.field, self._a.tobytes()))

    # -- evaluation and transforms

    def __call__(self, x: FieldElem) -> FieldElem:
        x = self.field(x) if not isinstance(x, FieldElem) else x
        if x.field != self.field:
            x_field = common_field(x.field, self.field)
            return self.embed(x_field)(embed(x, x_field))
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def embed(self, target: Field) -> Poly:
        if target == self.field:
            return self
        return Poly(target, [embed(c, target) for c in self.coeffs])

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * self.lc.inverse()

    def derivative(self) -> Poly:
        if self.deg < 1:
            return Poly(self.field)
        k = np.arange(1, len(self._a), dtype=np.int64)[:, None]
        return self._wrap(self._a[1:] * k)

    def compose(self, g: Poly) -> Poly:
        acc = Poly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def shift(self, c: FieldElem | int) -> Poly:
        """f(x + c)."""
        return self.compose(Poly(self.field, [self.field(c), 1]))

    def powmod(self, e: int, m: Poly) -> Poly:
        result = Poly.const(self.field, 1) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result

    def to_list(self) -> list[list[int]] | list[int]:
        if self.field.r == 1:
            return [int(v) for v in self._a[:, 0]]
        return [[int(v) for v in row] for row in self._a]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = str(c) if self.field.r == 1 else f"({c})"
            if i == 0:
                parts.append(cs)
                continue
            mono = "x" if i == 1 else f"x^{i}"
            parts.append(mono if c.is_one() else f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly[{self.field!r}]({self})"


# ------------------------------------------------------------ gcd and roots


def poly_gcd(f: Poly, g: Poly) -> Poly:
    if f.field != g.field:
        raise FieldMismatchError(f"{f.field!r} vs {g.field!r}")
    if f.is_zero() and g.is_zero():
        raise PolyError("gcd(0, 0) is undefined")
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def poly_lcm(f: Poly, g: Poly) -> Poly:
    if f.is_zero() or g.is_zero():
        return Poly(f.field)
    return (f * g).exquo(poly_gcd(f, g)).monic()


def root_multiplicity(f: Poly, c: FieldElem | int) -> int:
    if f.is_zero():
        raise PolyError("root multiplicity in the zero polynomial")
    lin = Poly.linear_factor(f.field(c))
    k = 0
    while True:
        q, rem = divmod(f, lin)
        if not rem.is_zero():
            return k
        f, k = q, k + 1


def poly_roots(f: Poly, seed: int = 0) -> list[FieldElem]:
    """Distinct roots of f lying in f.field, sorted by enumeration index."""
    if f.is_zero():
        raise PolyError("roots of the zero polynomial")
    F = f.field
    x = Poly.x(F)
    f = f.monic()
    if f.deg < 1:
        return []
    split = poly_gcd(f, x.powmod(F.order, f) - x)
    rng = random.Random(seed)
    out: list[FieldElem] = []

    def rec(g: Poly) -> None:
        if g.deg == 0:
            return
        if g.deg == 1:
            out.append(-g.coeff(0) / g.coeff(1))
            return
        while True:
            delta = F.element(rng.randrange(F.order))
            if F.p == 2:
                y = (x * delta) % g
                t = y
                for _ in range(F.r - 1):
                    y = (y * y) % g
                    t = t + y
                h = poly_gcd(g, t) if not t.is_zero() else g
            else:
                h = poly_gcd(g, (x + delta).powmod((F.order - 1) // 2, g) - 1)
            if 0 < h.deg < g.deg:
                rec(h)
                rec(g.exquo(h))
                return

    rec(split)
    return sorted(out, key=FieldElem.to_int)


def _pth_root(f: Poly) -> Poly:
    F = f.field
    coeffs = f.coeffs[:: F.p]
    e = F.p ** (F.r - 1)
    return Poly(F, [c**e for c in coeffs])


def squarefree_decomposition(f: Poly) -> dict[int, Poly]:
    """f = lc * prod g_i^i with g_i squarefree and pairwise coprime."""
    if f.is_zero():
        raise PolyError("squarefree decomposition of zero")
    f = f.monic()
    out: dict[int, Poly] = {}
    if f.deg < 1:
        return out
    p = f.field.p
    d = f.derivative()
    if d.is_zero():
        for k, g in squarefree_decomposition(_pth_root(f)).items():
            out[k * p] = g
        return out
    c = poly_gcd(f, d)
    w = f.exquo(c)
    i = 1
    while w.deg > 0:
        y = poly_gcd(w, c)
        z = w.exquo(y)
        if z.deg > 0:
            out[i] = z
        i += 1
        w = y
        c = c.exquo(y)
    if c.deg > 0:
        for k, g in squarefree_decomposition(_pth_root(c)).items():
            prev = out.get(k * p)
            out[k * p] = g if prev is None else prev * g
    return out


def format_compact(f: Poly) -> str:
    """Descending powers without spaces, e.g. ``x^2+x+1``."""
    if f.is_zero():
        return "0"
    parts = []
    for i in range(f.deg, -1, -1):
        c = f.coeff(i)
        if c.is_zero():
            continue
        cs = str(c) if f.field.r == 1 else f"({c})"
        if i == 0:
            parts.append(cs)
            continue
        mono = "x" if i == 1 else f"x^{i}"
        parts.append(mono if c.is_one() else f"{cs}*{mono}")
    return "+".join(parts)


def format_factored(f: Poly) -> str:
    """Squarefree-power form, e.g. ``(x+1)^4``; not a factorization into irreducibles."""
    if f.is_zero() or f.deg < 1:
        return format_compact(f)
    parts = []
    lc = f.lc
    if not lc.is_one():
        parts.append(f"[{lc}]")
    for k, g in sorted(squarefree_decomposition(f).items()):
        body = format_compact(g)
        if sum(1 for c in g.coeffs if not c.is_zero()) > 1:
            body = f"({body})"
        parts.append(body + (f"^{k}" if k > 1 else ""))
    return "".join(parts)


# ------------------------------------------------------- characteristic poly


def _hessenberg(F: Field, A: np.ndarray) -> np.ndarray:
    """Similarity-reduce an (n, n, r) array to upper Hessenberg form."""
    A = A.copy() % F.p
    n = A.shape[0]
    for k in range(n - 2):
        col = A[k + 1 :, k]
        nz = np.flatnonzero(np.any(col, axis=1))
        if len(nz) == 0:
            continue
        piv = k + 1 + nz[0]
        if piv != k + 1:
            A[[k + 1, piv]] = A[[piv, k + 1]]
            A[:, [k + 1, piv]] = A[:, [piv, k + 1]]
        if k + 2 >= n:
            continue
        inv = FieldElem(F, tuple(int(v) for v in A[k + 1, k])).inverse()
        u = F.arr_scale(A[k + 2 :, k], inv)  # (n-k-2, r)
        if not u.any():
            continue
        A[k + 2 :, :] = (A[k + 2 :, :] - F.arr_mul(u[:, None, :], A[k + 1][None, :, :])) % F.p
        A[:, k + 1] = (A[:, k + 1] + F.arr_mul(A[:, k + 2 :], u[None, :, :]).sum(axis=1)) % F.p
    return A


def charpoly_array(F: Field, A: np.ndarray) -> Poly:
    """det(xI - A) for an (n, n, r) coefficient array."""
    n = A.shape[0]
    if n == 0:
        return Poly.const(F, 1)
    H = _hessenberg(F, A)
    p = F.p
    # polys[m] has degree m, stored as (n+1, r) rows
    polys = np.zeros((n + 1, n + 1, F.r), np.int64)
    polys[0, 0, 0] = 1
    for m in range(1, n + 1):
        j = m - 1  # 0-based column
        prev = polys[m - 1]
        cur = np.zeros_like(prev)
        cur[1:] = prev[:-1]
        cur = (cur - F.arr_mul(prev, H[j, j][None, :])) % p
        if m > 1:
            betas = np.zeros((m - 1, F.r), np.int64)
            prod = np.zeros(F.r, np.int64)
            prod[0] = 1
            for i in range(m - 2, -1, -1):
                prod = F.arr_mul(prod, H[i + 1, i])
                betas[i] = F.arr_mul(H[i, j], prod)
            acc = F.arr_mul(betas[:, None, :], polys[: m - 1]).sum(axis=0) % p
            cur = (cur - acc) % p
        polys[m] = cur
    return Poly(F, polys[n])


def charpoly_of_matrix(M: Sequence[Sequence[FieldElem]]) -> Poly:
    n = len(M)
    if any(len(row) != n for row in M):
        raise PolyError("charpoly of a non-square matrix")
    if n == 0:
        raise PolyError("charpoly of an empty matrix needs a field; use charpoly_array")
    F = M[0][0].field
    A = np.array([[F(c).coeffs for c in row] for row in M], dtype=np.int64)
    return charpoly_array(F, A)


def companion_matrix(f: Poly) -> list[list[FieldElem]]:
    f = f.monic()
    F, n = f.field, f.deg
    M = [[F.zero] * n for _ in range(n)]
    for i in range(1, n):
        M[i][i - 1] = F.one
    for i in range(n):
        M[i][n - 1] = -f.coeff(i)
    return M


# -------------------------------------------------------------- Laurent


@dataclass(frozen=True)
class LaurentPoly:
    field: Field
    rank: int
    terms: Mapping[tuple[int, ...], FieldElem] = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            if len(e) != self.rank:
                raise PolyError(f"exponent {e} has wrong length for rank {self.rank}")
            c = self.field(c)
            if not c.is_zero():
                clean[tuple(int(v) for v in e)] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __hash__(self) -> int:
        return hash((self.field, self.rank, tuple(self.terms.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.field, self.rank, self.terms) == (other.field, other.rank, other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient_sum(self) -> FieldElem:
        return sum(self.terms.values(), self.field.zero)

    def swapped(self, i: int = 0, j: int = 1) -> LaurentPoly:
        def sw(e):
            e = list(e)
            e[i], e[j] = e[j], e[i]
            return tuple(e)

        return LaurentPoly(self.field, self.rank, {sw(e): c for e, c in self.terms.items()})

    def is_symmetric(self) -> bool:
        """Invariant under every coordinate transposition."""
        return all(self.swapped(i, i + 1) == self for i in range(self.rank - 1))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = ["x"] if self.rank == 1 else [f"x{i + 1}" for i in range(self.rank)]
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            cs = str(c) if self.field.r == 1 else f"({c})"
            if not mono:
                parts.append(cs)
            else:
                parts.append(mono if c.is_one() else f"{cs}*{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "terms": [{"exponent": list(e), "value": list(c.coeffs)} for e, c in self.terms.items()],
        }


def laurent_eval(L: LaurentPoly, point: Sequence[FieldElem]) -> FieldElem:
    if len(point) != L.rank:
        raise PolyError(f"point of length {len(point)} for a rank-{L.rank} Laurent polynomial")
    if any(x.is_zero() for x in point):
        raise PolyError("Laurent polynomial evaluated at a point with a zero coordinate")
    F = common_field(L.field, *(x.field for x in point))
    pt = [embed(x, F) for x in point]
    inv = [x.inverse() for x in pt]
    total = F.zero
    for e, c in L.terms.items():
        term = embed(c, F)
        for x, xi, k in zip(pt, inv, e):
            if k > 0:
                term = term * x**k
            elif k < 0:
                term = term * xi ** (-k)
        total = total + term
    return total


def laurent_to_fraction(L: LaurentPoly) -> tuple[MultiPoly, tuple[int, ...]]:
    """(P, alpha) with L = P / y^alpha, P a polynomial in y_1..y_s (variables 0..s-1)."""
    if L.is_zero():
        raise PolyError("fraction form of the zero Laurent polynomial")
    alpha = tuple(max(0, -min(e[i] for e in L.terms)) for i in range(L.rank))
    terms = {tuple(k + a for k, a in zip(e, alpha)): c for e, c in L.terms.items()}
    names = ["x"] if L.rank == 1 else [f"x{i + 1}" for i in range(L.rank)]
    return MultiPoly(L.field, L.rank, terms, names=names), alpha


# -------------------------------------------------------------- multivariate


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables; exponent tuples map to coefficients."""

    __slots__ = ("field", "nvars", "terms", "names")

    def __init__(
        self,
        field: Field,
        nvars: int,
        terms: Mapping[tuple[int, ...], FieldElem] | None = None,
        names: Sequence[str] | None = None,
    ):
        self.field = field
        self.nvars = nvars
        self.names = tuple(names) if names else None
        clean: dict[tuple[int, ...], FieldElem] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars or any(k < 0 for k in e):
                raise PolyError(f"bad exponent {e} for {nvars} variables")
            c = field(c)
            if not c.is_zero():
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, field: Field, nvars: int, terms: dict) -> MultiPoly:
        obj = cls.__new__(cls)
        obj.field, obj.nvars, obj.terms, obj.names = field, nvars, terms, None
        return obj

    @classmethod
    def var(cls, field: Field, nvars: int, i: int, power: int = 1) -> MultiPoly:
        e = [0] * nvars
        e[i] = power
        return cls(field, nvars, {tuple(e): field.one})

    @classmethod
    def const(cls, field: Field, nvars: int, c: FieldElem | int) -> MultiPoly:
        return cls(field, nvars, {(0,) * nvars: field(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.field != self.field or other.nvars != self.nvars:
                raise FieldMismatchError("incompatible multivariate polynomials")
            return other
        if isinstance(other, (FieldElem, int, np.integer)):
            return MultiPoly.const(self.field, self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
        return MultiPoly._raw(self.field, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out: dict[tuple[int, ...], FieldElem] = {}
        zero = self.field.zero
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, zero) + c1 * c2
        return MultiPoly._raw(self.field, self.nvars, {e: c for e, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        result = MultiPoly.const(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if not isinstance(other, MultiPoly) else other
        if o is NotImplemented or not isinstance(o, MultiPoly):
            return NotImplemented
        return self.field == o.field and self.nvars == o.nvars and self.terms == o.terms

    def __hash__(self) -> int:
        return hash((self.field, self.nvars, tuple(sorted(self.terms.items()))))

    def leading(self) -> tuple[tuple[int, ...], FieldElem]:
        e = max(self.terms)
        return e, self.terms[e]

    def exquo(self, other: MultiPoly) -> MultiPoly:
        """Exact division; raises PolyError if ``other`` does not divide ``self``."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("multivariate division by zero")
        if len(other.terms) == 1:
            (eg, cg), = other.terms.items()
            inv = cg.inverse()
            out = {}
            for e, c in self.terms.items():
                d = tuple(a - b for a, b in zip(e, eg))
                if any(k < 0 for k in d):
                    raise PolyError("inexact multivariate division")
                out[d] = c * inv
            return MultiPoly._raw(self.field, self.nvars, out)
        eg, cg = other.leading()
        inv = cg.inverse()
        rem = dict(self.terms)
        quo: dict[tuple[int, ...], FieldElem] = {}
        zero = self.field.zero
        while rem:
            e = max(rem)
            c = rem[e]
            d = tuple(a - b for a, b in zip(e, eg))
            if any(k < 0 for k in d):
                raise PolyError("inexact multivariate division")
            t = c * inv
            quo[d] = t
            for e2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(d, e2))
                v = rem.get(k, zero) - t * c2
                if v.is_zero():
                    rem.pop(k, None)
                else:
                    rem[k] = v
        return MultiPoly._raw(self.field, self.nvars, quo)

    def degree(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def as_univariate(self, var: int) -> list[MultiPoly]:
        """Coefficients (low-to-high) of self as a polynomial in ``var``."""
        d = self.degree(var)
        buckets: list[dict] = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            k = e[var]
            e2 = e[:var] + (0,) + e[var + 1 :]
            buckets[k][e2] = c
        return [MultiPoly._raw(self.field, self.nvars, b) for b in buckets]

    @classmethod
    def from_univariate(cls, coeffs: Sequence[MultiPoly], var: int) -> MultiPoly:
        F, n = coeffs[0].field, coeffs[0].nvars
        out = {}
        for k, c in enumerate(coeffs):
            for e, v in c.terms.items():
                out[e[:var] + (e[var] + k,) + e[var + 1 :]] = v
        return cls._raw(F, n, out)

    def to_poly(self, var: int = 0) -> Poly:
        """Dense univariate view; every other variable must be absent."""
        if self.variables() - {var}:
            raise PolyError("polynomial involves more than one variable")
        d = self.degree(var)
        coeffs = [self.field.zero] * (d + 1)
        for e, c in self.terms.items():
            coeffs[e[var]] = c
        return Poly(self.field, coeffs)

    @classmethod
    def from_poly(cls, f: Poly, nvars: int, var: int = 0) -> MultiPoly:
        out = {}
        for k, c in enumerate(f.coeffs):
            if not c.is_zero():
                e = [0] * nvars
                e[var] = k
                out[tuple(e)] = c
        return cls._raw(f.field, nvars, out)

    def __call__(self, point: Sequence[FieldElem]) -> FieldElem:
        total = self.field.zero
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def substitute(self, var: int, value: FieldElem) -> MultiPoly:
        out: dict = {}
        zero = self.field.zero
        for e, c in self.terms.items():
            e2 = e[:var] + (0,) + e[var + 1 :]
            out[e2] = out.get(e2, zero) + c * value ** e[var]
        return MultiPoly._raw(self.field, self.nvars, {e: c for e, c in out.items() if not c.is_zero()})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.names or ["x"] + [f"y{i}" for i in range(1, self.nvars)]
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            cs = str(c) if self.field.r == 1 else f"({c})"
            parts.append(cs if not mono else (mono if c.is_one() else f"{cs}*{mono}"))
        return " + ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------- resultants


def _ring_zero_like(c):
    if isinstance(c, Poly):
        return Poly(c.field)
    return MultiPoly(c.field, c.nvars)


def _ring_one_like(c):
    if isinstance(c, Poly):
        return Poly.const(c.field, 1)
    return MultiPoly.const(c.field, c.nvars, 1)


def _trim_ring(A: list) -> list:
    while A and A[-1].is_zero():
        A = A[:-1]
    return A


def _prem(A: list, B: list) -> list:
    """Pseudo-remainder lc(B)^(deg A - deg B + 1) * A mod B, coefficient lists."""
    d = len(B) - 1
    b = B[-1]
    e = len(A) - len(B) + 1
    R = list(A)
    while R and len(R) - 1 >= d:
        t = R[-1]
        j = len(R) - 1 - d
        R = [c * b for c in R]
        for i, bc in enumerate(B):
            R[i + j] = R[i + j] - t * bc
        R = _trim_ring(R)
        e -= 1
    if e > 0 and R:
        be = b**e
        R = [c * be for c in R]
    return R


def subresultant(A: list, B: list):
    """Resultant of two univariate polynomials over an integral domain.

    A and B are coefficient lists (low-to-high) of ring elements supporting
    ``+ - * **``, ``exquo`` and ``is_zero``.  Uses the subresultant PRS so every
    division is exact.
    """
    A, B = _trim_ring(list(A)), _trim_ring(list(B))
    if not A or not B:
        raise PolyError("resultant with a zero polynomial")
    zero, one = _ring_zero_like(A[0]), _ring_one_like(A[0])
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) * (len(B) - 1) % 2:
            s = -1
    if len(B) == 1:
        res = B[0] ** (len(A) - 1)
        return res if s == 1 else -res
    g = h = one
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem(A, B)
        A = B
        if not R:
            return zero
        div = g * h**delta
        B = [c.exquo(div) for c in R]
        g = A[-1]
        if delta >= 1:
            h = (g**delta).exquo(h ** (delta - 1)) if delta > 1 else g
        if len(B) == 1:
            break
    da = len(A) - 1
    res = (B[0] ** da).exquo(h ** (da - 1)) if da > 1 else B[0]
    return res if s == 1 else -res


def _bareiss_det(M: list[list]):
    n = len(M)
    M = [list(row) for row in M]
    one = _ring_one_like(M[0][0])
    sign = 1
    prev = one
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return _ring_zero_like(one)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exquo(prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def sylvester_matrix(A: list, B: list) -> list[list]:
    m, n = len(A) - 1, len(B) - 1
    zero = _ring_zero_like(A[0])
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(A)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(B)):
            row[i + k] = c
        rows.append(row)
    return rows


def sylvester_resultant(A: list, B: list):
    A, B = _trim_ring(list(A)), _trim_ring(list(B))
    if not A or not B:
        raise PolyError("resultant with a zero polynomial")
    if len(A) == 1 and len(B) == 1:
        return _ring_one_like(A[0])
    if len(A) == 1:
        return A[0] ** (len(B) - 1)
    if len(B) == 1:
        return B[0] ** (len(A) - 1)
    return _bareiss_det(sylvester_matrix(A, B))


def resultant(f: MultiPoly, g: MultiPoly, var: int, method: str = "subresultant") -> MultiPoly:
    """res_var(f, g) with the Sylvester-determinant sign convention."""
    if f.is_zero() or g.is_zero():
        raise PolyError("resultant with a zero polynomial")
    if var not in f.variables() | g.variables():
        raise PolyError(f"variable {var} occurs in neither input")
    A, B = f.as_univariate(var), g.as_univariate(var)
    if method == "subresultant":
        return subresultant(A, B)
    if method == "sylvester":
        return sylvester_resultant(A, B)
    raise PolyError(f"unknown resultant method {method!r}")
