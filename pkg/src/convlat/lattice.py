"""Sublattices of Z^s, Smith normal form, finite quotients and functions on them.

Integer matrices are lists of lists of Python ints, so entries never overflow.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterator, Mapping, Sequence

import numpy as np

from .ff import Field, FieldElem, FieldError, embed, make_field, root_of_unity

IntMatrix = list[list[int]]


class LatticeError(ValueError):
    pass


# ------------------------------------------------------------ integer matrices


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: IntMatrix, v: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def transpose(A: IntMatrix) -> IntMatrix:
    return [list(c) for c in zip(*A)]


def det(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse_unimodular(A: IntMatrix) -> IntMatrix:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise LatticeError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    out = [[x for x in row[n:]] for row in M]
    if any(x.denominator != 1 for row in out for x in row):
        raise LatticeError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """(U, D, V) with U M V = D diagonal, d_1 | d_2 | ..., U and V unimodular."""
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for X in (A, V):
            for row in X:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for X in (A, V):
            for row in X:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, A, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
                    clean &= A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    clean &= A[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V


# ------------------------------------------------------------ sublattices


@dataclass(frozen=True)
class Sublattice:
    """Full-rank sublattice of Z^s; the columns of ``gens`` generate it."""

    gens: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gens)
        if not g or any(len(row) != len(g) for row in g):
            raise LatticeError("generator matrix must be square and non-empty")
        object.__setattr__(self, "gens", g)
        if det([list(r) for r in g]) == 0:
            raise LatticeError("generators do not span a finite-index sublattice")

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> Sublattice:
        return cls(tuple(zip(*cols)))

    @classmethod
    def product(cls, orders: Sequence[int], basis: Sequence[Sequence[int]] | None = None) -> Sublattice:
        """Lambda_{n, V}: spanned by n_i * v_i, with basis columns v_i (default standard)."""
        s = len(orders)
        if any(n < 1 for n in orders):
            raise LatticeError("orders must be positive")
        B = identity(s) if basis is None else [list(r) for r in zip(*basis)]
        if abs(det(B)) != 1:
            raise LatticeError("basis is not a basis of Z^s")
        return cls(tuple(tuple(B[i][j] * orders[j] for j in range(s)) for i in range(s)))

    @property
    def rank(self) -> int:
        return len(self.gens)

    @property
    def matrix(self) -> IntMatrix:
        return [list(r) for r in self.gens]

    @property
    def columns(self) -> list[list[int]]:
        return [list(c) for c in zip(*self.gens)]

    @cached_property
    def index(self) -> int:
        return abs(det(self.matrix))

    @cached_property
    def snf(self) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
        return smith_normal_form(self.matrix)

    @cached_property
    def diagonal_orders(self) -> tuple[int, ...] | None:
        """n if the generator matrix is diag(n) with positive n, else None."""
        g = self.gens
        s = len(g)
        if all(g[i][j] == 0 for i in range(s) for j in range(s) if i != j) and all(g[i][i] > 0 for i in range(s)):
            return tuple(g[i][i] for i in range(s))
        return None

    def contains(self, v: Sequence[int]) -> bool:
        U, D, _ = self.snf
        w = matvec(U, v)
        return all(w[i] % D[i][i] == 0 for i in range(self.rank))

    def contains_lattice(self, other: Sublattice) -> bool:
        return all(self.contains(c) for c in other.columns)

    def __le__(self, other: Sublattice) -> bool:
        return other.contains_lattice(self)

    def same_as(self, other: Sublattice) -> bool:
        return self.contains_lattice(other) and other.contains_lattice(self)

    @classmethod
    def span(cls, cols: Sequence[Sequence[int]]) -> Sublattice:
        """Lattice generated by any number of vectors (must have full rank)."""
        cols = [list(c) for c in cols]
        if not cols:
            raise LatticeError("no generators")
        s = len(cols[0])
        M = [[c[i] for c in cols] for i in range(s)]
        U, D, _ = smith_normal_form(M)
        if len(cols) < s or any(D[i][i] == 0 for i in range(s)):
            raise LatticeError("generators do not span a finite-index sublattice")
        Ui = inverse_unimodular(U)
        return cls(tuple(tuple(Ui[i][j] * D[j][j] for j in range(s)) for i in range(s)))

    def __add__(self, other: Sublattice) -> Sublattice:
        """Lattice generated by both."""
        return Sublattice.span(self.columns + other.columns)

    def __and__(self, other: Sublattice) -> Sublattice:
        s = self.rank
        A, B = self.matrix, other.matrix
        N = [A[i] + [-x for x in B[i]] for i in range(s)]
        _, D, V = smith_normal_form(N)
        kernel = [[V[i][j] for i in range(2 * s)] for j in range(s, 2 * s)]
        assert all(D[i][i] for i in range(s))
        cols = [matvec(A, k[:s]) for k in kernel]
        return Sublattice.from_columns(cols)

    def to_json(self) -> dict:
        return {"rank": self.rank, "matrix": self.matrix}

    @classmethod
    def from_json(cls, d: dict) -> Sublattice:
        return cls(tuple(tuple(r) for r in d["matrix"]))

    def __str__(self) -> str:
        return f"Sublattice(columns={self.columns}, index={self.index})"


# ------------------------------------------------------------ finite groups


@dataclass(frozen=True)
class AbelianGroup:
    """Z/d_1 + ... + Z/d_k, with an optional projection Z^s -> G, v -> (P v) mod d."""

    orders: tuple[int, ...]
    proj: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(d) for d in self.orders))
        if any(d < 1 for d in self.orders):
            raise LatticeError("cyclic orders must be positive")
        if self.proj is not None:
            object.__setattr__(self, "proj", tuple(tuple(int(x) for x in row) for row in self.proj))
            if len(self.proj) != len(self.orders):
                raise LatticeError("projection has the wrong number of rows")

    @classmethod
    def torus(cls, orders: Sequence[int]) -> AbelianGroup:
        s = len(orders)
        return cls(tuple(orders), tuple(tuple(identity(s)[i]) for i in range(s)))

    @property
    def k(self) -> int:
        return len(self.orders)

    @property
    def rank(self) -> int:
        """Rank s of the lattice projecting onto G."""
        if self.proj is None:
            return self.k
        return len(self.proj[0]) if self.proj else 0

    @cached_property
    def order(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, self.orders, 1)

    @cached_property
    def _radix(self) -> np.ndarray:
        w = np.ones(self.k, dtype=np.int64)
        for i in range(self.k - 2, -1, -1):
            w[i] = w[i + 1] * self.orders[i + 1]
        return w

    @cached_property
    def coords(self) -> np.ndarray:
        """(order, k) coordinate table, row-major with the last coordinate fastest."""
        if self.k == 0:
            return np.zeros((1, 0), np.int64)
        grids = np.meshgrid(*[np.arange(d) for d in self.orders], indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)

    def index_of(self, coords) -> np.ndarray | int:
        c = np.asarray(coords, dtype=np.int64) % np.array(self.orders, dtype=np.int64) if self.k else np.asarray(coords)
        if self.k == 0:
            return 0 if c.ndim <= 1 else np.zeros(c.shape[0], np.int64)
        out = c @ self._radix
        return int(out) if np.ndim(out) == 0 else out

    def element(self, index: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.coords[index])

    def elements(self) -> Iterator[tuple[int, ...]]:
        for row in self.coords:
            yield tuple(int(x) for x in row)

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        if self.proj is None:
            raise LatticeError("group has no projection from a lattice")
        return tuple(sum(a * b for a, b in zip(row, v)) % d for row, d in zip(self.proj, self.orders))

    def add_index(self, i: np.ndarray | int, j: np.ndarray | int) -> np.ndarray:
        return self.index_of(self.coords[i] + self.coords[j])

    def neg_index(self, i: np.ndarray | int) -> np.ndarray:
        return self.index_of(-self.coords[i])

    @cached_property
    def neg_perm(self) -> np.ndarray:
        return self.index_of(-self.coords)

    def shift_perm(self, g: Sequence[int]) -> np.ndarray:
        """perm[x] = index of x + g."""
        return self.index_of(self.coords + np.asarray(g, dtype=np.int64))

    def element_order(self, g: Sequence[int]) -> int:
        return reduce(math.lcm, (d // math.gcd(int(x), d) for x, d in zip(g, self.orders)), 1)

    def to_json(self) -> dict:
        out: dict = {"orders": list(self.orders)}
        if self.proj is not None:
            out["projection"] = [list(r) for r in self.proj]
        return out


def quotient(L: Sublattice) -> AbelianGroup:
    """Lambda / L with its projection; product sublattices keep their orders as given."""
    diag = L.diagonal_orders
    if diag is not None:
        return AbelianGroup.torus(diag)
    U, D, _ = L.snf
    keep = [i for i in range(L.rank) if D[i][i] != 1]
    if not keep:
        return AbelianGroup.torus((1,) * L.rank)
    return AbelianGroup(tuple(D[i][i] for i in keep), tuple(tuple(U[i][j] % D[i][i] for j in range(L.rank)) for i in keep))


def product_quotient(orders: Sequence[int], basis: Sequence[Sequence[int]] | None = None) -> AbelianGroup:
    """Quotient by Lambda_{n, V}: v -> (coordinates of v in V) mod n, skipping SNF."""
    s = len(orders)
    if basis is None:
        return AbelianGroup.torus(orders)
    B = [list(r) for r in zip(*basis)]
    Bi = inverse_unimodular(B)
    return AbelianGroup(tuple(orders), tuple(tuple(Bi[i][j] % orders[i] for j in range(s)) for i in range(s)))


def group_of(L: Sublattice) -> AbelianGroup:
    return quotient(L)


def p_complement(L: Sublattice, p: int) -> Sublattice:
    """The unique overlattice whose index is the p-free part of L's index."""
    U, D, _ = L.snf
    s = L.rank
    q = []
    for i in range(s):
        d = D[i][i]
        while d % p == 0:
            d //= p
        q.append(d)
    Ui = inverse_unimodular(U)
    return Sublattice(tuple(tuple(Ui[i][j] * q[j] for j in range(s)) for i in range(s)))


@dataclass(frozen=True)
class LatticeCharacter:
    """theta(v) = zeta^(<w, v>) with zeta of exact order ``order``."""

    order: int
    vector: tuple[int, ...]
    p: int

    @cached_property
    def root(self) -> tuple[Field, FieldElem]:
        return root_of_unity(self.p, self.order)

    def exponent(self, v: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.vector, v)) % self.order

    def __call__(self, v: Sequence[int]) -> FieldElem:
        F, z = self.root
        return z ** self.exponent(v)


def characteristic_characters(L: Sublattice, p: int) -> list[LatticeCharacter]:
    if L.index % p == 0:
        raise LatticeError(f"index {L.index} divisible by p={p}: sublattice is not characteristic")
    G = quotient(L)
    out = []
    for d, row in zip(G.orders, G.proj):
        if d > 1:
            out.append(LatticeCharacter(d, tuple(row), p))
    return out


# ------------------------------------------------------------ kernels


@dataclass(frozen=True)
class KernelSpec:
    """Finitely supported a: Z^s -> field."""

    field: Field
    rank: int
    terms: Mapping[tuple[int, ...], FieldElem] = dc_field(default_factory=dict)

    def __post_init__(self):
        clean: dict[tuple[int, ...], FieldElem] = {}
        for off, val in self.terms.items():
            off = tuple(int(x) for x in off)
            if len(off) != self.rank:
                raise LatticeError(f"offset {off} does not have length {self.rank}")
            val = self.field(val)
            clean[off] = clean.get(off, self.field.zero) + val
        object.__setattr__(self, "terms", {k: v for k, v in sorted(clean.items()) if not v.is_zero()})

    def __hash__(self) -> int:
        return hash((self.field, self.rank, tuple(self.terms.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, KernelSpec):
            return NotImplemented
        return (self.field, self.rank, self.terms) == (other.field, other.rank, other.terms)

    @classmethod
    def a_plus(cls, rank: int, field: Field | None = None) -> KernelSpec:
        """The star kernel: delta_0 plus the 2s unit neighbours."""
        F = field or make_field(2, 1)
        terms = {(0,) * rank: F.one}
        for i in range(rank):
            for sgn in (1, -1):
                e = [0] * rank
                e[i] = sgn
                terms[tuple(e)] = terms.get(tuple(e), F.zero) + F.one
        return cls(F, rank, terms)

    @classmethod
    def delta(cls, offset: Sequence[int], field: Field | None = None) -> KernelSpec:
        F = field or make_field(2, 1)
        return cls(F, len(offset), {tuple(offset): F.one})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def norm(self) -> FieldElem:
        """|a|, the sum of all values."""
        return sum(self.terms.values(), self.field.zero)

    def reflected(self) -> KernelSpec:
        return KernelSpec(self.field, self.rank, {tuple(-x for x in k): v for k, v in self.terms.items()})

    def embed(self, target: Field) -> KernelSpec:
        return KernelSpec(target, self.rank, {k: embed(v, target) for k, v in self.terms.items()})

    def __sub__(self, other: KernelSpec) -> KernelSpec:
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, self.field.zero) - v
        return KernelSpec(self.field, self.rank, terms)

    def __add__(self, other: KernelSpec) -> KernelSpec:
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, self.field.zero) + v
        return KernelSpec(self.field, self.rank, terms)

    def convolve(self, other: KernelSpec) -> KernelSpec:
        terms: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                terms[k] = terms.get(k, self.field.zero) + v1 * v2
        return KernelSpec(self.field, self.rank, terms)

    def to_json(self) -> dict:
        return {
            "p": self.field.p,
            "r": self.field.r,
            "rank": self.rank,
            "terms": [{"offset": list(k), "value": list(v.coeffs)} for k, v in self.terms.items()],
        }

    @classmethod
    def from_json(cls, d: Mapping) -> KernelSpec:
        try:
            F = make_field(int(d["p"]), int(d.get("r", 1)))
            if "modulus" in d and tuple(d["modulus"]) != F.modulus:
                raise LatticeError("kernel modulus differs from the canonical one")
            rank = int(d["rank"])
            terms = {}
            for t in d["terms"]:
                val = t["value"]
                elem = F(val if isinstance(val, int) else tuple(val))
                off = tuple(t["offset"])
                terms[off] = terms.get(off, F.zero) + elem
        except (KeyError, TypeError) as exc:
            raise LatticeError(f"malformed kernel JSON: {exc}") from exc
        return cls(F, rank, terms)

    @classmethod
    def load(cls, path: str) -> KernelSpec:
        with open(path) as fh:
            return cls.from_json(json.load(fh))


# ------------------------------------------------------------ group functions


class GroupFunction:
    """Dense function G -> field; values[i] is the value at G.element(i)."""

    __slots__ = ("group", "field", "values")

    def __init__(self, group: AbelianGroup, field: Field, values: np.ndarray | None = None):
        self.group = group
        self.field = field
        if values is None:
            values = np.zeros((group.order, field.r), np.int64)
        values = np.asarray(values, dtype=np.int64).reshape(group.order, field.r) % field.p
        values.setflags(write=False)
        self.values = values

    @classmethod
    def from_elems(cls, group: AbelianGroup, elems: Sequence[FieldElem | int], field: Field) -> GroupFunction:
        if len(elems) != group.order:
            raise LatticeError(f"{len(elems)} values for a group of order {group.order}")
        return cls(group, field, field.arr(elems))

    @classmethod
    def delta(cls, group: AbelianGroup, field: Field, g: Sequence[int] | None = None) -> GroupFunction:
        v = np.zeros((group.order, field.r), np.int64)
        v[group.index_of(g if g is not None else (0,) * group.k), 0] = 1
        return cls(group, field, v)

    @classmethod
    def constant(cls, group: AbelianGroup, c: FieldElem) -> GroupFunction:
        return cls(group, c.field, np.tile(np.array(c.coeffs, np.int64), (group.order, 1)))

    def __getitem__(self, g: Sequence[int] | int) -> FieldElem:
        i = g if isinstance(g, (int, np.integer)) else self.group.index_of(g)
        return FieldElem(self.field, tuple(int(x) for x in self.values[i]))

    def elems(self) -> list[FieldElem]:
        return self.field.elems(self.values)

    def _check(self, other: GroupFunction) -> None:
        if other.group != self.group:
            raise LatticeError(f"group mismatch: {self.group.orders} vs {other.group.orders}")
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other: GroupFunction) -> GroupFunction:
        self._check(other)
        return GroupFunction(self.group, self.field, self.values + other.values)

    def __sub__(self, other: GroupFunction) -> GroupFunction:
        self._check(other)
        return GroupFunction(self.group, self.field, self.values - other.values)

    def __neg__(self) -> GroupFunction:
        return GroupFunction(self.group, self.field, -self.values)

    def scale(self, c: FieldElem | int) -> GroupFunction:
        return GroupFunction(self.group, self.field, self.field.arr_scale(self.values, self.field(c)))

    def pointwise(self, other: GroupFunction) -> GroupFunction:
        self._check(other)
        return GroupFunction(self.group, self.field, self.field.arr_mul(self.values, other.values))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupFunction):
            return NotImplemented
        return self.group == other.group and self.field == other.field and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.group, self.field, self.values.tobytes()))

    def is_zero(self) -> bool:
        return not self.values.any()

    def translate(self, g: Sequence[int]) -> GroupFunction:
        """tau_g f: x -> f(g + x)."""
        return GroupFunction(self.group, self.field, self.values[self.group.shift_perm(g)])

    def reflect(self) -> GroupFunction:
        """x -> f(-x)."""
        return GroupFunction(self.group, self.field, self.values[self.group.neg_perm])

    def embed(self, target: Field) -> GroupFunction:
        if target == self.field:
            return self
        from .ff import get_embedding

        return GroupFunction(self.group, target, get_embedding(self.field, target).apply(self.values))

    def support(self) -> list[tuple[int, ...]]:
        return [self.group.element(i) for i in np.flatnonzero(np.any(self.values, axis=1))]

    def total(self) -> FieldElem:
        return FieldElem(self.field, tuple(int(x) for x in self.values.sum(axis=0) % self.field.p))

    def to_json(self) -> dict:
        if self.field.r == 1:
            vals: list = [int(v) for v in self.values[:, 0]]
        else:
            vals = [[int(x) for x in row] for row in self.values]
        return {"orders": list(self.group.orders), "p": self.field.p, "r": self.field.r, "values": vals}

    @classmethod
    def from_json(cls, d: Mapping, field: Field | None = None) -> GroupFunction:
        F = field or make_field(int(d.get("p", 2)), int(d.get("r", 1)))
        G = AbelianGroup.torus(d["orders"])
        return cls(G, F, np.array(d["values"], dtype=np.int64).reshape(G.order, F.r))

    def grid(self) -> np.ndarray:
        """Values reshaped to the group's cyclic orders (prime field only)."""
        if self.field.r != 1:
            raise LatticeError("grid view needs a prime-field function")
        return self.values[:, 0].reshape(self.group.orders)

    def to_text(self) -> str:
        g = self.grid()
        if g.ndim == 1:
            g = g[None, :]
        if g.ndim != 2:
            raise LatticeError("text grid form is only defined for rank 1 or 2")
        return "\n".join(" ".join(str(int(x)) for x in row) for row in g)

    def __repr__(self) -> str:
        return f"GroupFunction({self.group.orders}, {self.field!r})"


def parse_grid(text: str) -> np.ndarray:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split() if (" " in line or "," in line) else list(line)
        toks = [t for tok in toks for t in tok.split(",") if t]
        rows.append([int(t) for t in toks])
    if not rows or len({len(r) for r in rows}) != 1:
        raise LatticeError("grid rows must be non-empty and of equal length")
    return np.array(rows, dtype=np.int64)


def pushforward(a: KernelSpec, G: AbelianGroup) -> GroupFunction:
    """a_*(g) = sum of a(v) over v projecting to g."""
    if G.proj is None:
        raise LatticeError("group has no projection")
    if G.rank != a.rank:
        raise LatticeError(f"rank mismatch: kernel rank {a.rank}, group lattice rank {G.rank}")
    F = a.field
    vals = np.zeros((G.order, F.r), np.int64)
    for off, v in a.terms.items():
        vals[G.index_of(G.project(off))] += np.array(v.coeffs, np.int64)
    return GroupFunction(G, F, vals % F.p)


def pushforward_linear(a: KernelSpec, u: Sequence[int]) -> KernelSpec:
    """Pushforward along Z^s -> Z, v -> <v, u>, as a kernel on Z."""
    if len(u) != a.rank:
        raise LatticeError(f"rank mismatch: kernel rank {a.rank}, vector length {len(u)}")
    terms: dict = {}
    for off, v in a.terms.items():
        k = (sum(x * y for x, y in zip(off, u)),)
        terms[k] = terms.get(k, a.field.zero) + v
    return KernelSpec(a.field, 1, terms)
