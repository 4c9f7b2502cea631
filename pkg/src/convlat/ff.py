"""Explicit finite fields GF(p^r) and their elements.

A field is presented as GF(p)[X]/(m) where m is the lexicographically least
monic irreducible of degree r, scanned in ascending order of the coefficient
tuple (c_{r-1}, ..., c_0).  Elements are coefficient tuples low-to-high.

Scalar arithmetic goes through :class:`FieldElem`.  Bulk work (torus
enumeration, DFTs, elimination) uses int64 arrays of shape ``(..., r)`` and the
``arr_*`` methods of :class:`Field`.
"""

from __future__ import annotations

import math
import contextlib
import random
import threading
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_MAX_FIELD_BITS = 63
_bits_limit = threading.local()


def max_field_bits() -> int | None:
    """The factorization bound in force (see ``field_bits_limit``)."""
    return getattr(_bits_limit, "value", DEFAULT_MAX_FIELD_BITS)


@contextlib.contextmanager
def field_bits_limit(bits: int | None):
    """Temporarily replace the default factorization bound; None lifts it."""
    prev = max_field_bits()
    _bits_limit.value = bits
    try:
        yield
    finally:
        _bits_limit.value = prev


_BOUND = "bound"


class FieldError(ValueError):
    """Invalid finite-field input."""


class FieldMismatchError(FieldError):
    """Elements of two different fields were combined without an embedding."""


class FieldSizeError(FieldError):
    """A computation needs to factor a number beyond the configured bound."""


# ---------------------------------------------------------------- integers


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic below 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int, max_bits: int | None | str = _BOUND) -> dict[int, int]:
    """Prime factorization by trial division.

    Stops early once the cofactor is prime.  Raises FieldSizeError when ``n``
    exceeds ``2**max_bits - 1``.
    """
    if max_bits == _BOUND:
        max_bits = max_field_bits()
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    if max_bits is not None and n > (1 << max_bits) - 1:
        raise FieldSizeError(f"{n} exceeds the factorization bound 2^{max_bits}-1")
    out: dict[int, int] = {}
    for f in (2, 3):
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
    f = 5
    step = 2
    while f * f <= n:
        if n % f == 0:
            while n % f == 0:
                out[f] = out.get(f, 0) + 1
                n //= f
            if is_prime(n):
                break
        elif f == 5 and is_prime(n):
            break
        f += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _cyclotomic_value(d: int, p: int) -> int:
    """Phi_d(p) via Phi_d(p) * prod_{e | d, e < d} Phi_e(p) = p^d - 1."""
    num = p**d - 1
    for e in _divisors(d)[:-1]:
        num //= _cyclotomic_value(e, p)
    return num


def factor_power_minus_one(p: int, m: int, max_bits: int | None | str = _BOUND) -> dict[int, int]:
    """Factor p^m - 1 through its cyclotomic pieces.

    A prime factor of Phi_d(p) either divides d or is 1 mod d, so trial
    division on each piece only visits that residue class.
    """
    if max_bits == _BOUND:
        max_bits = max_field_bits()
    n = p**m - 1
    if max_bits is not None and n > (1 << max_bits) - 1:
        raise FieldSizeError(f"{p}^{m}-1 exceeds the factorization bound 2^{max_bits}-1")
    out: dict[int, int] = {}

    def add(q: int, e: int = 1) -> None:
        out[q] = out.get(q, 0) + e

    for d in _divisors(m):
        c = _cyclotomic_value(d, p)
        for q in factorize(d, None):
            while c % q == 0:
                add(q)
                c //= q
        step = d if d % 2 == 0 else 2 * d
        f = 1 + step
        while c > 1 and f * f <= c:
            if is_prime(c):
                break
            while c % f == 0:
                for q, e in factorize(f, None).items():
                    add(q, e)
                c //= f
            f += step
        if c > 1:
            for q, e in (factorize(c, None) if not is_prime(c) else {c: 1}).items():
                add(q, e)
    return dict(sorted(out.items()))


def multiplicative_order(a: int, n: int) -> int:
    """ord_n(a), the least k >= 1 with a^k = 1 mod n (gcd(a, n) = 1)."""
    if n == 1:
        return 1
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    phi = 1
    for q, e in factorize(n, None).items():
        phi *= (q - 1) * q ** (e - 1)
    k = phi
    for q in factorize(phi, None):
        while k % q == 0 and pow(a, k // q, n) == 1:
            k //= q
    return k


def p_adic_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _power_of(q: int, p: int) -> int | None:
    """k with q = p^k, k >= 1, else None."""
    k = 0
    while q > 1 and q % p == 0:
        q //= p
        k += 1
    return k if q == 1 and k >= 1 else None


# ------------------------------------------------ GF(p)[x] for modulus search


def _gf2_mul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _gf2_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2_mod(a, b)
    return a


def _gf2_irreducible(m: int) -> bool:
    r = m.bit_length() - 1
    h = 2
    for _ in range(r // 2):
        h = _gf2_mod(_gf2_mul(h, h), m)
        if _gf2_gcd(m, h ^ 2) != 1:
            return False
    return True


def _fp_trim(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if len(nz) else a[:0]


def _fp_mod(a: np.ndarray, m: np.ndarray, p: int) -> np.ndarray:
    """a mod m over GF(p); m need not be monic."""
    a = a.copy() % p
    dm = len(m) - 1
    inv_lc = pow(int(m[-1]), p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        t = a[i]
        if t:
            a[i - dm : i + 1] = (a[i - dm : i + 1] - (t * inv_lc % p) * m) % p
    return _fp_trim(a[:dm])


def _fp_mulmod(a: np.ndarray, b: np.ndarray, m: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    return _fp_mod(np.convolve(a, b) % p, m, p)


def _fp_powmod(a: np.ndarray, e: int, m: np.ndarray, p: int) -> np.ndarray:
    result = np.array([1], dtype=np.int64)
    base = _fp_mod(a, m, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _fp_mulmod(base, base, m, p)
    return result


def _fp_gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a, b = _fp_trim(a % p), _fp_trim(b % p)
    while len(b):
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_irreducible(m: Sequence[int], p: int) -> bool:
    mm = np.array(m, dtype=np.int64)
    r = len(m) - 1
    if r >= 2:
        for c in range(p):
            if sum(int(mi) * pow(c, i, p) for i, mi in enumerate(m)) % p == 0:
                return False
    x = np.array([0, 1], dtype=np.int64)
    h = x
    for _ in range(r // 2):
        h = _fp_powmod(h, p, mm, p)
        diff = h.copy() if len(h) >= 2 else np.concatenate([h, np.zeros(2 - len(h), np.int64)])
        diff[1] = (diff[1] - 1) % p
        if len(_fp_gcd(mm, diff, p)) > 1:
            return False
    return True


def _least_irreducible(p: int, r: int) -> tuple[int, ...]:
    if r == 1:
        return (0, 1)
    for t in range(p**r):
        low = [(t // p**i) % p for i in range(r)]
        if low[0] == 0:
            continue
        if p == 2:
            if (sum(low) + 1) % 2 == 0:  # x = 1 is a root
                continue
            m = sum(c << i for i, c in enumerate(low)) | (1 << r)
            if _gf2_irreducible(m):
                return tuple(low) + (1,)
        elif _fp_irreducible(low + [1], p):
            return tuple(low) + (1,)
    raise AssertionError(f"no irreducible of degree {r} over GF({p})")


# ------------------------------------------------------------------ fields


@dataclass(frozen=True)
class Field:
    p: int
    r: int
    modulus: tuple[int, ...]

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.r})" if self.r > 1 else f"GF({self.p})"

    @property
    def order(self) -> int:
        return self.p**self.r

    @cached_property
    def _red(self) -> np.ndarray:
        """Row i holds X^(r+i) mod m, i = 0..r-2."""
        r, p = self.r, self.p
        red = np.zeros((max(r - 1, 0), r), dtype=np.int64)
        if r == 1:
            return red
        cur = [(-c) % p for c in self.modulus[:r]]  # X^r
        for i in range(r - 1):
            red[i] = cur
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * mc) % p for c, mc in zip(cur, self.modulus[:r])]
        return red

    @cached_property
    def _red_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self._red)

    # -- construction

    def __call__(self, value: int | Sequence[int] | FieldElem) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldMismatchError(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElem(self, (int(value) % self.p,) + (0,) * (self.r - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.r:
            raise FieldError(f"{len(coeffs)} coefficients for a degree-{self.r} field")
        return FieldElem(self, tuple(coeffs) + (0,) * (self.r - len(coeffs)))

    @property
    def zero(self) -> FieldElem:
        return self(0)

    @property
    def one(self) -> FieldElem:
        return self(1)

    @property
    def gen(self) -> FieldElem:
        """The residue class of X (for r = 1 this is 0, the root of m = x)."""
        return self([0, 1]) if self.r > 1 else self(0)

    def element(self, index: int) -> FieldElem:
        """Element number ``index`` in enumeration order (base-p digits, low first)."""
        if not 0 <= index < self.order:
            raise FieldError(f"index {index} out of range for {self!r}")
        return self([(index // self.p**i) % self.p for i in range(self.r)])

    def elements(self) -> Iterator[FieldElem]:
        for i in range(self.order):
            yield self.element(i)

    def to_json(self) -> dict:
        return {"p": self.p, "r": self.r, "modulus": list(self.modulus)}

    # -- tuple arithmetic

    def _add(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _mul(self, a: tuple, b: tuple) -> tuple:
        p, r = self.p, self.r
        if r == 1:
            return ((a[0] * b[0]) % p,)
        if r >= 12:
            return tuple(int(v) for v in self.arr_mul(np.array(a), np.array(b)))
        c = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        out = c[:r]
        for i, t in enumerate(c[r:]):
            t %= p
            if t:
                row = self._red_rows[i]
                for j in range(r):
                    out[j] += t * row[j]
        return tuple(v % p for v in out)

    def _pow(self, a: tuple, e: int) -> tuple:
        if e < 0:
            a, e = self._inv(a), -e
        result = self.one.coeffs
        while e:
            if e & 1:
                result = self._mul(result, a)
            e >>= 1
            if e:
                a = self._mul(a, a)
        return result

    def _inv(self, a: tuple) -> tuple:
        if not any(a):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._pow(a, self.order - 2)

    # -- array arithmetic, shape (..., r)

    def arr(self, elems: Iterable[FieldElem | int]) -> np.ndarray:
        rows = [self(e).coeffs for e in elems]
        return np.array(rows, dtype=np.int64).reshape(len(rows), self.r)

    def elems(self, a: np.ndarray) -> list[FieldElem]:
        a = np.asarray(a).reshape(-1, self.r)
        return [FieldElem(self, tuple(int(v) for v in row)) for row in a]

    def arr_reduce(self, c: np.ndarray) -> np.ndarray:
        """Reduce (..., 2r-1) product coefficients to (..., r)."""
        r, p = self.r, self.p
        c = c % p
        if r == 1:
            return c
        return (c[..., :r] + c[..., r:] @ self._red) % p

    def arr_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise (broadcasting) product."""
        r = self.r
        if r == 1:
            return (a * b) % self.p
        shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
        c = np.zeros(shape + (2 * r - 1,), dtype=np.int64)
        for i in range(r):
            c[..., i : i + r] += a[..., i : i + 1] * b
        return self.arr_reduce(c)

    def arr_pow(self, a: np.ndarray, e: int) -> np.ndarray:
        result = np.zeros_like(a)
        result[..., 0] = 1
        base = a.copy()
        while e:
            if e & 1:
                result = self.arr_mul(result, base)
            e >>= 1
            if e:
                base = self.arr_mul(base, base)
        return result

    def mul_matrix(self, x: FieldElem) -> np.ndarray:
        """r x r matrix M with (coeff row of y) @ M = coeff row of y*x."""
        x = self(x)
        rows = np.zeros((self.r, self.r), dtype=np.int64)
        cur = x.coeffs
        xgen = self.gen.coeffs if self.r > 1 else None
        for i in range(self.r):
            rows[i] = cur
            if xgen is not None:
                cur = self._mul(cur, xgen)
        return rows

    def arr_scale(self, a: np.ndarray, x: FieldElem) -> np.ndarray:
        """Multiply every element of ``a`` by the scalar ``x``."""
        if self.r == 1:
            return (a * self(x).coeffs[0]) % self.p
        return (a @ self.mul_matrix(x)) % self.p

    def arr_is_zero(self, a: np.ndarray) -> np.ndarray:
        return ~np.any(a, axis=-1)


@dataclass(frozen=True)
class FieldElem:
    field: Field
    coeffs: tuple[int, ...]

    def _other(self, other) -> tuple:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}; embed explicitly")
            return other.coeffs
        if isinstance(other, (int, np.integer)):
            return self.field(int(other)).coeffs
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._add(self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._sub(self.coeffs, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._sub(o, self.coeffs))

    def __neg__(self):
        return FieldElem(self.field, tuple((-c) % self.field.p for c in self.coeffs))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._mul(self.coeffs, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._mul(self.coeffs, self.field._inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._mul(o, self.field._inv(self.coeffs)))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field._pow(self.coeffs, e))

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field._inv(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            return self.coeffs == self.field(int(other)).coeffs
        if isinstance(other, FieldElem):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def to_int(self) -> int:
        """Enumeration index: sum of c_i p^i."""
        p = self.field.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"{self.field!r}[{self}]"


def parse_elem(field: Field, text: str | Sequence[int] | int) -> FieldElem:
    """Inverse of ``str(elem)``; also accepts a coefficient list or an int."""
    if isinstance(text, str):
        return field([int(t) for t in text.split(",") if t.strip()])
    return field(text)


# --------------------------------------------------------------- operations


@lru_cache(maxsize=None)
def make_field(p: int, r: int) -> Field:
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if r < 1:
        raise FieldError(f"extension degree must be >= 1, got {r}")
    return Field(p, r, _least_irreducible(p, r))


def field_from_json(d: dict) -> Field:
    F = make_field(int(d["p"]), int(d.get("r", 1)))
    if "modulus" in d and tuple(d["modulus"]) != F.modulus:
        raise FieldError(f"modulus {d['modulus']} is not the canonical one {list(F.modulus)}")
    return F


def _has_order(x: FieldElem, n: int) -> bool:
    if not (x**n).is_one():
        return False
    return all(not (x ** (n // q)).is_one() for q in factorize(n, None))


def order_dividing(x: FieldElem, n: int) -> int:
    """Order of x given that x^n = 1 (only n is factored)."""
    if not (x**n).is_one():
        raise FieldError(f"{x!r}^{n} != 1")
    k = n
    for q in factorize(n, None):
        while k % q == 0 and (x ** (k // q)).is_one():
            k //= q
    return k


@lru_cache(maxsize=None)
def root_of_unity(p: int, n: int) -> tuple[Field, FieldElem]:
    """A primitive n-th root of unity in GF(p^m), m = ord_n(p)."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if n < 1 or n % p == 0:
        raise FieldError(f"no primitive {n}-th root of unity in characteristic {p}")
    F = make_field(p, multiplicative_order(p, n))
    cofactor = (F.order - 1) // n
    for idx in range(1, F.order):
        z = F.element(idx) ** cofactor
        if _has_order(z, n):
            return F, z
    raise AssertionError("unreachable: GF(p^m)^x is cyclic")


def frobenius(x: FieldElem, q: int) -> FieldElem:
    k = _power_of(q, x.field.p)
    if k is None:
        raise FieldError(f"{q} is not a power of the characteristic {x.field.p}")
    return x ** (x.field.p ** (k % x.field.r))


def element_order(x: FieldElem, max_bits: int | None | str = _BOUND) -> int:
    if x.is_zero():
        raise FieldError("zero has no multiplicative order")
    n = x.field.order - 1
    k = n
    for q in factor_power_minus_one(x.field.p, x.field.r, max_bits):
        while k % q == 0 and (x ** (k // q)).is_one():
            k //= q
    return k


def subfield_degree(x: FieldElem) -> int:
    """Degree over GF(p) of the field generated by x."""
    F = x.field
    for d in range(1, F.r + 1):
        if F.r % d == 0 and x ** (F.p**d) == x:
            return d
    raise AssertionError("unreachable")


def trace_to(x: FieldElem, subdegree: int) -> FieldElem:
    F = x.field
    if subdegree < 1 or F.r % subdegree:
        raise FieldError(f"{subdegree} does not divide the degree {F.r} of {F!r}")
    q = F.p**subdegree
    total, y = F.zero, x
    for _ in range(F.r // subdegree):
        total = total + y
        y = y**q
    return total


# ---------------------------------------------------------------- embedding


@dataclass(frozen=True)
class Embedding:
    source: Field
    target: Field
    image_of_gen: FieldElem
    matrix: np.ndarray  # source.r x target.r; row i = image of X^i

    def __call__(self, x: FieldElem) -> FieldElem:
        if x.field != self.source:
            raise FieldMismatchError(f"{x!r} is not in {self.source!r}")
        return FieldElem(self.target, tuple(int(v) for v in self.apply(np.array(x.coeffs))))

    def apply(self, a: np.ndarray) -> np.ndarray:
        return (a @ self.matrix) % self.source.p

    @cached_property
    def _section(self) -> tuple[np.ndarray, np.ndarray]:
        """Columns and inverse used to pull target coefficients back to the source."""
        return _left_inverse(self.matrix, self.source.p)

    def preimage(self, y: FieldElem) -> FieldElem:
        """Inverse image of ``y``; raises if y is not in the embedded subfield."""
        out = self.preimage_arr(np.array(y.coeffs, dtype=np.int64)[None, :])
        return FieldElem(self.source, tuple(int(v) for v in out[0]))

    def preimage_arr(self, a: np.ndarray) -> np.ndarray:
        cols, inv = self._section
        x = (a[..., cols] @ inv) % self.source.p
        if not np.array_equal(self.apply(x), a % self.source.p):
            raise FieldError(f"value outside the image of {self.source!r} in {self.target!r}")
        return x


def _left_inverse(E: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Pick r independent columns of the r x R matrix E and invert that block mod p."""
    r = E.shape[0]
    A = E.T.copy() % p  # R x r, rows are candidate columns
    chosen: list[int] = []
    basis = np.zeros((0, r), dtype=np.int64)
    for i in range(A.shape[0]):
        trial = np.vstack([basis, A[i]])
        if _rank_mod_p(trial, p) > len(chosen):
            chosen.append(i)
            basis = trial
            if len(chosen) == r:
                break
    block = E[:, chosen] % p  # r x r
    return np.array(chosen), _inv_mod_p(block, p)


def _rank_mod_p(A: np.ndarray, p: int) -> int:
    A = A.copy() % p
    rank = 0
    rows, cols = A.shape
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if A[i, c]), None)
        if piv is None:
            continue
        A[[rank, piv]] = A[[piv, rank]]
        A[rank] = (A[rank] * pow(int(A[rank, c]), p - 2, p)) % p
        for i in range(rows):
            if i != rank and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[rank]) % p
        rank += 1
    return rank


def _inv_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    n = A.shape[0]
    M = np.hstack([A % p, np.eye(n, dtype=np.int64)])
    for c in range(n):
        piv = next(i for i in range(c, n) if M[i, c])
        M[[c, piv]] = M[[piv, c]]
        M[c] = (M[c] * pow(int(M[c, c]), p - 2, p)) % p
        for i in range(n):
            if i != c and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[c]) % p
    return M[:, n:]


_EMBED_LOCK = threading.Lock()
_EMBEDDINGS: dict[tuple[Field, Field], Embedding] = {}


def field_roots(coeffs: Sequence[FieldElem], F: Field) -> list[FieldElem]:
    """Distinct roots in F of the polynomial with the given coefficients (low-to-high)."""
    from .poly import Poly, poly_roots

    return poly_roots(Poly(F, coeffs))


def get_embedding(source: Field, target: Field) -> Embedding:
    if source.p != target.p:
        raise FieldError(f"cannot embed {source!r} into {target!r}: characteristics differ")
    if target.r % source.r:
        raise FieldError(f"cannot embed {source!r} into {target!r}: {source.r} does not divide {target.r}")
    key = (source, target)
    emb = _EMBEDDINGS.get(key)
    if emb is not None:
        return emb
    if source.r == 1:
        rho = target.zero
    else:
        modulus = [target(c) for c in source.modulus]
        roots = field_roots(modulus, target)
        rho = min(roots, key=FieldElem.to_int)
    rows = np.zeros((source.r, target.r), dtype=np.int64)
    cur = target.one
    for i in range(source.r):
        rows[i] = cur.coeffs
        cur = cur * rho
    emb = Embedding(source, target, rho, rows)
    with _EMBED_LOCK:
        _EMBEDDINGS.setdefault(key, emb)
    return _EMBEDDINGS[key]


def embed(x: FieldElem, target: Field) -> FieldElem:
    if x.field == target:
        return x
    return get_embedding(x.field, target)(x)


def common_field(*fields: Field) -> Field:
    """The smallest field in the canonical family containing all of ``fields``."""
    ps = {F.p for F in fields}
    if len(ps) != 1:
        raise FieldError(f"mixed characteristics {sorted(ps)}")
    r = 1
    for F in fields:
        r = r * F.r // math.gcd(r, F.r)
    return make_field(ps.pop(), r)


def random_elem(F: Field, rng: random.Random, nonzero: bool = False) -> FieldElem:
    lo = 1 if nonzero else 0
    return F.element(rng.randrange(lo, F.order))
