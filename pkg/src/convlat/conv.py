"""Convolution operators f -> f * a on finite abelian groups.

(f * a)(g) = sum_h f(h) a(g - h).  Operators stay implicit (a kernel function)
unless a characteristic polynomial or an elimination needs the matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .ff import Field, FieldElem, common_field, factorize, subfield_degree
from .lattice import AbelianGroup, GroupFunction, KernelSpec, pushforward
from .linalg import nullspace, rank, solve
from .poly import Poly, charpoly_array

__all__ = [
    "GroupFunction",
    "ConvOperator",
    "convolve",
    "convolve_power",
    "operator_matrix",
    "charpoly",
    "kernel_basis",
    "kernel_dimension",
    "q0_of",
    "kernel_projector",
    "projector_matrix",
    "dynamic_test",
    "rank1_period",
    "odd_period_reduction",
    "lights_out_solve",
    "LightsOutResult",
    "evolve",
]

DENSE_LIMIT = 1500


class ConvError(ValueError):
    pass


def _same(f: GroupFunction, a: GroupFunction) -> None:
    if f.group != a.group:
        raise ConvError(f"group mismatch: {f.group.orders} vs {a.group.orders}")
    if f.field != a.field:
        raise ConvError(f"field mismatch: {f.field!r} vs {a.field!r}")


def _diff_index(G: AbelianGroup) -> np.ndarray:
    """D[g, h] = index of g - h."""
    C = G.coords
    return G.index_of((C[:, None, :] - C[None, :, :]).reshape(-1, G.k)).reshape(G.order, G.order)


def convolve(f: GroupFunction, a: GroupFunction) -> GroupFunction:
    _same(f, a)
    G, F = f.group, f.field
    nf = int(np.count_nonzero(np.any(f.values, axis=1)))
    na = int(np.count_nonzero(np.any(a.values, axis=1)))
    if nf > na:
        f, a = a, f
    out = np.zeros_like(f.values)
    for hi in np.flatnonzero(np.any(f.values, axis=1)):
        h = G.coords[hi]
        shifted = a.values[G.shift_perm(-h)]  # x -> a(x - h)
        fv = f.values[hi]
        if F.r == 1:
            out += int(fv[0]) * shifted
        else:
            out += F.arr_mul(shifted, fv[None, :])
        out %= F.p
    return GroupFunction(G, F, out)


def convolve_power(a: GroupFunction, k: int) -> GroupFunction:
    """a^{*k}; a^{*0} = delta_e."""
    if k < 0:
        raise ConvError("negative convolution power")
    result = GroupFunction.delta(a.group, a.field)
    base = a
    while k:
        if k & 1:
            result = convolve(result, base)
        k >>= 1
        if k:
            base = convolve(base, base)
    return result


def operator_matrix(a: GroupFunction) -> np.ndarray:
    """(|G|, |G|, r) array M with M[g, h] = a(g - h), so M vec(f) = vec(f * a)."""
    return a.values[_diff_index(a.group)]


def matrix_as_elems(M: np.ndarray, F: Field) -> list[list[FieldElem]]:
    return [F.elems(row) for row in M]


@dataclass(frozen=True)
class ConvOperator:
    kernel: GroupFunction

    @property
    def group(self) -> AbelianGroup:
        return self.kernel.group

    def __call__(self, f: GroupFunction) -> GroupFunction:
        return convolve(f, self.kernel)

    def matrix(self) -> np.ndarray:
        return operator_matrix(self.kernel)

    def compose(self, other: ConvOperator) -> ConvOperator:
        """self after other: f -> (f * b) * a."""
        return ConvOperator(convolve(other.kernel, self.kernel))

    def power(self, k: int) -> ConvOperator:
        return ConvOperator(convolve_power(self.kernel, k))


def charpoly(a: GroupFunction) -> Poly:
    """det(x - Delta_a) from the operator matrix (any group order)."""
    return charpoly_array(a.field, operator_matrix(a))


def _cortege_funcs(cortege) -> tuple[GroupFunction, ...]:
    if isinstance(cortege, GroupFunction):
        return (cortege,)
    funcs = tuple(cortege)
    if not funcs:
        raise ConvError("empty cortege")
    G = funcs[0].group
    if any(f.group != G for f in funcs):
        raise ConvError("kernels live on different groups")
    F = common_field(*(f.field for f in funcs))
    return tuple(f.embed(F) for f in funcs)


def kernel_basis(cortege) -> list[GroupFunction]:
    """Basis of the common kernel of f -> f * a_j."""
    funcs = _cortege_funcs(cortege)
    G, F = funcs[0].group, funcs[0].field
    A = np.concatenate([operator_matrix(a) for a in funcs], axis=0)
    return [GroupFunction(G, F, row) for row in nullspace(F, A)]


def kernel_dimension(cortege) -> int:
    funcs = _cortege_funcs(cortege)
    F = funcs[0].field
    A = np.concatenate([operator_matrix(a) for a in funcs], axis=0)
    return funcs[0].group.order - rank(F, A)


# ------------------------------------------------------------ projector


def q0_of(cortege, hats: Sequence[GroupFunction] | None = None) -> int:
    """Least p^r0 (r0 >= 1) whose field contains every Fourier value of every a_j."""
    from .fourier import dft

    funcs = _cortege_funcs(cortege)
    p = funcs[0].field.p
    if hats is None:
        hats = [dft(a) for a in funcs]
    degs = [1]
    for h in hats:
        W = h.field
        seen = set()
        for row in h.values:
            key = row.tobytes()
            if key in seen:
                continue
            seen.add(key)
            degs.append(subfield_degree(FieldElem(W, tuple(int(x) for x in row))))
    return p ** max(1, reduce(math.lcm, degs, 1))


def kernel_projector(cortege) -> GroupFunction:
    """pi = prod_j (delta_e - a_j^{*(q0-1)}); f -> f * pi projects onto the common kernel."""
    from .fourier import _check_pfree

    funcs = _cortege_funcs(cortege)
    G, F = funcs[0].group, funcs[0].field
    _check_pfree(G.orders, F.p)
    q0 = q0_of(funcs)
    delta = GroupFunction.delta(G, F)
    pi = delta
    for a in funcs:
        pi = convolve(pi, delta - convolve_power(a, q0 - 1))
    return pi


def projector_matrix(cortege) -> np.ndarray:
    return operator_matrix(kernel_projector(cortege))


def dynamic_test(a: GroupFunction) -> tuple[bool, int]:
    """(harmonic characters exist, truncated period l of k -> a^{*k}, k >= 1)."""
    from .fourier import _check_pfree

    _check_pfree(a.group.orders, a.field.p)
    if a.is_zero():
        raise ConvError("kernel is zero")
    q0 = q0_of(a)
    delta = GroupFunction.delta(a.group, a.field)
    top = convolve_power(a, q0 - 1)
    harmonic = top != delta
    # l | q0 - 1 and a^{*(l+1)} = a; shrink q0 - 1 prime by prime
    l = q0 - 1
    for q in factorize(q0 - 1, None):
        while l % q == 0 and convolve_power(a, l // q + 1) == a:
            l //= q
    if convolve_power(a, l + 1) != a:
        raise AssertionError("truncated orbit is not periodic with period dividing q0 - 1")
    return harmonic, l


# ------------------------------------------------------------ rank one


def rank1_period(a: KernelSpec, max_iter: int = 10**7) -> int:
    """Common period of every a-harmonic function on Z: order of the transfer map."""
    if a.rank != 1:
        raise ConvError("rank1_period needs a kernel on Z")
    if a.is_zero():
        raise ConvError("kernel is zero")
    offs = sorted(k[0] for k in a.terms)
    lo, hi = offs[0], offs[-1]
    N = hi - lo
    if N == 0:
        return 1
    F = a.field
    # sum_k a(k) f(m - k) = 0; with j = hi - k the recurrence polynomial is sum_j a(hi - j) y^j
    coeffs = [a.terms.get((hi - j,), F.zero) for j in range(N + 1)]
    P = Poly(F, coeffs).monic()
    x = Poly.x(F) % P
    cur = x
    one = Poly.const(F, 1)
    for k in range(1, max_iter + 1):
        if cur == one:
            return k
        cur = (cur * x) % P
    raise ConvError(f"transfer map order exceeds the iteration bound {max_iter}")


def z_kernel_on_cycle(a: KernelSpec, m: int) -> list[GroupFunction]:
    G = AbelianGroup.torus((m,))
    return kernel_basis(pushforward(a, G))


# ------------------------------------------------------------ char 2 periods


def odd_period_reduction(f: GroupFunction, v: Sequence[int]) -> GroupFunction:
    """Nonzero h in the translation span of f with h = tau_v h, given 2v periodic for f."""
    if f.field.p != 2:
        raise ConvError("odd_period_reduction is a characteristic-2 construction")
    if f.is_zero():
        raise ConvError("f is zero")
    v = tuple(int(x) for x in v)
    if f.translate(tuple(2 * x for x in v)) != f:
        raise ConvError(f"2v = {tuple(2 * x for x in v)} is not a period of f")
    fv = f.translate(v)
    if fv == f:
        return f
    return f + fv


# ------------------------------------------------------------ Lights Out


@dataclass(frozen=True)
class LightsOutResult:
    moves: GroupFunction | None
    certificate: GroupFunction | None

    @property
    def winnable(self) -> bool:
        return self.moves is not None

    def to_json(self) -> dict:
        if self.moves is not None:
            return {"winnable": True, "moves": [list(g) for g in self.moves.support()]}
        return {"winnable": False, "certificate": [list(g) for g in self.certificate.support()]}


def lights_out_solve(f0: GroupFunction, kernel: GroupFunction | None = None) -> LightsOutResult:
    """Solve x * a = f0 over GF(2); a defaults to the star kernel on the torus."""
    G, F = f0.group, f0.field
    if F.p != 2 or F.r != 1:
        raise ConvError("the game is played over GF(2)")
    if kernel is None:
        kernel = pushforward(KernelSpec.a_plus(G.rank, F), G)
    M = operator_matrix(kernel)
    x, y = solve(F, M, f0.values)
    if x is not None:
        return LightsOutResult(GroupFunction(G, F, x), None)
    return LightsOutResult(None, GroupFunction(G, F, y))


# ------------------------------------------------------------ evolution


@dataclass(frozen=True)
class Orbit:
    states: tuple[GroupFunction, ...]
    preperiod: int
    period: int

    def to_json(self) -> dict:
        return {
            "preperiod": self.preperiod,
            "period": self.period,
            "states": [s.to_json()["values"] for s in self.states],
        }


def evolve(f: GroupFunction, a: GroupFunction, max_steps: int = 100000) -> Orbit:
    """Iterate f -> f + (f * (a - delta_e)) until a state repeats."""
    _same(f, a)
    step_kernel = a
    seen: dict[bytes, int] = {}
    states = []
    cur = f
    for t in range(max_steps + 1):
        key = cur.values.tobytes()
        if key in seen:
            start = seen[key]
            return Orbit(tuple(states), start, t - start)
        seen[key] = t
        states.append(cur)
        cur = convolve(cur, step_kernel)
    raise ConvError(f"no repetition within {max_steps} steps")
