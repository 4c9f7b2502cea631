"""Random instance generators and brute-force oracles shared by the tests."""

from __future__ import annotations

import itertools
import math
import random

import numpy as np
from hypothesis import strategies as st

from convlat.ff import Field, make_field, random_elem
from convlat.lattice import AbelianGroup, GroupFunction, KernelSpec

SMALL_FIELDS = [(2, 1), (2, 2), (3, 1), (5, 1), (2, 3), (3, 2)]


def fields():
    return st.sampled_from(SMALL_FIELDS).map(lambda pr: make_field(*pr))


def random_kernel(rng: random.Random, F: Field, rank: int, radius: int = 2, size: int = 4) -> KernelSpec:
    terms = {}
    for _ in range(rng.randint(1, size)):
        off = tuple(rng.randint(-radius, radius) for _ in range(rank))
        terms[off] = random_elem(F, rng, nonzero=True)
    return KernelSpec(F, rank, terms)


def random_function(rng: random.Random, G: AbelianGroup, F: Field) -> GroupFunction:
    return GroupFunction.from_elems(G, [random_elem(F, rng) for _ in range(G.order)], F)


def pfree_orders(rng: random.Random, p: int, s: int, max_prod: int) -> tuple[int, ...]:
    while True:
        n = tuple(rng.randint(1, 15) for _ in range(s))
        if all(x % p for x in n) and math.prod(n) <= max_prod:
            return n


def brute_kernel_elements(a: GroupFunction):
    """Every f in ker(f -> f * a), by enumeration over a prime field."""
    from convlat.conv import convolve

    G, F = a.group, a.field
    assert F.r == 1
    for vals in itertools.product(range(F.p), repeat=G.order):
        f = GroupFunction(G, F, np.array(vals, dtype=np.int64).reshape(-1, 1))
        if convolve(f, a).is_zero():
            yield f


def leibniz_det_poly(F: Field, M):
    """det(xI - M) by expansion over permutations; a slow oracle for tiny matrices."""
    from convlat.poly import Poly

    n = len(M)
    x = Poly.x(F)
    total = Poly(F)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Poly.const(F, 1)
        for i in range(n):
            entry = Poly.const(F, -M[i][perm[i]])
            if perm[i] == i:
                entry = entry + x
            term = term * entry
        total = total + term if inv % 2 == 0 else total - term
    return total


def random_chain(rng: random.Random, max_index: int = 60):
    """(L1, L2) with L1 inside L2, both full rank 2, index of L1 at most max_index."""
    from convlat.lattice import Sublattice

    while True:
        a, d = rng.randint(1, 4), rng.randint(1, 4)
        L2 = Sublattice.from_columns([[a, 0], [rng.randint(0, a), d]])
        M = [[rng.randint(1, 3), rng.randint(0, 2)], [0, rng.randint(1, 3)]]
        cols = L2.columns
        L1 = Sublattice.from_columns(
            [[sum(cols[k][i] * M[k][j] for k in range(2)) for i in range(2)] for j in range(2)]
        )
        if L1.index <= max_index:
            return L1, L2
