import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from convlat.conv import (
    ConvError,
    charpoly,
    convolve,
    dynamic_test,
    evolve,
    kernel_basis,
    kernel_dimension,
    kernel_projector,
    lights_out_solve,
    odd_period_reduction,
    operator_matrix,
    projector_matrix,
    q0_of,
    rank1_period,
    z_kernel_on_cycle,
)
from convlat.ff import make_field
from convlat.fourier import FourierError, form1
from convlat.lattice import AbelianGroup, GroupFunction, KernelSpec, pushforward
from convlat.linalg import rank
from convlat.poly import Poly, root_multiplicity

from helpers import brute_kernel_elements, pfree_orders, random_function, random_kernel

GF2 = make_field(2, 1)


def aplus_on(orders, F=GF2):
    G = AbelianGroup.torus(orders)
    return pushforward(KernelSpec.a_plus(len(orders), F), G)


def test_convolution_examples():
    rng = random.Random(0)
    G = AbelianGroup.torus((3, 4))
    F = make_field(3, 1)
    f = random_function(rng, G, F)
    e = GroupFunction.delta(G, F)
    assert convolve(f, e) == f
    g, h = (1, 2), (2, 3)
    assert convolve(GroupFunction.delta(G, F, g), GroupFunction.delta(G, F, h)) == GroupFunction.delta(G, F, (0, 1))
    a = random_function(rng, G, F)
    ones = GroupFunction.constant(G, F.one)
    assert convolve(ones, a) == GroupFunction.constant(G, a.total())


def test_operator_matrix_examples():
    G = AbelianGroup.torus((3,))
    M = operator_matrix(GroupFunction.delta(G, GF2))
    assert np.array_equal(M[..., 0], np.eye(3, dtype=np.int64))
    assert np.all(operator_matrix(aplus_on((3,)))[..., 0] == 1)


@given(st.sampled_from([(2, 1), (3, 1), (2, 2)]), st.randoms(use_true_random=False))
def test_operator_matrix_acts_by_convolution(pr, rnd):
    F = make_field(*pr)
    G = AbelianGroup.torus((rnd.randint(1, 4), rnd.randint(1, 4)))
    f, a, b = (random_function(rnd, G, F) for _ in range(3))
    M = operator_matrix(a)
    out = np.zeros((G.order, F.r), dtype=np.int64)
    for j in range(G.order):
        out = (out + F.arr_mul(M[:, j], np.broadcast_to(f.values[j], (G.order, F.r)))) % F.p
    assert np.array_equal(out, convolve(f, a).values)
    # Delta_a after Delta_b is Delta_{b * a}
    assert convolve(convolve(f, b), a) == convolve(f, convolve(b, a))
    assert convolve(f, a) == convolve(a, f)


def test_charpoly_examples():
    x = Poly.x(GF2)
    one = Poly.const(GF2, 1)
    assert charpoly(aplus_on((4,))) == (x + one) ** 4
    assert charpoly(aplus_on((3,))) == x * x * (x + one)


@given(st.sampled_from([(2, (2, 4)), (3, (3, 3)), (2, (8,)), (5, (5,))]), st.randoms(use_true_random=False))
def test_charpoly_on_p_group(case, rnd):
    p, orders = case
    F = make_field(p, 1)
    a = random_kernel(rnd, F, len(orders))
    G = AbelianGroup.torus(orders)
    a_ = pushforward(a, G)
    x = Poly.x(F)
    assert charpoly(a_) == (x - Poly.const(F, a.norm)) ** G.order


@given(st.sampled_from([(2, 3, 4), (2, 5, 2), (3, 2, 3), (2, 7, 2)]), st.randoms(use_true_random=False))
def test_charpoly_splits_off_p_part(case, rnd):
    p, m, h = case
    F = make_field(p, 1)
    a = random_kernel(rnd, F, 2)
    full = charpoly(pushforward(a, AbelianGroup.torus((m, h))))
    reduced = charpoly(pushforward(a, AbelianGroup.torus((m, 1))))
    assert full == reduced**h


def test_kernel_basis_examples():
    G = AbelianGroup.torus((4,))
    assert kernel_basis(GroupFunction.delta(G, GF2)) == []
    assert len(kernel_basis(aplus_on((3,)))) == 2
    assert kernel_dimension(aplus_on((5, 5))) == 8


def test_ctrex_kernel_vs_multiplicity():
    a = aplus_on((4,))
    G = a.group
    # eigenvalue 1: kernel of Delta_a + 1 = Delta_{a + delta}
    b = a + GroupFunction.delta(G, GF2)
    assert kernel_dimension(b) == 2
    assert root_multiplicity(charpoly(a), 1) == 4


@given(st.sampled_from([(2, 1), (3, 1), (5, 1)]), st.randoms(use_true_random=False))
def test_kernel_dimension_vs_multiplicity(pr, rnd):
    F = make_field(*pr)
    orders = (rnd.randint(1, 6), rnd.randint(1, 6))
    a = pushforward(random_kernel(rnd, F, 2), AbelianGroup.torus(orders))
    d = kernel_dimension(a)
    m = root_multiplicity(charpoly(a), 0)
    assert d <= m
    if all(n % F.p for n in orders):
        assert d == m


@given(st.sampled_from([(2, 1), (3, 1)]), st.randoms(use_true_random=False))
def test_kernel_basis_vs_enumeration(pr, rnd):
    F = make_field(*pr)
    G = AbelianGroup.torus((rnd.randint(1, 3), rnd.randint(1, 3)))
    a = pushforward(random_kernel(rnd, F, 2), G)
    brute = sum(1 for _ in brute_kernel_elements(a))
    assert brute == F.p ** len(kernel_basis(a))


def test_q0_examples():
    assert q0_of(aplus_on((3,))) == 2
    F4 = make_field(2, 2)
    G = AbelianGroup.torus((3,))
    a = GroupFunction.from_elems(G, [F4.zero, F4.one, F4.zero], F4)
    assert q0_of(a) == 4
    assert q0_of(GroupFunction.delta(G, make_field(5, 1))) == 5


def test_projector_examples():
    G = AbelianGroup.torus((3,))
    assert kernel_projector(GroupFunction.delta(G, GF2)).is_zero()
    a = aplus_on((3,))
    pi = kernel_projector(a)
    assert pi == GroupFunction.delta(G, GF2) + a
    assert rank(GF2, projector_matrix(a)) == 2
    with pytest.raises(FourierError):
        kernel_projector(aplus_on((4,)))


@given(st.sampled_from([(2, 1), (3, 1), (2, 2)]), st.randoms(use_true_random=False))
def test_projector_properties(pr, rnd):
    F = make_field(*pr)
    orders = pfree_orders(rnd, F.p, 2, 40)
    G = AbelianGroup.torus(orders)
    cortege = [pushforward(random_kernel(rnd, F, 2), G) for _ in range(rnd.randint(1, 2))]
    pi = kernel_projector(cortege)
    assert convolve(pi, pi) == pi
    assert rank(F, operator_matrix(pi)) == kernel_dimension(cortege)
    f, g = random_function(rnd, G, F), random_function(rnd, G, F)
    for a in cortege:
        assert convolve(convolve(f, pi), a).is_zero()
    assert form1(convolve(f, pi), g) == form1(f, convolve(g, pi))


def test_dynamic_test_examples():
    assert dynamic_test(aplus_on((3,))) == (True, 1)
    h, l = dynamic_test(aplus_on((5,)))
    assert not h and (q0_of(aplus_on((5,))) - 1) % l == 0
    assert dynamic_test(GroupFunction.delta(AbelianGroup.torus((5,)), GF2)) == (False, 1)
    with pytest.raises(FourierError):
        dynamic_test(aplus_on((6,)))


@given(st.sampled_from([(2, 1), (3, 1), (2, 2)]), st.randoms(use_true_random=False))
def test_dynamic_test_against_orbit(pr, rnd):
    F = make_field(*pr)
    G = AbelianGroup.torus(pfree_orders(rnd, F.p, 2, 30))
    a = pushforward(random_kernel(rnd, F, 2), G)
    if a.is_zero():
        return
    h, l = dynamic_test(a)
    assert h == (kernel_dimension(a) > 0)
    # brute-force truncated period of k -> a^{*k}, k >= 1
    seen = {}
    cur = a
    k = 1
    while cur.values.tobytes() not in seen:
        seen[cur.values.tobytes()] = k
        cur = convolve(cur, a)
        k += 1
    start = seen[cur.values.tobytes()]
    assert start == 1
    assert k - start == l


def test_rank1_period_examples():
    assert rank1_period(KernelSpec.a_plus(1, GF2)) == 3
    assert rank1_period(KernelSpec(GF2, 1, {(0,): 1, (1,): 1})) == 1
    assert rank1_period(KernelSpec.delta((0,), GF2)) == 1
    with pytest.raises(ConvError):
        rank1_period(KernelSpec(GF2, 1, {}))


@given(st.sampled_from([(2, 1), (3, 1)]), st.randoms(use_true_random=False))
def test_rank1_kernels_are_periodic(pr, rnd):
    F = make_field(*pr)
    a = random_kernel(rnd, F, 1, radius=2)
    m = rank1_period(a)
    if m > 12:
        return
    for k in (1, 2):
        for f in z_kernel_on_cycle(a, m * k):
            assert f.translate((m,)) == f


def test_odd_period_reduction_examples():
    G = AbelianGroup.torus((4,))
    c = GroupFunction.constant(G, GF2.one)
    assert odd_period_reduction(c, (1,)) == c
    f = GroupFunction.from_elems(G, [1, 0, 1, 0], GF2)
    assert odd_period_reduction(f, (1,)) == c
    with pytest.raises(ConvError):
        odd_period_reduction(GroupFunction.from_elems(G, [1, 0, 0, 0], GF2), (1,))


def test_odd_period_reduction_terminates_at_odd_index():
    rng = random.Random(3)
    G = AbelianGroup.torus((8,))
    for _ in range(20):
        f = random_function(rng, G, GF2)
        if f.is_zero():
            continue
        v = 8
        h = f
        while v % 2 == 0:
            v //= 2
            if h.translate((v,)) != h:
                h = odd_period_reduction(h, (v,))
            assert not h.is_zero() and h.translate((v,)) == h
        assert v == 1


def test_lights_out_examples():
    G = AbelianGroup.torus((3, 3))
    zero = GroupFunction(G, GF2, np.zeros((9, 1), np.int64))
    assert lights_out_solve(zero).moves.is_zero()
    G2 = AbelianGroup.torus((2, 2))
    rng = random.Random(1)
    for _ in range(5):
        f = random_function(rng, G2, GF2)
        assert lights_out_solve(f).moves == f
    unwinnable = [f for f in (random_function(rng, G, GF2) for _ in range(20)) if not lights_out_solve(f).winnable]
    assert unwinnable


@given(st.integers(1, 8), st.integers(1, 8), st.randoms(use_true_random=False))
def test_lights_out_soundness(m, n, rnd):
    G = AbelianGroup.torus((m, n))
    a = aplus_on((m, n))
    f0 = random_function(rnd, G, GF2)
    res = lights_out_solve(f0)
    if res.winnable:
        assert convolve(res.moves, a) == f0
    else:
        h = res.certificate
        assert convolve(h, a).is_zero()
        assert int(np.sum(h.values * f0.values)) % 2 == 1


def test_evolve_cycle():
    G = AbelianGroup.torus((3, 3))
    f = GroupFunction.delta(G, GF2)
    a = aplus_on((3, 3))
    orb = evolve(f, a)
    states = list(orb.states)
    nxt = convolve(states[-1], a)
    assert nxt == states[orb.preperiod]
    assert len(states) == orb.preperiod + orb.period
    # one step is f + Delta_{a - delta} f
    step = states[0] + convolve(states[0], a - GroupFunction.delta(G, GF2))
    assert step == states[1] if len(states) > 1 else step == states[0]
