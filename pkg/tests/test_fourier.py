
import numpy as np
import pytest
from hypothesis import given, strategies as st

from convlat.conv import charpoly, convolve, kernel_dimension
from convlat.ff import embed, make_field, multiplicative_order, root_of_unity
from convlat.fourier import (
    FourierError,
    character,
    character_from_vector,
    charpoly_pfree,
    direct_period_subgroup,
    dft,
    dq_orbits,
    form1,
    form2,
    harmonic_points,
    hat_via_symbol,
    idft,
    lifted_period_lattice,
    multi_order,
    period_lattice,
    period_subgroup,
    realize_charpoly,
    reconstruct_character,
    symbol,
    trace_kernel_basis,
    trace_of_character,
)
from convlat.lattice import AbelianGroup, GroupFunction, KernelSpec, Sublattice, parse_grid, pushforward
from convlat.linalg import rank
from convlat.poly import Poly, root_multiplicity

from helpers import pfree_orders, random_function, random_kernel

GF2 = make_field(2, 1)
APLUS2 = KernelSpec.a_plus(2, GF2)

pfree_fields = st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1)])


def _instance(rnd, pr, max_prod=40, s=None):
    F = make_field(*pr)
    s = s or rnd.randint(1, 2)
    orders = pfree_orders(rnd, F.p, s, max_prod)
    return F, AbelianGroup.torus(orders)


def test_dft_examples():
    G = AbelianGroup.torus((3, 5))
    d = dft(GroupFunction.delta(G, GF2))
    assert all(x.is_one() for x in d.elems())
    ones = GroupFunction.constant(G, GF2.one)
    dh = dft(ones)
    W = dh.field
    expect = [W(15 % 2) if i == 0 else W.zero for i in range(G.order)]
    assert dh.elems() == expect


@given(pfree_fields, st.randoms(use_true_random=False))
def test_dft_round_trip(pr, rnd):
    F, G = _instance(rnd, pr)
    f = random_function(rnd, G, F)
    assert idft(dft(f), target=F) == f


@given(pfree_fields, st.randoms(use_true_random=False))
def test_convolution_theorem(pr, rnd):
    F, G = _instance(rnd, pr)
    f, a = random_function(rnd, G, F), random_function(rnd, G, F)
    assert dft(convolve(f, a)) == dft(f).pointwise(dft(a))


@given(pfree_fields, st.randoms(use_true_random=False))
def test_parseval(pr, rnd):
    F, G = _instance(rnd, pr)
    f1, f2 = random_function(rnd, G, F), random_function(rnd, G, F)
    h1, h2 = dft(f1), dft(f2)
    assert form2(h1, h2) == embed(form1(f1, f2), h1.field)


@given(pfree_fields, st.randoms(use_true_random=False))
def test_characters_are_orthonormal(pr, rnd):
    F, G = _instance(rnd, pr, max_prod=20)
    ks = list(G.elements())
    k, l = rnd.choice(ks), rnd.choice(ks)
    ck, cl = character(G, k, F), character(G, l, F)
    val = form1(ck, cl)
    assert val.is_one() if k == l else val.is_zero()


@given(pfree_fields, st.randoms(use_true_random=False))
def test_hat_via_symbol_matches_dft(pr, rnd):
    F, G = _instance(rnd, pr)
    a = random_kernel(rnd, F, G.k)
    assert hat_via_symbol(a, G.orders) == dft(pushforward(a, G))


def test_symbol_examples():
    L = symbol(KernelSpec.a_plus(3, GF2))
    assert set(L.terms) == {(0, 0, 0), (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)}
    assert symbol(KernelSpec.delta((0, 0), GF2)).terms == {(0, 0): GF2.one}
    assert symbol(KernelSpec.delta((1, 0), GF2)).terms == {(-1, 0): GF2.one}


def test_hat_examples():
    h = hat_via_symbol(KernelSpec.a_plus(1, GF2), (3,))
    assert [x.is_zero() for x in h.elems()] == [False, True, True]
    assert h.elems()[0].is_one()
    h = hat_via_symbol(APLUS2, (5, 5))
    G = AbelianGroup.torus((5, 5))
    assert h.elems()[G.index_of((1, 3))].is_zero()
    d = hat_via_symbol(KernelSpec.delta((0, 0), GF2), (3, 5))
    assert all(x.is_one() for x in d.elems())
    with pytest.raises(FourierError):
        hat_via_symbol(APLUS2, (4, 3))


def test_harmonic_points_examples():
    pts = harmonic_points(APLUS2, (5, 5))
    assert sorted(pt.exponents for pt in pts.points) == [
        (1, 2), (1, 3), (2, 1), (2, 4), (3, 1), (3, 4), (4, 2), (4, 3)
    ]
    assert all(pt.multi_order == (5, 5) for pt in pts.points)
    assert len(harmonic_points(APLUS2, (7, 7))) == 0
    pts = harmonic_points(KernelSpec.a_plus(1, GF2), (3,))
    assert sorted(pt.exponents for pt in pts.points) == [(1,), (2,)]
    with pytest.raises(FourierError):
        harmonic_points(APLUS2, (6, 3))


def test_multi_order_examples():
    F, z = root_of_unity(2, 15)
    one = F.one
    w = z**5
    assert multi_order((one, one)) == (1, 1)
    assert multi_order((z**3, z**9)) == (5, 5)
    assert multi_order((one, w)) == (1, 3)


@given(st.sampled_from([(2, 1), (3, 1)]), st.randoms(use_true_random=False))
def test_point_count_is_kernel_dimension(pr, rnd):
    F, G = _instance(rnd, pr, max_prod=60, s=2)
    cortege = [random_kernel(rnd, F, 2) for _ in range(rnd.randint(1, 2))]
    d = len(harmonic_points(cortege, G.orders))
    assert d == kernel_dimension([pushforward(a, G) for a in cortege])
    if len(cortege) == 1:
        assert root_multiplicity(charpoly_pfree(cortege[0], G.orders), 0) == d


def test_charpoly_pfree_examples():
    x = Poly.x(GF2)
    assert charpoly_pfree(KernelSpec.a_plus(1, GF2), (3,)) == x**3 + x**2
    with pytest.raises(FourierError):
        charpoly_pfree(KernelSpec.a_plus(1, GF2), (4,))
    F = make_field(3, 1)
    a = KernelSpec(F, 2, {(0, 0): 2, (1, 1): 1, (2, 0): 1})
    assert charpoly_pfree(a, (1, 1)) == Poly.x(F) - Poly.const(F, a.norm)


@given(pfree_fields, st.randoms(use_true_random=False))
def test_charpoly_pfree_equals_matrix_route(pr, rnd):
    F, G = _instance(rnd, pr)
    a = random_kernel(rnd, F, G.k)
    assert charpoly_pfree(a, G.orders) == charpoly(pushforward(a, G))


def test_dq_orbits_examples():
    orbits = dq_orbits(harmonic_points(APLUS2, (5, 5)), 2)
    assert sorted(len(o) for o in orbits) == [4, 4]
    orbits = dq_orbits(harmonic_points(KernelSpec.a_plus(1, GF2), (3,)), 2)
    assert [[pt.exponents for pt in o] for o in orbits] == [[(1,), (2,)]]
    assert dq_orbits(harmonic_points(APLUS2, (7, 7)), 2) == []


@given(st.randoms(use_true_random=False))
def test_dq_orbit_sizes_and_traces(rnd):
    orders = pfree_orders(rnd, 2, 2, 80)
    sl = harmonic_points(APLUS2, orders)
    N = np.lcm.reduce(orders)
    G = AbelianGroup.torus(orders)
    for orbit in dq_orbits(sl, 2):
        assert multiplicative_order(2, int(N)) % len(orbit) == 0
        t0 = trace_of_character(G, orbit[0].exponents, 2, GF2)
        for pt in orbit[1:]:
            assert trace_of_character(G, pt.exponents, 2, GF2) == t0


def test_trace_examples_5x5():
    G = AbelianGroup.torus((5, 5))
    h = trace_of_character(G, (1, 3), 2, GF2)
    expect = [
        [0, 1, 1, 1, 1],
        [1, 1, 1, 0, 1],
        [1, 0, 1, 1, 1],
        [1, 1, 1, 1, 0],
        [1, 1, 0, 1, 1],
    ]
    assert h.grid().tolist() == expect
    th = trace_of_character(G, (3, 1), 2, GF2)
    assert th.grid().tolist() == np.array(expect).T.tolist()
    per = period_lattice(th)
    assert len(per) == 5 and (1, 2) in per and (3, 1) in per
    # h itself is periodic along the swapped vectors
    assert (2, 1) in period_lattice(h) and (4, 2) in period_lattice(h)


def test_doubled_trace_on_10x10():
    rows = [
        "0 1 1 0 1 0 1 0 1 1",
        "1 0 0 0 0 0 1 0 0 0",
        "1 0 1 0 1 1 0 1 1 0",
        "0 0 1 0 0 0 1 0 0 0",
        "1 1 0 1 1 0 1 0 1 0",
        "0 0 1 0 0 0 0 0 1 0",
        "1 0 1 0 1 0 1 1 0 1",
        "0 0 0 0 1 0 0 0 1 0",
        "1 0 1 1 0 1 1 0 1 0",
        "1 0 0 0 1 0 0 0 0 0",
    ]
    G = AbelianGroup.torus((10, 10))
    f = GroupFunction(G, GF2, parse_grid("\n".join(rows)).reshape(-1, 1))
    assert convolve(f, pushforward(APLUS2, G)).is_zero()
    L = lifted_period_lattice(f)
    assert L.index == 20
    assert L.same_as(Sublattice.from_columns([[2, -4], [4, 2]]))


def test_trace_examples_cyclic():
    for l in (1, 3, 5):
        n = 3 * l
        G = AbelianGroup.torus((n,))
        a = pushforward(KernelSpec.a_plus(1, GF2), G)
        h = trace_of_character(G, (l,), 2, GF2)
        assert [int(v) for v in h.values[:, 0]] == [0 if i % 3 == 0 else 1 for i in range(n)]
        if n % 2:
            basis = trace_kernel_basis(a)
            assert len(basis) == 2
            hp = h.translate((1,))
            assert rank(GF2, np.stack([b.values for b in basis] + [h.values, hp.values])) == 2
    assert trace_kernel_basis(pushforward(APLUS2, AbelianGroup.torus((7, 7)))) == []


def test_character_from_vector_examples():
    F4 = make_field(2, 2)
    w = F4.gen
    th = character_from_vector(w, (1, 0))
    assert th.is_harmonic(KernelSpec.a_plus(2, F4))
    F, z = root_of_unity(2, 5)
    th = character_from_vector(z, (1, 3))
    assert th.is_harmonic(KernelSpec.a_plus(2, F)) and th.period_index() == 5
    th = character_from_vector(GF2.one, (1, 0))
    assert th.is_harmonic(KernelSpec.a_plus(2, GF2)) == APLUS2.norm.is_zero()
    a = KernelSpec(GF2, 2, {(0, 0): 1, (1, 0): 1})
    assert th.is_harmonic(a)
    with pytest.raises(FourierError):
        character_from_vector(w, (2, 4))


def test_period_lattice_examples():
    G = AbelianGroup.torus((3, 5))
    assert len(period_lattice(GroupFunction.constant(G, GF2.one))) == 15
    chi = character(G, (1, 2), GF2)
    per = set(period_lattice(chi))
    ker = {g for g in G.elements() if (5 * g[0] * 1 + 3 * g[1] * 2) % 15 == 0}
    assert per == ker


@given(pfree_fields, st.randoms(use_true_random=False))
def test_period_subgroup_matches_definition(pr, rnd):
    F, G = _instance(rnd, pr)
    f = random_function(rnd, G, F)
    if rnd.random() < 0.5:
        f = f + f.translate(G.element(rnd.randrange(G.order)))
    assert period_subgroup(f) == direct_period_subgroup(f)


def test_realize_charpoly_examples():
    a = realize_charpoly([GF2.one])
    assert a == KernelSpec.delta((0,), GF2)
    a = realize_charpoly([GF2.zero, GF2.zero, GF2.one])
    x = Poly.x(a.field)
    assert charpoly_pfree(a, (3,)) == x**3 + x**2
    F, z = root_of_unity(2, 5)
    roots = [z**i for i in range(5)]
    a = realize_charpoly(roots)
    P = Poly.const(F, 1)
    for r in roots:
        P = P * (Poly.x(F) - Poly.const(F, r))
    assert charpoly_pfree(a, (5,)) == P
    assert len(a.terms) == 1
    with pytest.raises(FourierError):
        realize_charpoly([GF2.one, GF2.one])


@given(st.sampled_from([(2, 1), (3, 1)]), st.randoms(use_true_random=False))
def test_trace_basis_spans_kernel(pr, rnd):
    F, G = _instance(rnd, pr, max_prod=60)
    cortege = [pushforward(random_kernel(rnd, F, G.k), G) for _ in range(rnd.randint(1, 2))]
    basis = trace_kernel_basis(cortege)
    assert len(basis) == kernel_dimension(cortege)
    for b in basis:
        for a in cortege:
            assert convolve(b, a).is_zero()
    from convlat.fourier import harmonic_exponents

    T, ks = harmonic_exponents(cortege)
    for k in ks[:4]:
        assert reconstruct_character(G, k, F.order, F) == character(G, k, F)
