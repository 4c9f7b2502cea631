import math

import pytest
from hypothesis import given, strategies as st

from convlat.cheb import (
    ChebError,
    charpoly_on_sublattice,
    charpoly_route,
    charpoly_via_resultant,
    chebyshev_T,
    chebyshev_T_shifted,
    dickson,
    divisibility_check,
    iterated_resultant,
    lights_out_winnable,
    p_power_reduce,
)
from convlat.conv import kernel_basis
from convlat.ff import embed, make_field, random_elem
from convlat.fourier import FourierError, symbol, symbol_values
from convlat.lattice import AbelianGroup, KernelSpec, Sublattice, pushforward
from convlat.poly import LaurentPoly, Poly, poly_gcd, root_multiplicity

from helpers import pfree_orders, random_chain, random_kernel

GF2 = make_field(2, 1)
X = Poly.x(GF2)
ONE = Poly.const(GF2, 1)


def compose(f: Poly, g: Poly) -> Poly:
    out = Poly(f.field)
    for c in reversed(f.coeffs):
        out = out * g + Poly.const(f.field, c)
    return out


def test_chebyshev_examples():
    assert chebyshev_T(0).is_zero()
    assert chebyshev_T(1) == X
    assert chebyshev_T(2) == X**2
    assert chebyshev_T(3) == X**3 + X
    assert chebyshev_T_shifted(3) == (X + ONE) * X**2
    with pytest.raises(ChebError):
        chebyshev_T(-1)


def test_chebyshev_divisibility_and_gcd():
    for n in range(1, 65):
        Tn = chebyshev_T(n)
        for m in range(1, n + 1):
            Tm = chebyshev_T(m)
            if n % m == 0:
                assert (Tn % Tm).is_zero()
            assert poly_gcd(Tm, Tn) == chebyshev_T(math.gcd(m, n))


def test_chebyshev_is_dickson_mod_2():
    for n in range(0, 40):
        assert chebyshev_T(n) == dickson(n, "first", GF2.one)


def test_dickson_examples():
    F = make_field(2, 4)
    alpha = F.gen
    assert dickson(1, "first", alpha) == Poly.x(F)
    assert dickson(0, "second", alpha) == Poly.const(F, 1)
    for m in range(1, 12):
        assert dickson(2 * m, "first", alpha) == dickson(m, "first", alpha) ** 2
    with pytest.raises(ChebError):
        dickson(3, "third", alpha)


@given(st.integers(0, 30), st.randoms(use_true_random=False))
def test_dickson_power_sums(n, rnd):
    F = make_field(2, 4)
    u, v = random_elem(F, rnd, nonzero=True), random_elem(F, rnd, nonzero=True)
    D = dickson(n, "first", u * v)
    assert D(u + v) == u**n + v**n
    E = dickson(n, "second", u * v)
    # E_n(u+v, uv) = sum_{i=0}^n u^i v^(n-i)
    assert E(u + v) == sum((u**i * v ** (n - i) for i in range(n + 1)), F.zero)


def test_composition_law_and_its_failure_under_shift():
    for n in range(1, 9):
        for m in range(1, 9):
            assert compose(chebyshev_T(n), chebyshev_T(m)) == chebyshev_T(m * n)
    Tp = chebyshev_T_shifted
    assert compose(Tp(2), Tp(3)) != Tp(6)


def test_iterated_resultant_examples():
    F5 = make_field(5, 1)
    c = F5(3)
    L = LaurentPoly(F5, 1, {(0,): c})
    assert iterated_resultant(L, (4,)).monic() == (Poly.x(F5) - Poly.const(F5, c)) ** 4
    ap = KernelSpec.a_plus(1, GF2)
    assert iterated_resultant(symbol(ap), (3,)).monic() == X**3 + X**2
    P = iterated_resultant(symbol(KernelSpec.a_plus(2, GF2)), (3, 3))
    assert P.deg == 9 and root_multiplicity(P, 0) == 4
    with pytest.raises(ChebError):
        iterated_resultant(LaurentPoly(GF2, 1, {}), (3,))


@given(st.sampled_from([(2, 1), (3, 1), (5, 1)]), st.randoms(use_true_random=False))
def test_iterated_resultant_root_set(pr, rnd):
    F = make_field(*pr)
    orders = pfree_orders(rnd, F.p, rnd.randint(1, 2), 30)
    a = random_kernel(rnd, F, len(orders))
    T, vals = symbol_values(a, orders)
    W = T.field
    prod = Poly.const(W, 1)
    for v in W.elems(vals):
        prod = prod * (Poly.x(W) - Poly.const(W, v))
    res = charpoly_via_resultant(a, orders)
    assert [embed(c, W) for c in res.coeffs] == list(prod.coeffs)


def test_charpoly_via_resultant_examples():
    assert charpoly_via_resultant(KernelSpec.a_plus(1, GF2), (3,)) == X**3 + X**2
    d = KernelSpec.delta((0, 0), GF2)
    assert charpoly_via_resultant(d, (3, 5)) == (X + ONE) ** 15
    with pytest.raises(FourierError):
        charpoly_via_resultant(KernelSpec.a_plus(1, GF2), (4,))


@given(st.sampled_from([(2, 1), (3, 1), (5, 1)]), st.randoms(use_true_random=False))
def test_three_routes_agree(pr, rnd):
    F = make_field(*pr)
    orders = pfree_orders(rnd, F.p, rnd.randint(1, 2), 60)
    a = random_kernel(rnd, F, len(orders))
    polys = {r: charpoly_route(a, orders, r).monic() for r in ("matrix", "product", "resultant")}
    assert polys["matrix"] == polys["product"] == polys["resultant"]


def test_unknown_route():
    with pytest.raises(ChebError):
        charpoly_route(KernelSpec.a_plus(1, GF2), (3,), "magic")


def test_divisibility_examples():
    ap = KernelSpec.a_plus(2, GF2)
    rep = divisibility_check(ap, Sublattice.product((9, 21)), Sublattice.product((3, 3)))
    assert rep.ok
    L = Sublattice.product((3, 5))
    rep = divisibility_check(ap, L, L)
    assert rep.ok and rep.quotients["L1/L2"] == ONE
    with pytest.raises(ChebError):
        divisibility_check(ap, Sublattice.product((3, 3)), Sublattice.product((9, 21)))


@given(st.sampled_from([(2, 1), (3, 1)]), st.randoms(use_true_random=False))
def test_divisibility_on_random_chains(pr, rnd):
    F = make_field(*pr)
    L1, L2 = random_chain(rnd, 40)
    cortege = [random_kernel(rnd, F, 2) for _ in range(rnd.randint(1, 2))]
    assert divisibility_check(cortege, L1, L2).ok


def test_p_power_reduce_examples():
    ap = KernelSpec.a_plus(1, GF2)
    L2, alpha = p_power_reduce(ap, Sublattice(((12,),)))
    assert L2.same_as(Sublattice(((3,),))) and alpha == 2
    assert charpoly_on_sublattice(ap, Sublattice(((12,),))) == (X**3 + X**2) ** 4
    L2, alpha = p_power_reduce(ap, Sublattice(((4,),)))
    assert L2.index == 1 and alpha == 2
    assert charpoly_on_sublattice(ap, Sublattice(((4,),))) == (X + ONE) ** 4
    L = Sublattice.product((3, 5))
    assert p_power_reduce(KernelSpec.a_plus(2, GF2), L)[1] == 0


@given(st.sampled_from([(2, 1), (3, 1)]), st.randoms(use_true_random=False))
def test_p_power_identity_random(pr, rnd):
    F = make_field(*pr)
    p = F.p
    while True:
        L1, _ = random_chain(rnd, 48)
        if L1.index % p == 0:
            break
    a = random_kernel(rnd, F, 2)
    L2, alpha = p_power_reduce(a, L1, verify=True)
    assert alpha >= 1 and L1.index == L2.index * p**alpha


def test_lights_out_winnable_examples():
    assert lights_out_winnable(2, 2)
    assert not lights_out_winnable(3, 3)
    with pytest.raises(ChebError):
        lights_out_winnable(0, 3)


@pytest.mark.parametrize("m", range(1, 13))
def test_lights_out_winnable_matches_kernel(m):
    for n in range(1, 13):
        G = AbelianGroup.torus((m, n))
        empty = not kernel_basis(pushforward(KernelSpec.a_plus(2, GF2), G))
        assert lights_out_winnable(m, n) == empty
