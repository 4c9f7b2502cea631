import itertools
import json
import math
import random

import pytest
from hypothesis import given, strategies as st

from convlat.conv import dynamic_test, kernel_dimension
from convlat.count import (
    CountError,
    CountTable,
    cell_counts,
    cortege_hash,
    level_set_check,
    line_max,
    line_period,
    line_values,
    mobius,
    partnership_graph,
    suborder,
    table_build,
    unit_count_bruteforce,
    unit_group_order,
    verify_line_period,
)
from convlat.ff import make_field
from convlat.lattice import AbelianGroup, KernelSpec, pushforward

from helpers import random_kernel

GF2 = make_field(2, 1)
APLUS = KernelSpec.a_plus(2, GF2)


@pytest.fixture(scope="module")
def table21():
    return table_build(APLUS, (21, 21))


def test_table_examples(table21):
    T = table21
    assert T.d((3, 3)) == 4 and T.d((5, 5)) == 8 and T.d((7, 7)) == 0
    assert T.d((9, 21)) == T.d((21, 9)) == 16
    assert T.s((3, 3)) == 0 and T.s((5, 5)) == 8
    assert T.d((1, 3)) == T.d((3, 1)) == 2 and T.d((1, 1)) == 0
    assert (2, 3) in T.excluded and (2, 3) not in T.entries


def test_table_identities(table21):
    assert table21.check() == []


def test_table_monotone_under_gcd(table21):
    keys = list(table21.entries)
    rng = random.Random(0)
    for _ in range(300):
        m, n = rng.choice(keys), rng.choice(keys)
        g = tuple(math.gcd(x, y) for x, y in zip(m, n))
        assert table21.d(g) <= min(table21.d(m), table21.d(n))


def test_table_swap_symmetry(table21):
    for (m, n), v in table21.entries.items():
        assert table21.entries[(n, m)] == v


def test_nonzero_entries_are_generated_by_exact_ones(table21):
    for n, (d, _) in table21.entries.items():
        if d:
            divs = itertools.product(*[[x for x in range(1, k + 1) if k % x == 0] for k in n])
            assert any(table21.s(dv) for dv in divs)


def test_strict_gcd_inequality(table21):
    # the classical gcd identity fails for s >= 2
    assert table21.d((3, 3)) < min(table21.d((9, 21)), table21.d((21, 9)))


@given(st.sampled_from([(2, 1), (3, 1)]), st.randoms(use_true_random=False))
def test_cell_counts_match_kernel_dimension(pr, rnd):
    F = make_field(*pr)
    a = random_kernel(rnd, F, 2)
    orders = tuple(rnd.choice([n for n in range(1, 12) if n % F.p]) for _ in range(2))
    d, s = cell_counts(a, orders)
    assert d == kernel_dimension(pushforward(a, AbelianGroup.torus(orders)))
    assert 0 <= s <= d


def test_mobius_values():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_csv_round_trip_and_resume(tmp_path):
    out = str(tmp_path / "t.csv")
    T = table_build(APLUS, (7, 7), out=out)
    with open(out) as fh:
        lines = fh.read().splitlines()
    assert lines[0] == "n1,n2,d,s"
    assert lines[1:] == [f"{m},{n},{d},{s}" for (m, n), (d, s) in sorted(T.entries.items())]
    side = json.load(open(out + ".json"))
    assert side["cortege_hash"] == cortege_hash((APLUS,))
    assert side["bounds"] == [7, 7]
    # resume: a doctored cached entry survives, proving the cache was read
    rows = CountTable.read_csv(out)
    rows[(1, 1)] = (99, 99)
    T2 = CountTable(T.cortege, T.bounds, dict(rows))
    T2.write_csv(out)
    T3 = table_build(APLUS, (7, 7), out=out)
    assert T3.d((1, 1)) == 99
    T4 = table_build(APLUS, (7, 7), out=out, resume=False)
    assert T4.d((1, 1)) == 0
    # a different kernel ignores the cache
    other = KernelSpec.delta((0, 0), GF2)
    T5 = table_build(other, (7, 7), out=out)
    assert T5.d((1, 1)) == 0 and all(v == (0, 0) for v in T5.entries.values())


def test_workers_are_deterministic(tmp_path):
    a = str(tmp_path / "a.csv")
    b = str(tmp_path / "b.csv")
    table_build(APLUS, (9, 9), out=a, workers=1)
    table_build(APLUS, (9, 9), out=b, workers=3)
    assert open(a).read() == open(b).read()


def test_table_rejects_rank_mismatch():
    with pytest.raises(CountError):
        table_build(APLUS, (5,))


def test_line_period_examples():
    assert line_period(APLUS, (1,)) == 3
    assert line_max(APLUS, (1,)) == 2
    assert line_max(APLUS, (7,)) == 14
    assert line_max(APLUS, (3,)) == 4
    with pytest.raises(CountError):
        line_period(KernelSpec(GF2, 2, {}), (1,))


@pytest.mark.parametrize("n", [1, 3, 5, 7, 9])
def test_line_max_formula(n):
    expect = 2 * n - 2 if n % 3 == 0 else 2 * n
    assert line_max(APLUS, (n,)) == expect
    l = line_period(APLUS, (n,))
    vals = line_values(APLUS, (n,), [m for m in range(1, 2 * l + 1) if m % 2])
    assert max(vals.values()) == expect


@pytest.mark.parametrize("n", [1, 3, 5, 7])
def test_line_period_is_a_period(n):
    l = line_period(APLUS, (n,))
    assert verify_line_period(APLUS, (n,), l, window=25)


def test_line_period_is_minimal_for_small_lines():
    for n in (1, 3, 5):
        l = line_period(APLUS, (n,))
        for q in range(1, l):
            if l % q == 0:
                assert not verify_line_period(APLUS, (n,), q, window=3 * l)


def test_partnership_graph_examples():
    G = partnership_graph(APLUS, 21)
    assert G.edges[(5, 5)] == 8
    assert (7, 7) not in G.edges
    assert (1, 3) in G.edges
    assert all(v > 0 for v in G.edges.values())
    assert partnership_graph(KernelSpec.delta((0, 0), GF2), 9).edges == {}
    with pytest.raises(CountError):
        partnership_graph(KernelSpec(GF2, 2, {(0, 0): 1, (1, 0): 1}), 5)
    with pytest.raises(CountError):
        partnership_graph(KernelSpec.a_plus(1, GF2), 5)


def test_partnership_graph_level_sets():
    G = partnership_graph(APLUS, 33)
    rep = level_set_check(G)
    assert rep.ok
    assert [1, 3] in G.components()


def test_suborder_examples():
    assert suborder(1) == 1 and suborder(3) == 1 and suborder(5) == 2 and suborder(7) == 3
    for n in range(3, 60, 2):
        j = suborder(n)
        assert pow(2, j, n) in (1, n - 1)
        assert all(pow(2, i, n) not in (1, n - 1) for i in range(1, j))
    with pytest.raises(CountError):
        suborder(4)


def test_unit_group_order():
    assert [unit_group_order(n) for n in (1, 3, 5, 7, 9, 11)] == [1, 3, 15, 49, 189, 1023]
    for n in (1, 3, 5, 7, 9):
        assert unit_group_order(n) == unit_count_bruteforce(n)
    with pytest.raises(CountError):
        unit_group_order(6)


@pytest.mark.parametrize("n", [n for n in range(1, 26, 2) if n % 3])
def test_truncated_period_divides_nu(n):
    a = pushforward(KernelSpec.a_plus(1, GF2), AbelianGroup.torus((n,)))
    _, l = dynamic_test(a)
    assert unit_group_order(n) % l == 0
