import itertools
import math
from fractions import Fraction

import pytest
import sympy

from lglab import enumerative as en


@pytest.fixture(scope="module")
def ring():
    return en.sigma_ring()


def test_degree_sixteen(ring):
    # [PUBLISHED] deg = 16
    assert en.sigma_ring_degree() == 16
    assert ring.reduce(ring.power(ring.gen(0), 6)) == {(1, 1, 1): 16}


def test_graded_ranks(ring):
    # [PUBLISHED] 1,1,1,2,1,1,1
    assert ring.graded_ranks() == [1, 1, 1, 2, 1, 1, 1]


def test_tau3_squared_vanishes(ring):
    assert ring.normal_form(ring.power(ring.gen(2), 2)) == {}


@pytest.mark.parametrize("seed", range(5))
def test_confluence(ring, seed):
    assert ring.is_confluent_on(ring.power(ring.gen(0), 6), trials=10, seed=seed)


def test_rewriting_matches_linear_algebra(ring):
    # every monomial of degree <= 6: both normal forms agree
    for d in range(7):
        for m in ring.monomials(d):
            assert ring.reduce({m: 1}) == ring.normal_form({m: 1})


def test_reduce_is_idempotent(ring):
    p = ring.mul(ring.power(ring.gen(0), 3), ring.gen(2))
    r = ring.reduce(p)
    assert ring.reduce(r) == r


def test_inhomogeneous_relation_rejected():
    with pytest.raises(ValueError):
        en.GradedQuotientRing(["a"], [1], [{(2,): 1, (1,): 1}], top=(1,))


@pytest.mark.parametrize("shape,count", [([4, 4], 14), ([2, 2], 2), ([5], 1), ([1, 1, 1], 1),
                                         ([3, 2], 5), ([3, 3, 3], 42)])
def test_hook_length(shape, count):
    assert en.hook_length_count(shape) == count


def test_hook_length_brute_force():
    # count standard tableaux of 2 x 4 by direct enumeration of lattice words
    words = [w for w in set(itertools.permutations([0] * 4 + [1] * 4))
             if all(w[:i].count(0) >= w[:i].count(1) for i in range(9))]
    assert len(words) == en.hook_length_count([4, 4]) == 14


def test_bad_partition():
    with pytest.raises(ValueError):
        en.hook_length_count([1, 2])


@pytest.mark.parametrize("k,n,deg", [(2, 6, 14), (2, 4, 2), (1, 5, 1), (2, 5, 5), (3, 6, 42)])
def test_grassmannian_degree(k, n, deg):
    assert en.grassmannian_degree(k, n) == deg


def test_gr26_degree():
    assert en.gr26_degree() == 14


def test_chern_series_matches_sympy():
    t = sympy.Symbol("t")
    expr = (1 + t) ** 15 * (1 - t) * (1 + 3 * t) / (1 + 2 * t) ** 6
    ref = sympy.Poly(sympy.series(expr, t, 0, 6).removeO(), t).all_coeffs()[::-1]
    ref = [int(c) for c in ref] + [0] * (6 - len(ref))
    assert en.vertex_bundle_chern() == ref


def test_chern_polynomial():
    # [PUBLISHED] 1 + 5t + 12t^2 + 16t^3 + 8t^4
    assert en.vertex_bundle_chern() == [1, 5, 12, 16, 8, 0]


def test_chern_series_inverse():
    assert en.chern_series({2: 1, 3: 0}) == [1, 2, 0, 0, 0, 0]
    assert en.chern_series({1: -1}, dim=3) == [1, -1, 1, -1]


def test_vertex_degrees():
    assert en.vertex_degrees() == {5: 5, 4: 12, 3: 16, 2: 8}


def test_vertex_degrees_match_chern_coefficients():
    c = en.vertex_bundle_chern()
    poly = " + ".join(f"{v}t^{i}" for i, v in enumerate(c) if v)
    assert poly == "1t^0 + 5t^1 + 12t^2 + 16t^3 + 8t^4"
    assert sorted(en.vertex_degrees().values()) == sorted(c[1:5])


def test_brill_noether():
    bn = en.brill_noether_degree(9, 2, 8)
    assert bn == 42 and bn % 2 == 0 and bn / 2 == 21
    assert en.expected_dimension(9, 2, 8) == 0


def test_brill_noether_explicit_formula():
    # 9! * 0! 1! 2! / (3! 4! 5!)
    assert en.brill_noether_degree(9, 2, 8) == Fraction(math.factorial(9) * 2, 6 * 24 * 120)


@pytest.mark.parametrize("g", [2, 4, 6])
def test_brill_noether_g_d1(g):
    # (r, d) = (1, g/2 + 1): the Catalan numbers
    d = g // 2 + 1
    assert en.brill_noether_degree(g, 1, d) == math.comb(g, g // 2) // (g // 2 + 1)


def test_brill_noether_errors():
    with pytest.raises(ValueError):
        en.brill_noether_degree(2, 3, 9)


def test_summary_table():
    rows = en.summary_table()
    row3 = next(r for r in rows if r["k"] == 3)
    assert row3["degY"] == 16 and row3["dual"] == "plane quartic curve"
    assert [r["degY"] for r in rows] == [0, 8, 16, 12, 5]
    assert en.table_csv().splitlines()[0] == "k,section,dimY,degY,vertex,dual"
    assert '"plane quartic curve"' in en.table_json()
