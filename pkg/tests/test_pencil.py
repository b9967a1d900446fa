from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lglab.exact import GF, QQ, random_invertible, rank
from lglab.pencil import (
    common_lagrangian_test, conjugate, diagonal_pencil, meets_all, pencil_diagonalize,
    pencil_pfaffian, pencil_roots, segre_components, segre_degree, skew_of, vec_of,
)

F = GF(1009)


def _matches(d, T, field):
    n = d.n
    expect = []
    for i in range(n):
        g = np.outer(T[:, i], T[:, i + n])
        expect.append(vec_of(g - g.T))
    return all(any(rank(np.array([g, e_], dtype=object), field) == 1 for e_ in expect)
               for g in d.gammas)


def _rebuilds(d):
    G = np.array(d.gammas, dtype=object).T
    return (list(G.dot(np.array(d.coeffs, dtype=object))) == vec_of(d.alpha)
            and list(G.dot(np.array(d.coeffs2, dtype=object))) == vec_of(d.alpha2))


def test_diagonal_pencil_itself():
    A, B = diagonal_pencil([QQ(1), QQ(2), QQ(5)], QQ)
    d = pencil_diagonalize(A, B)
    assert d.roots == [1, 2, 5]
    assert _rebuilds(d)
    assert sorted(d.coeffs2) == [1, 2, 5] and d.coeffs == [1, 1, 1]


def test_pfaffian_polynomial():
    A, B = diagonal_pencil([QQ(1), QQ(2)], QQ)
    P = pencil_pfaffian(A, B, QQ)
    # Pf(t A - B) = (t - 1)(t - 2)
    assert [P.coefficient((k,)) for k in range(3)] == [2, -3, 1]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_conjugate_recovery_over_q(n):
    rng = np.random.default_rng(n)
    A, B = diagonal_pencil([QQ(c) for c in range(-1, n - 1)], QQ)
    T = random_invertible(QQ, rng, 2 * n)
    d = pencil_diagonalize(conjugate(T, A), conjugate(T, B))
    assert _matches(d, T, QQ) and _rebuilds(d)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("seed", range(5))
def test_conjugate_recovery_mod_p(n, seed):
    rng = np.random.default_rng(seed)
    lams = []
    while len(lams) < n:
        c = F.random(rng)
        if c not in lams:
            lams.append(c)
    A, B = diagonal_pencil(lams, F)
    T = random_invertible(F, rng, 2 * n)
    d = pencil_diagonalize(conjugate(T, A), conjugate(T, B), field=F)
    assert _matches(d, T, F) and _rebuilds(d)


def test_normalization():
    A, B = diagonal_pencil([F(3), F(8)], F)
    T = random_invertible(F, np.random.default_rng(1), 4)
    d = pencil_diagonalize(conjugate(T, A), conjugate(T, B), field=F)
    for g in d.gammas:
        assert next(c for c in reversed(g) if c != 0) == 1


def test_other_members_give_same_components():
    rng = np.random.default_rng(2)
    A, B = diagonal_pencil([F(1), F(4), F(9)], F)
    T = random_invertible(F, rng, 6)
    A2, B2 = conjugate(T, A), conjugate(T, B)
    d1 = pencil_diagonalize(A2, B2, field=F)
    d2 = pencil_diagonalize(A2 * F(3) + B2, A2 - B2 * F(5), field=F)
    assert sorted(map(tuple, d1.gammas), key=str) == sorted(map(tuple, d2.gammas), key=str)


def test_degenerate_first_member():
    A, B = diagonal_pencil([QQ(0), QQ(1)], QQ)
    with pytest.raises(ValueError):
        pencil_diagonalize(B, A)


def test_repeated_roots():
    A, B = diagonal_pencil([QQ(2), QQ(2)], QQ)
    with pytest.raises(ValueError):
        pencil_diagonalize(A, B)


def test_non_split_over_q():
    # Pf(t A - B) = t^2 - 2 has no rational roots
    A = skew_of([1, 0, 0, 0, 0, 1], 4, QQ)    # x12 + x34
    B = skew_of([0, 1, 0, 0, 2, 0], 4, QQ)
    with pytest.raises(ValueError):
        pencil_diagonalize(A, B)


def test_pencil_roots_mod_p():
    A, B = diagonal_pencil([F(5), F(700)], F)
    assert pencil_roots(A, B, F) == [5, 700]


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 6), (4, 24)])
def test_segre_degree(n, expected):
    assert segre_degree(n) == expected


def test_segre_degree_rejects_zero():
    with pytest.raises(ValueError):
        segre_degree(0)


@pytest.fixture(scope="module")
def form_pencil():
    rng = np.random.default_rng(7)
    A, B = diagonal_pencil([F(2), F(3), F(11)], F)
    T = random_invertible(F, rng, 6)
    A2, B2 = T.T.dot(A).dot(T), T.T.dot(B).dot(T)
    return A2, B2, segre_components(A2, B2, field=F)


def test_segre_components_span(form_pencil):
    A2, B2, W = form_pencil
    assert all(w.shape == (2, 6) for w in W)
    assert rank(np.concatenate(W), F) == 6


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_segre_membership_equivalence(form_pencil, seed):
    A2, B2, W = form_pencil
    rng = np.random.default_rng(seed)
    if seed % 2:
        U = np.array([w.T.dot(np.array([F.random(rng), F.random(rng)], dtype=object)) for w in W],
                     dtype=object)
    else:
        U = np.array([[F.random(rng) for _ in range(6)] for _ in range(3)], dtype=object)
    if rank(U, F) < 3:
        return
    assert common_lagrangian_test(U, A2, B2, F) == meets_all(U, W, F)


def test_rank_deficient_frame_rejected(form_pencil):
    A2, B2, _ = form_pencil
    U = F.array(np.zeros((3, 6), dtype=int))
    with pytest.raises(ValueError):
        common_lagrangian_test(U, A2, B2, F)


def test_report_serializes():
    A, B = diagonal_pencil([QQ(1), QQ(Fraction(1, 2))], QQ)
    rep = pencil_diagonalize(A, B).report()
    assert rep["roots"] == ["1/2", "1/1"]
