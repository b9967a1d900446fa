import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lglab.exact import GF, QQ, rank, random_matrix
from lglab.exterior import random_symplectic, sp_action14, standard_J
from lglab.lgsigma import (
    F_MINUS_OMEGA, GENERIC, OMEGA_MINUS_SIGMA, SIGMA, DualForm, annihilates_tangent, chart_point,
    complete_to_symplectic, dual_classify, dual_to_point, is_lagrangian, lagrangian_from_point,
    nodal_dual_form, on_sigma, orbit_classify, plucker_lagrangian, q_omega, quadric_values,
    quartic_f, quartic_gradient, quartic_value, random_lagrangian, sample_hyperplane_section,
    sigma_quadrics, tangent_cone_rank, tangent_line_point, tangent_space,
)
from lglab.nodal import fit_quadrics
from lglab.poly import vector_from_poly

F = GF(1009)


def _sym(field, rng):
    M = random_matrix(field, rng, (3, 3))
    return M + M.T


def test_quadric_count_and_shape():
    qs = sigma_quadrics()
    assert len(qs) == 21
    assert all(q.is_homogeneous(2) for q in qs)
    vecs = [vector_from_poly(q, 2) for q in qs]
    assert rank(QQ.array(vecs)) == 21


def test_quadrics_vanish_on_random_lagrangians(field):
    # independent route: wedge the rows of a Lagrangian moved by a random symplectic matrix
    for seed in range(10):
        U = random_lagrangian(seed, field)
        assert is_lagrangian(U)
        assert on_sigma(plucker_lagrangian(U))


def test_quadrics_are_the_whole_degree_two_ideal(field, rng):
    pts = [list(chart_point(_sym(field, rng))) for _ in range(120)]
    assert len(fit_quadrics(pts, field)) == 21


def test_frame_recovery(field, rng):
    U = random_lagrangian(rng, field)
    w = plucker_lagrangian(U)
    V = lagrangian_from_point(w, field)
    assert rank(np.concatenate([U, V]), field) == 3


def test_quartic_term_count():
    # [DERIVED] direct expansion of the invariant quartic
    assert len(quartic_f().terms) == 44
    assert quartic_f().is_homogeneous(4)


@pytest.mark.parametrize("xrank,label", [(0, SIGMA), (1, SIGMA), (2, OMEGA_MINUS_SIGMA),
                                         (3, F_MINUS_OMEGA)])
def test_tangent_line_orbits(xrank, label, field):
    p, U = tangent_line_point(7, field, xrank=xrank)
    assert quartic_value(list(p)) == 0
    assert orbit_classify(p) == label


def test_generic_point():
    w = [1] + [0] * 12 + [1]
    assert quartic_value(w) == 1
    assert orbit_classify(w) == GENERIC


def test_x23_witness():
    w = [0] * 14
    w[5] = 1
    assert all(g(w) == 0 for g in quartic_gradient())
    assert any(q != 0 for q in quadric_values(w))
    assert orbit_classify(w) == OMEGA_MINUS_SIGMA


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        orbit_classify([0] * 14)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_quartic_invariant_under_sp6(seed):
    rng = np.random.default_rng(seed)
    S = random_symplectic(rng, F, length=4)
    w = [F.random(rng) for _ in range(14)]
    A = sp_action14(S, F)
    assert quartic_value(list(A.dot(w))) == quartic_value(w)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_sigma_preserved_by_sp6(seed):
    rng = np.random.default_rng(seed)
    S = random_symplectic(rng, F, length=4)
    w = list(chart_point(_sym(F, rng)))
    assert on_sigma(sp_action14(S, F).dot(w))


def test_dual_classification():
    # u* alone pairs to a point of Sigma
    om = [1] + [0] * 13
    assert list(dual_to_point(om))[13] != 0
    assert dual_classify(om) == SIGMA


def test_complete_to_symplectic(field, rng):
    U = random_lagrangian(rng, field)
    S = complete_to_symplectic(U, field)
    J = standard_J(field)
    assert (S.T.dot(J).dot(S) == J).all()
    assert rank(np.concatenate([S[:, :3].T, U]), field) == 3


def test_non_lagrangian_rejected():
    U = QQ.array(np.eye(6, dtype=int)[[0, 1, 3]])
    with pytest.raises(ValueError):
        complete_to_symplectic(U)


def test_tangent_space_dimension(field, rng):
    U = random_lagrangian(rng, field)
    T = tangent_space(U, field)
    assert T.shape == (7, 14) and rank(T, field) == 7
    # the tangent space contains the point itself
    p = list(plucker_lagrangian(U))
    assert rank(np.concatenate([T, [p]]), field) == 7


@pytest.mark.parametrize("Y,expected", [
    (np.eye(3, dtype=int), 6),
    (np.diag([1, 1, 0]), 4),
    (np.diag([1, 0, 0]), 3),
])
def test_tangent_cone_rank_table(Y, expected):
    Z = np.zeros((3, 3), dtype=int)
    d = list(QQ.array(list(DualForm.from_blocks(0, Z, Y, 0))))
    assert tangent_cone_rank(d) == expected


@pytest.mark.parametrize("Y,label", [
    (np.eye(3, dtype=int), F_MINUS_OMEGA),
    (np.diag([1, 1, 0]), OMEGA_MINUS_SIGMA),
    (np.diag([1, 0, 0]), SIGMA),
])
def test_dual_orbits_of_conic_forms(Y, label):
    Z = np.zeros((3, 3), dtype=int)
    d = list(QQ.array(list(DualForm.from_blocks(0, Z, Y, 0))))
    assert dual_classify(d) == label


def test_nodal_witness(field):
    W = nodal_dual_form(seed=3, field=field)
    assert on_sigma(W.pivot)
    assert W.omega(W.pivot) == 0
    assert annihilates_tangent(W.omega, W.frame, field)
    assert rank(W.conic, field) == 3
    assert tangent_cone_rank(W.omega, W.frame, field) == 6
    assert (q_omega(W.omega, W.frame, field) == W.conic).all()


def test_nodal_witness_fixed_blocks():
    W = nodal_dual_form(seed=1, field=QQ, Ystar=np.eye(3, dtype=int), zstar=2)
    assert W.standard[13] == 2 and W.standard[:7] == [0] * 7


def test_degenerate_conic_rejected():
    with pytest.raises(ValueError):
        nodal_dual_form(seed=1, field=QQ, Ystar=np.diag([1, 1, 0]))


def test_hyperplane_samples(field, rng):
    W = nodal_dual_form(seed=5, field=field)
    for _ in range(5):
        P, frame = sample_hyperplane_section(W, rng)
        assert on_sigma(P) and W.omega(P) == 0
        assert list(plucker_lagrangian(frame)) == list(P)


def test_q_omega_requires_singular_point():
    W = nodal_dual_form(seed=2, field=QQ)
    U = random_lagrangian(9, QQ)
    with pytest.raises(ValueError):
        q_omega(W.omega, U)
