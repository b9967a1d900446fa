import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lglab.exact import GF, QQ, det, kernel_basis, random_matrix, rank
from lglab.exterior import MultiVector, e, standard_J, wedge, x
from lglab.gr26 import (
    PfaffianPlane, annihilates_wedge2, is_decomposable, pairing2, pfaffian, pker, pker_raw,
    plucker_quadrics, plucker_vector, projective_plane_points, quadric_in_z, skew_rank,
    veronese_locus, z_membership,
)

F = GF(1009)


def _skew(field, rng, n=6):
    A = random_matrix(field, rng, (n, n))
    return A - A.T


def test_pfaffian_of_J():
    assert pfaffian(standard_J()) == 1


@pytest.mark.parametrize("n", [2, 4, 6])
def test_pfaffian_squared_is_det(n, rng):
    A = _skew(QQ, rng, n)
    ref = sympy.Matrix(A.tolist()).det()
    assert pfaffian(A) ** 2 == ref


def test_pfaffian_transformation(field, rng):
    A = _skew(field, rng)
    S = random_matrix(field, rng, (6, 6))
    assert pfaffian(S.T.dot(A).dot(S)) == det(S) * pfaffian(A)


@pytest.mark.parametrize("form,r", [(x(1, 2), 2), (x(1, 2) + x(3, 4), 4),
                                    (x(1, 4) + x(2, 5) + x(3, 6), 6)])
def test_skew_rank(form, r):
    assert skew_rank(form) == r


def test_decomposable():
    assert is_decomposable(e(1, 2) + e(1, 3))
    assert not is_decomposable(e(1, 2) + e(3, 4))


def test_pker_spans_kernel(field, rng):
    # a rank-4 form: pker is decomposable and its plane is the kernel
    B = random_matrix(field, rng, (4, 6))
    A = B.T.dot(_skew(field, rng, 4)).dot(B)
    assert skew_rank(A, field) == 4
    w = pker(A, field)
    assert is_decomposable(w)
    K = np.array(kernel_basis(A, field), dtype=object)
    assert rank(np.array([w.vector(field), plucker_vector(K, field)], dtype=object), field) == 1


def test_pker_rejects_wrong_rank():
    with pytest.raises(ValueError):
        pker(x(1, 4) + x(2, 5) + x(3, 6))


def test_pker_raw_vanishes_on_rank2():
    assert pker_raw(x(1, 2)).is_zero()


def test_plucker_quadrics_cut_out_decomposables(field, rng):
    qs = plucker_quadrics()
    assert len(qs) == 15
    M = random_matrix(field, rng, (2, 6))
    p = plucker_vector(M, field)
    assert all(q(p) == 0 for q in qs)
    w = (e(1, 2) + e(3, 4)).vector(field)
    assert any(q(list(w)) != 0 for q in qs)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_projective_plane_points(p):
    pts = projective_plane_points(p)
    assert len(pts) == p * p + p + 1
    assert len({tuple(r) for r in pts}) == len(pts)


def test_pairing():
    assert pairing2(x(1, 2), e(1, 2)) == 1
    assert pairing2(x(1, 2), e(1, 3)) == 0


def _pi_plane(field):
    return PfaffianPlane([x(3, 1) + x(6, 2), x(3, 2) + x(6, 4), x(3, 4) + x(6, 5)], field=field)


def test_reference_plane_structure():
    # [DERIVED] the plane spanned by x31+x62, x32+x64, x34+x65
    P = _pi_plane(F)
    assert P.pfaffian_vanishes()
    scan = P.rank2_scan()
    assert scan["points"] == 1009 ** 2 + 1009 + 1
    assert scan["rank2"] == []
    W = quadric_in_z(P, seed=0)
    assert W.shape == (4, 6)
    assert annihilates_wedge2(P, W)
    E = F.array(np.eye(6, dtype=int)[[0, 1, 3, 4]])
    assert rank(np.concatenate([W, E]), F) == 4


def test_plane_with_rank2_member():
    P = PfaffianPlane([x(1, 2), x(3, 4) + x(5, 6), x(1, 3) + x(2, 4) + x(5, 6)], field=GF(7))
    assert P.has_rank2_member()


def test_generic_plane_has_nonzero_pfaffian(rng):
    P = PfaffianPlane([_skew(F, rng) for _ in range(3)], field=F)
    assert not P.pfaffian_vanishes()
    assert P.pfaffian_cubic().is_homogeneous(3)


def test_dependent_basis_rejected():
    with pytest.raises(ValueError):
        PfaffianPlane([x(1, 2), x(1, 2), x(3, 4)], field=F)


def test_veronese_points_lie_in_z():
    P = _pi_plane(F)
    for w in veronese_locus(P, [[1, 2, 3], [0, 1, 5], [4, 0, 1]]):
        assert z_membership(w, P)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(0, 1008), min_size=3, max_size=3).filter(any))
def test_pker_image_is_decomposable(params):
    P = _pi_plane(F)
    w = veronese_locus(P, [params])[0]
    assert is_decomposable(w) and not w.is_zero()
