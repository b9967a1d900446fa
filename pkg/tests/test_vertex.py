import numpy as np
import pytest

from lglab.exact import GF, QQ, rank
from lglab.exterior import standard_J
from lglab.lgsigma import nodal_dual_form, plucker_lagrangian
from lglab.nodal import conic_point, fit_quadrics, off_conic_point
from lglab.vertex import (
    LinearSectionSetup, e_fiber, fiber_coordinates, fiber_quadrics, lagrangian_through,
    line_determinant, phi_rank, phi_rank_fast, projective_points, section_value, vertex_scan,
    witnessed_setup,
)

F = GF(1009)
F31 = GF(31)


def test_e_fiber_at_e1():
    fb = e_fiber([1, 0, 0, 0, 0, 0], QQ)
    assert fb.dim == 5


@pytest.mark.parametrize("seed", range(5))
def test_e_fiber_dimension(seed):
    rng = np.random.default_rng(seed)
    v = [F.random(rng) for _ in range(6)]
    fb = e_fiber(v, F)
    assert fb.dim == 5


def test_lagrangians_through_v_lie_in_fiber(rng):
    v = [F.random(rng) for _ in range(6)]
    fb = e_fiber(v, F)
    for _ in range(5):
        U = lagrangian_through(v, rng, F)
        assert (U[0] == np.array(v, dtype=object)).all()
        c = fiber_coordinates(fb, list(plucker_lagrangian(U, F)))
        assert len(c) == 5


def test_fiber_carries_one_quadric(rng):
    v = [F.random(rng) for _ in range(6)]
    fb = e_fiber(v, F)
    restricted = fiber_quadrics(fb)
    assert len(restricted) == 1
    pts = [fiber_coordinates(fb, list(plucker_lagrangian(lagrangian_through(v, rng, F), F)))
           for _ in range(20)]
    fitted = fit_quadrics(pts, F)
    assert len(fitted) == 1
    assert rank(np.array([list(restricted[0]), list(fitted[0])], dtype=object), F) == 1


def test_eight_points_underdetermine_a_quadric(rng):
    # 15 monomials in 5 variables: 8 points leave a 7-dimensional space
    v = [F.random(rng) for _ in range(6)]
    fb = e_fiber(v, F)
    pts = [fiber_coordinates(fb, list(plucker_lagrangian(lagrangian_through(v, rng, F), F)))
           for _ in range(8)]
    assert len(fit_quadrics(pts, F)) == 7


def test_fiber_coordinates_reject_outside_point(rng):
    fb = e_fiber([1, 0, 0, 0, 0, 0], QQ)
    with pytest.raises(ValueError):
        fiber_coordinates(fb, [0] * 13 + [1])


def test_section_value_on_and_off_conic(rng):
    W = nodal_dual_form(seed=4, field=F)
    for _ in range(5):
        on = np.array(conic_point(W.conic, F, rng), dtype=object).dot(W.frame)
        assert all(c == 0 for c in section_value(W.omega, on, field=F))
        off = np.array(off_conic_point(W.conic, F, rng), dtype=object).dot(W.frame)
        assert any(c != 0 for c in section_value(W.omega, off, field=F))


def test_setup_validation():
    W = nodal_dual_form(seed=1, field=QQ)
    with pytest.raises(ValueError):
        LinearSectionSetup([list(W.omega), list(W.omega)], field=QQ)
    with pytest.raises(ValueError):
        LinearSectionSetup([], field=QQ)
    with pytest.raises(ValueError):
        witnessed_setup(6)


@pytest.mark.parametrize("k", [2, 3, 5])
def test_fast_rank_matches_direct(k):
    st = witnessed_setup(k, seed=k, field=F31)
    rng = np.random.default_rng(k)
    pts = [[F31.random(rng) for _ in range(6)] for _ in range(8)]
    W = st.witnesses[0]
    pts += [list(np.array(conic_point(W.conic, F31, rng), dtype=object).dot(W.frame))
            for _ in range(4)]
    pts = [p for p in pts if any(c != 0 for c in p)]
    assert list(phi_rank_fast(st, pts)) == [phi_rank(st, p) for p in pts]


@pytest.mark.parametrize("p,dim", [(3, 2), (5, 2), (3, 5)])
def test_projective_points(p, dim):
    pts = projective_points(p, dim)
    assert len(pts) == (p ** (dim + 1) - 1) // (p - 1)


@pytest.mark.parametrize("k,seed", [(2, 0), (2, 1), (3, 0)])
def test_pivot_plane_fibers_are_conics(k, seed):
    st = witnessed_setup(k, seed=seed, field=F31)
    cs = projective_points(31, 2)
    for w in st.witnesses:
        scan = vertex_scan(st, plane=w.frame)
        Q = np.array([[int(c) for c in row] for row in w.conic], dtype=np.int64)
        conic = np.einsum("ni,ij,nj->n", cs, Q, cs) % 31 == 0
        assert np.array_equal(scan.ranks <= k - 1, conic)
        assert conic.sum() == 32           # a smooth conic over F_31


def test_scan_summary_and_csv():
    st = witnessed_setup(2, seed=0, field=GF(5))
    scan = vertex_scan(st, plane=st.witnesses[0].frame)
    s = scan.summary()
    assert s["points"] == 31 and s["locus_size"] == 6
    lines = scan.to_csv().strip().splitlines()
    assert lines[0].startswith("y1,") and len(lines) == 32


def test_sampled_scan_and_errors():
    st = witnessed_setup(2, seed=0, field=GF(7))
    scan = vertex_scan(st, mode="sampled", n_samples=200, seed=1)
    assert scan.mode == "sampled" and len(scan.ranks) <= 200
    with pytest.raises(ValueError):
        vertex_scan(witnessed_setup(2, seed=0, field=GF(37)))
    with pytest.raises(ValueError):
        vertex_scan(witnessed_setup(2, seed=0, field=QQ))


@pytest.mark.parametrize("seed", range(4))
def test_k5_line_degree(seed):
    st = witnessed_setup(5, seed=seed, field=F)
    rng = np.random.default_rng(50 + seed)
    v0 = np.array([F.random(rng) for _ in range(6)], dtype=object)
    v1 = np.array([F.random(rng) for _ in range(6)], dtype=object)
    assert line_determinant(st, v0, v1).degree() == 5


def test_k5_isotropic_line_degree():
    st = witnessed_setup(5, seed=9, field=F)
    J = standard_J(F)
    v0 = np.array([F(c) for c in [1, 2, 0, 0, 0, 0]], dtype=object)
    v1 = np.array([F(c) for c in [0, 3, 1, 0, 0, 0]], dtype=object)
    assert v0.dot(J).dot(v1) == 0
    assert line_determinant(st, v0, v1).degree() <= 5
