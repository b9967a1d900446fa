import numpy as np
import pytest

from lglab.exact import GF, QQ, rank
from lglab.exterior import pairing14
from lglab.gr26 import is_decomposable
from lglab.lgsigma import nodal_dual_form, on_sigma
from lglab.nodal import (
    conic_point, fit_projection, fit_quadrics, frame_change_map, gr_point, off_conic_point,
    pi_u, projection_coordinates, sample_hyperplane_std, section_space, standard_form,
    witness_conic_std,
)

F = GF(1009)


@pytest.fixture(scope="module")
def witness():
    return nodal_dual_form(seed=11, field=F)


@pytest.fixture(scope="module")
def fitted(witness):
    S = section_space(witness, seed=1)
    return S, fit_projection(witness, S, 200, 50, seed=2)


def test_standard_form_shape(witness):
    d = standard_form(witness)
    assert d[:7] == [0] * 7
    assert rank(witness_conic_std(witness), F) == 3


def test_conic_points(witness, rng):
    Q = witness_conic_std(witness)
    for _ in range(5):
        c = np.array(conic_point(Q, F, rng), dtype=object)
        assert c.dot(Q).dot(c) == 0 and any(v != 0 for v in c)
        d = np.array(off_conic_point(Q, F, rng), dtype=object)
        assert d.dot(Q).dot(d) != 0


def test_conic_point_over_q():
    W = nodal_dual_form(seed=0, field=QQ, Ystar=np.diag([1, 1, -1]), zstar=1)
    Q = witness_conic_std(W)
    c = np.array(conic_point(Q, QQ, np.random.default_rng(0)), dtype=object)
    assert c.dot(Q).dot(c) == 0


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_section_space_dimensions(witness, seed):
    on = section_space(witness, seed=seed)
    off = section_space(witness, seed=seed, on_conic=False)
    assert (on.dim, on.full_dim) == (6, 7)
    assert (off.dim, off.full_dim) == (5, 6)


def test_samples_lie_on_section(witness, rng):
    for _ in range(5):
        s = sample_hyperplane_std(witness, rng)
        assert on_sigma(s.point)
        assert pairing14(standard_form(witness), s.point) == 0


def test_projection_coordinates(witness):
    coords = projection_coordinates(witness)
    assert len(coords) == 12 and 0 not in coords


def test_gr_points_decomposable(witness, rng):
    S = section_space(witness, seed=4)
    for _ in range(5):
        b = gr_point(sample_hyperplane_std(witness, rng).frame, S)
        if b is not None:
            assert is_decomposable(b)


def test_fit_projection(fitted):
    S, fit = fitted
    assert fit.ok
    assert fit.solution_dim == 1
    assert fit.test_pass == fit.test_total == 50
    assert fit.test_on_grassmannian == 50
    assert rank(fit.M, F) == 12


def test_fit_plane(fitted):
    _, fit = fitted
    P = fit.plane()
    assert P.pfaffian_vanishes()
    assert not P.has_rank2_member()


def test_fit_report_keys(fitted):
    _, fit = fitted
    rep = fit.report()
    assert rep["solution_dim"] == 1 and len(rep["plane"]) == 3


def test_fit_rejects_off_conic(witness):
    S = section_space(witness, seed=1, on_conic=False)
    with pytest.raises(ValueError):
        fit_projection(witness, S, 200, 10, seed=0)


def test_projected_ideal(witness, rng):
    pts = [pi_u(witness, sample_hyperplane_std(witness, rng).point) for _ in range(400)]
    assert len(fit_quadrics(pts, F)) == 15


def test_independent_of_v(witness, fitted):
    # a different point of the conic gives a different section space, related by a fixed gl(6)
    S1, fit = fitted
    S2 = section_space(witness, seed=7)
    assert rank(np.concatenate([S1.basis, S2.basis]), F) > 6
    g = frame_change_map(S1, S2, [p[2].frame for p in fit.pairs[:50]], F)
    assert len(g) == 1 and rank(g[0], F) == 6
