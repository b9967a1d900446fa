import numpy as np
import pytest

from lglab.exact import GF
from lglab.poly import Poly, monomial_matrix, monomials, poly_from_vector, variables, vector_from_poly


def test_arithmetic_and_eval():
    x, y = variables(2)
    P = (x + y) ** 3 - x * y * 3 * (x + y)
    assert P == x ** 3 + y ** 3
    assert P([2, 3]) == 35
    assert P.degree() == 3 and P.is_homogeneous(3)


def test_diff():
    x, y, z = variables(3)
    P = x ** 2 * y + 5 * z
    assert P.diff(0) == 2 * x * y and P.diff(2) == Poly.constant(3, 5)


@pytest.mark.parametrize("n,d,count", [(14, 2, 105), (12, 2, 78), (5, 2, 15), (3, 3, 10), (6, 1, 6)])
def test_monomial_counts(n, d, count):
    assert len(monomials(n, d)) == count


def test_vector_round_trip():
    xs = variables(4)
    P = xs[0] * xs[1] - 7 * xs[3] ** 2 + xs[2] * xs[0]
    v = vector_from_poly(P, 2)
    assert poly_from_vector(v, 4, 2) == P


def test_monomial_matrix_evaluates():
    xs = variables(3)
    P = xs[0] * xs[2] - 2 * xs[1] ** 2
    pts = [[1, 2, 3], [0, 1, 5], [2, 2, 2]]
    M = monomial_matrix(pts, 2)
    v = np.array(vector_from_poly(P, 2), dtype=object)
    assert list(M.dot(v)) == [P(p) for p in pts]


def test_finite_field_coefficients():
    F = GF(5)
    x, y = variables(2, F.one)
    assert ((x + y) ** 5 - x ** 5 - y ** 5).is_zero()
