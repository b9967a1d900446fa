from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lglab.exact import (
    GF, QQ, Fp, det, field_of, intersect_rowspaces, inverse, kernel_basis, left_kernel,
    parse_field, random_invertible, random_matrix, rank, row_basis, rref, is_zero_array,
)

F7 = GF(7)


def _low_rank(field, rng, m, n, r):
    if r == 0:
        return field.array(np.zeros((m, n), dtype=int))
    return random_matrix(field, rng, (m, r)).dot(random_matrix(field, rng, (r, n)))


class TestFp:
    def test_arithmetic(self):
        a, b = F7(3), F7(5)
        assert a + b == 1 and a - b == 5 and a * b == 1 and a / b == 2
        assert -a == 4 and a ** 3 == 6 and a ** -1 == 5
        assert 1 - a == 5 and 2 / a == 3

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            F7(3) / F7(0)

    def test_mixed_fields_rejected(self):
        with pytest.raises(ValueError):
            F7(1) + GF(11)(1)

    def test_fraction_coercion(self):
        assert F7(Fraction(1, 2)) == 4

    @pytest.mark.parametrize("p", [4, 9, 2, 1])
    def test_bad_modulus(self, p):
        with pytest.raises(ValueError):
            GF(p)


@pytest.mark.parametrize("spec,char", [("q", 0), ("Q", 0), ("fp:1009", 1009), ("fp:31", 31)])
def test_parse_field(spec, char):
    assert parse_field(spec).characteristic == char


@pytest.mark.parametrize("spec", ["r", "fp:10", "fp:x", ""])
def test_parse_field_errors(spec):
    with pytest.raises(ValueError):
        parse_field(spec)


def test_field_of():
    assert field_of([Fraction(1), 2]) is QQ
    assert field_of([[1, F7(2)]]) == F7


@pytest.mark.parametrize("trial", range(40))
def test_rref_matches_sympy(trial):
    rng = np.random.default_rng(trial)
    m, n = rng.integers(1, 7, 2)
    r = int(rng.integers(0, min(m, n) + 1))
    A = _low_rank(QQ, rng, m, n, r) * Fraction(1, int(rng.integers(1, 5)))
    R, piv = rref(A)
    S, spiv = sympy.Matrix(A.tolist()).rref()
    assert list(spiv) == list(piv)
    assert all(Fraction(str(S[i, j])) == R[i, j] for i in range(m) for j in range(n))
    assert rank(A) == S.rank() == len(spiv)


@pytest.mark.parametrize("trial", range(20))
def test_det_matches_sympy_mod_p(trial):
    rng = np.random.default_rng(100 + trial)
    F = GF(1009)
    n = int(rng.integers(1, 7))
    A = random_matrix(F, rng, (n, n))
    ref = sympy.Matrix([[int(x) for x in row] for row in A]).det() % 1009
    assert det(A) == ref


def test_det_rational():
    A = QQ.array([[Fraction(1, 2), 3], [4, Fraction(5, 3)]])
    assert det(A) == Fraction(5, 6) - 12


def test_inverse(field, rng):
    A = random_invertible(field, rng, 5)
    I = A.dot(inverse(A))
    assert all(I[i, j] == (1 if i == j else 0) for i in range(5) for j in range(5))


def test_inverse_singular(field, rng):
    A = _low_rank(field, rng, 4, 4, 3)
    with pytest.raises(ZeroDivisionError):
        inverse(A)


def test_kernel_and_left_kernel(field, rng):
    A = _low_rank(field, rng, 5, 7, 3)
    ker = kernel_basis(A)
    assert len(ker) == 4
    assert all(is_zero_array(A.dot(np.array(k, dtype=object))) for k in ker)
    lk = left_kernel(A)
    assert len(lk) == 2
    assert all(is_zero_array(np.array(k, dtype=object).dot(A)) for k in lk)


def test_intersect_rowspaces(field, rng):
    common = random_matrix(field, rng, (2, 6))
    A = np.concatenate([common, random_matrix(field, rng, (1, 6))])
    B = np.concatenate([common, random_matrix(field, rng, (2, 6))])
    I = intersect_rowspaces(A, B, field)
    assert I.shape[0] == 2
    assert rank(np.concatenate([I, common]), field) == 2


def test_row_basis_rank(field, rng):
    A = _low_rank(field, rng, 6, 5, 2)
    assert row_basis(A).shape == (2, 5)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=12, max_size=12))
def test_rank_nullity_property(entries):
    A = QQ.array(np.array(entries).reshape(3, 4))
    assert rank(A) + len(kernel_basis(A)) == 4


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 1008), min_size=16, max_size=16))
def test_det_multiplicative_mod_p(entries):
    F = GF(1009)
    A = F.array(np.array(entries).reshape(4, 4))
    B = A.T.dot(A) + F.array(np.eye(4, dtype=int))
    assert det(A.dot(B)) == det(A) * det(B)


def test_modp_and_rational_agree_on_integer_matrix(rng):
    A = rng.integers(-5, 6, (6, 8))
    A[3] = A[0] + 2 * A[1]
    assert rank(QQ.array(A)) == rank(GF(1009).array(A)) == 5
