"""Simultaneous diagonalization of a generic pencil of skew forms.

A generic pencil <alpha, alpha'> in ∧^2 F^{2n} contains exactly n members of
rank 2n-2, at the roots of Pf(lambda alpha - alpha').  Their images
V_1..V_n cut out 2-planes U_j = ∩_{i≠j} V_i and

    alpha = sum c_j gamma_j,  alpha' = sum c'_j gamma_j,   gamma_j = ∧^2 U_j.

Skew matrices stand for either 2-vectors or 2-forms; the linear algebra is
the same, only the interpretation of "image" changes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
import numpy as np
import sympy

from .exact import QQ, field_of, intersect_rowspaces, kernel_basis, rank, row_basis
from .gr26 import pfaffian
from .poly import Poly

__all__ = [
    "PencilDiagonalization", "pencil_pfaffian", "pencil_roots", "pencil_diagonalize",
    "conjugate", "diagonal_pencil", "segre_components", "common_lagrangian_test",
    "restricts_to_zero", "meets_all", "segre_degree", "vec_of", "skew_of",
]


def skew_of(v, n2: int, field) -> np.ndarray:
    """Skew matrix from coordinates over sorted pairs."""
    A = np.array([[field.zero] * n2 for _ in range(n2)], dtype=object)
    k = 0
    for i in range(n2):
        for j in range(i + 1, n2):
            A[i, j] = field(v[k])
            A[j, i] = -field(v[k])
            k += 1
    return A


def vec_of(A) -> list:
    A = np.asarray(A, dtype=object)
    n2 = A.shape[0]
    return [A[i, j] for i in range(n2) for j in range(i + 1, n2)]


def conjugate(T, A) -> np.ndarray:
    """∧^2 T applied to the 2-vector with skew matrix A: T A T^t."""
    T = np.asarray(T, dtype=object)
    return T.dot(np.asarray(A, dtype=object)).dot(T.T)


def pencil_pfaffian(A, B, field) -> Poly:
    """Pf(lambda A - B) as a univariate polynomial in lambda."""
    lam = Poly.var(1, 0, field.one)
    n2 = len(A)
    M = [[lam * A[i][j] - B[i][j] for j in range(n2)] for i in range(n2)]
    return pfaffian(M)


def pencil_roots(A, B, field) -> list:
    """Roots of the pencil Pfaffian in the field, with multiplicity check."""
    P = pencil_pfaffian(A, B, field)
    n = len(A) // 2
    if P.degree() != n:
        raise ValueError("first member of the pencil must be nondegenerate")
    coeffs = [field(P.coefficient((d,))) for d in range(n + 1)]
    if field.characteristic:
        p = field.p
        lam = np.arange(p, dtype=np.int64)
        val = np.zeros(p, dtype=np.int64)
        for c in reversed(coeffs):
            val = (val * lam + int(c)) % p
        roots = [field(int(r)) for r in np.flatnonzero(val == 0)]
    else:
        t = sympy.Symbol("t")
        poly = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * t ** d
                              for d, c in enumerate(coeffs)), t, domain="QQ")
        rr = poly.ground_roots()
        if sum(rr.values()) < n:
            raise ValueError("Pfaffian has roots outside Q; pencil does not split over the field")
        if any(m > 1 for m in rr.values()):
            raise ValueError("repeated roots: pencil is not generic")
        roots = [Fraction(int(r.p), int(r.q)) for r in rr]
    if len(roots) < n:
        raise ValueError("Pfaffian does not split over the field (or has repeated roots)")
    return sorted(roots, key=lambda r: (r.v if hasattr(r, "v") else r))


def _normalize(vec, field):
    """Scale so that the last nonzero coordinate is 1."""
    last = next(c for c in reversed(vec) if c != 0)
    return [field(c) / last for c in vec]


@dataclass
class PencilDiagonalization:
    n: int
    alpha: np.ndarray
    alpha2: np.ndarray
    roots: list
    betas: list
    V: list                  # images of the rank-(2n-2) members (rows span)
    U: list                  # 2-dimensional pieces
    gammas: list             # pair coordinates of gamma_j, last nonzero entry 1
    coeffs: list             # alpha = sum coeffs[j] gamma_j
    coeffs2: list            # alpha' = sum coeffs2[j] gamma_j
    field: object = QQ

    def report(self) -> dict:
        F = self.field
        return {"n": self.n, "roots": [F.serialize(r) for r in self.roots],
                "gammas": [[F.serialize(c) for c in g] for g in self.gammas],
                "coeffs": [F.serialize(c) for c in self.coeffs],
                "coeffs2": [F.serialize(c) for c in self.coeffs2]}


def pencil_diagonalize(alpha, alpha2, n: int = None, field=None) -> PencilDiagonalization:
    A = np.asarray(alpha, dtype=object)
    B = np.asarray(alpha2, dtype=object)
    if field is None:
        field = field_of(A, B)
    A, B = field.array(A), field.array(B)
    n2 = A.shape[0]
    if n is None:
        n = n2 // 2
    if n2 != 2 * n:
        raise ValueError("matrix size must be 2n")
    if rank(A, field) != 2 * n:
        raise ValueError("alpha must have full rank 2n")
    roots = pencil_roots(A, B, field)
    betas, V = [], []
    for lam in roots:
        beta = lam * A - B
        r = rank(beta, field)
        if r != 2 * n - 2:
            raise ValueError(f"member at root {lam} has rank {r}, expected {2 * n - 2}")
        betas.append(beta)
        V.append(row_basis(beta.T, field))      # column space
    U = []
    for j in range(n):
        others = [V[i] for i in range(n) if i != j]
        S = others[0]
        for W in others[1:]:
            S = intersect_rowspaces(S, W, field)
        if S.shape[0] != 2:
            raise ValueError("pencil is not generic: intersection is not 2-dimensional")
        U.append(S)
    gammas = []
    for S in U:
        u, w = S[0], S[1]
        g = np.outer(u, w) - np.outer(w, u)
        gammas.append(_normalize(vec_of(g), field))
    G = np.array(gammas, dtype=object).T          # pairs x n
    coeffs = _solve_combination(G, vec_of(A), field)
    coeffs2 = _solve_combination(G, vec_of(B), field)
    return PencilDiagonalization(n, A, B, roots, betas, V, U, gammas, coeffs, coeffs2, field)


def _solve_combination(G, target, field) -> list:
    """c with G c = target, exactly (raises if inconsistent)."""
    aug = np.concatenate([G, np.array([target], dtype=object).T], axis=1)
    ker = kernel_basis(aug, field)
    sol = [k for k in ker if k[-1] != 0]
    if not sol:
        raise ValueError("target is not in the span of the components")
    k = sol[0]
    c = [-x / k[-1] for x in k[:-1]]
    if any(a != b for a, b in zip(G.dot(np.array(c, dtype=object)), target)):
        raise AssertionError("reconstruction failed")  # pragma: no cover
    return c


def diagonal_pencil(lams, field) -> tuple:
    """alpha = sum e_{i,i+n}, alpha' = sum lam_i e_{i,i+n}."""
    n = len(lams)
    A = np.array([[field.zero] * (2 * n) for _ in range(2 * n)], dtype=object)
    B = A.copy()
    for i, lam in enumerate(lams):
        A[i, i + n], A[i + n, i] = field.one, -field.one
        B[i, i + n], B[i + n, i] = field(lam), -field(lam)
    return A, B


# ---------------------------------------------------------------------------
# common Lagrangian subspaces of a pencil of forms

def segre_components(alpha, alpha2, field=None) -> list:
    """The 2-planes W_i ⊂ V with sum W_i = V on which the pencil splits.

    For 2-forms the diagonalization gives rank-2 forms gamma_j with Gram
    matrices G_j; W_i = ∩_{j≠i} null(G_j).
    """
    d = pencil_diagonalize(alpha, alpha2, field=field)
    F = d.field
    n2 = 2 * d.n
    nulls = []
    for g in d.gammas:
        nulls.append(np.array(kernel_basis(skew_of(g, n2, F), F), dtype=object))
    W = []
    for i in range(d.n):
        others = [nulls[j] for j in range(d.n) if j != i]
        S = others[0]
        for Nm in others[1:]:
            S = intersect_rowspaces(S, Nm, F)
        if d.n == 1:
            S = F.array(np.eye(2, dtype=int))
        if S.shape[0] != 2:
            raise ValueError("W_i is not 2-dimensional")
        W.append(S)
    return W


def restricts_to_zero(U, A) -> bool:
    U = np.asarray(U, dtype=object)
    return all(c == 0 for c in U.dot(np.asarray(A, dtype=object)).dot(U.T).flat)


def meets_all(U, W, field) -> bool:
    U = np.asarray(U, dtype=object)
    n = U.shape[0]
    return all(rank(np.concatenate([U, Wi]), field) < n + Wi.shape[0] for Wi in W)


def common_lagrangian_test(U, alpha, alpha2, field=None, W=None) -> bool:
    """Both forms vanish on U (an n x 2n frame of rank n)."""
    U = np.asarray(U, dtype=object)
    if field is None:
        field = field_of(U, alpha, alpha2)
    if rank(U, field) != U.shape[0]:
        raise ValueError("frame is rank deficient")
    return restricts_to_zero(U, alpha) and restricts_to_zero(U, alpha2)


def segre_degree(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return math.factorial(n)
