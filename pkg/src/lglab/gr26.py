"""G(2,6) ⊂ P^14, the Pfaffian cubic and planes of rank-4 skew forms.

Two-vectors and two-forms are :class:`~lglab.exterior.MultiVector` objects of
degree 2 or plain skew 6x6 matrices; 15 coordinates are ordered
(1,2), (1,3), ..., (5,6).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .exact import (
    field_of, kernel_basis, rank, row_basis, det, random_matrix,
)
from .exterior import MultiVector, sort_sign, subsets, wedge
from .poly import Poly, variables

PAIRS = subsets(6, 2)


def _as_skew(A, field=None):
    if isinstance(A, MultiVector):
        return A.skew_matrix(field)
    A = np.asarray(A, dtype=object)
    if A.shape == (15,):
        return MultiVector.from_vector(6, 2, A).skew_matrix(field)
    return A


def _pf(A, idx):
    """Standard recursive Pfaffian expansion along the first index."""
    if not idx:
        return 1
    i = idx[0]
    total = 0
    for pos in range(1, len(idx)):
        j = idx[pos]
        a = A[i][j]
        if a == 0:
            continue
        rest = idx[1:pos] + idx[pos + 1:]
        term = a * _pf(A, rest)
        total = total + term if pos % 2 == 1 else total - term
    return total


def pfaffian(A):
    """Pfaffian of a skew 2n x 2n matrix, normalized so that Pf(J) = +1."""
    A = _as_skew(A)
    n2 = len(A)
    n = n2 // 2
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    val = _pf(A, list(range(n2)))
    return val if sign == 1 else -val


def skew_rank(A, field=None) -> int:
    A = _as_skew(A, field)
    return rank(A, field)


def is_decomposable(w) -> bool:
    """w ^ w == 0 for a 2-vector (or 2-form)."""
    if not isinstance(w, MultiVector):
        w = MultiVector.from_vector(6, 2, list(w))
    return wedge(w, w).is_zero()


def pairing2(A, w):
    """<A, w> = sum_{i<j} A_ij w_ij for a 2-form and a 2-vector."""
    A = _as_skew(A)
    if isinstance(w, MultiVector):
        w = w.vector()
    total = 0
    for (i, j), c in zip(PAIRS, w):
        total = total + A[i][j] * c
    return total


def complement_dual(form4: MultiVector) -> MultiVector:
    """∧^4 V* -> ∧^2 V, x_I -> sgn(I, I^c) e_{I^c}."""
    out = {}
    full = set(range(form4.n))
    for I, c in form4.coeffs.items():
        Ic = tuple(sorted(full - set(I)))
        s, _ = sort_sign(I + Ic)
        out[Ic] = out.get(Ic, 0) + s * c
    return MultiVector(form4.n, form4.n - form4.k, out)


def pker_raw(A) -> MultiVector:
    """The quadratic map A -> complement of A ^ A (no rank check)."""
    if not isinstance(A, MultiVector):
        A = MultiVector.from_skew(_as_skew(A), dual=True)
    return complement_dual(wedge(A, A))


def pker(A, field=None) -> MultiVector:
    """Decomposable 2-vector spanning ∧^2 ker A for a rank-4 skew form A."""
    M = _as_skew(A, field)
    if field is None:
        field = field_of(M)
    r = rank(M, field)
    if r != 4:
        raise ValueError(f"pker needs a rank-4 form, got rank {r}")
    return pker_raw(MultiVector.from_skew(M, dual=True))


def plucker_vector(M, field=None) -> list:
    """Maximal minors of a k x n matrix over sorted column k-subsets."""
    M = np.asarray(M, dtype=object)
    if field is None:
        field = field_of(M)
    k, n = M.shape
    out = []
    for cols in itertools.combinations(range(n), k):
        sub = M[:, list(cols)]
        if k == 2:
            out.append(sub[0, 0] * sub[1, 1] - sub[0, 1] * sub[1, 0])
        else:
            out.append(det(sub, field))
    return out


def plucker_quadrics() -> list:
    """The 15 coefficients of w ^ w as quadrics in the 15 coordinates of w."""
    xs = variables(15)
    w = MultiVector(6, 2, dict(zip(PAIRS, xs)))
    ww = wedge(w, w)
    return [ww.coeffs.get(I, Poly(15)) for I in subsets(6, 4)]


def projective_plane_points(p: int) -> np.ndarray:
    """Normalized representatives of all p^2 + p + 1 points of P^2(F_p)."""
    t, u = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64), indexing="ij")
    affine = np.stack([np.ones(p * p, dtype=np.int64), t.ravel(), u.ravel()], axis=1)
    line = np.stack([np.zeros(p, dtype=np.int64), np.ones(p, dtype=np.int64),
                     np.arange(p, dtype=np.int64)], axis=1)
    return np.concatenate([affine, line, np.array([[0, 0, 1]], dtype=np.int64)])


def z_membership(w, plane: "PfaffianPlane") -> bool:
    if not isinstance(w, MultiVector):
        w = MultiVector.from_vector(6, 2, list(w))
    if w.is_zero() or not is_decomposable(w):
        return False
    return all(pairing2(A, w) == 0 for A in plane.basis)


@dataclass
class PfaffianPlane:
    """A 3-dimensional space of skew forms, given by a basis of skew matrices."""

    basis: list
    field: object = None

    def __post_init__(self):
        self.basis = [np.asarray(_as_skew(A), dtype=object) for A in self.basis]
        if self.field is None:
            self.field = field_of(*self.basis)
        self.basis = [self.field.array(A) for A in self.basis]
        if len(self.basis) != 3:
            raise ValueError("a plane needs 3 basis forms")
        flat = np.array([[A[i, j] for i, j in PAIRS] for A in self.basis], dtype=object)
        if rank(flat, self.field) != 3:
            raise ValueError("basis forms are dependent")

    def member(self, params):
        s = params
        return s[0] * self.basis[0] + s[1] * self.basis[1] + s[2] * self.basis[2]

    def pfaffian_cubic(self) -> Poly:
        """Pf(s A1 + t A2 + u A3) as a cubic in (s, t, u)."""
        s = variables(3, self.field.one)
        M = [[s[0] * self.basis[0][i, j] + s[1] * self.basis[1][i, j] + s[2] * self.basis[2][i, j]
              for j in range(6)] for i in range(6)]
        return pfaffian(M)

    def pfaffian_vanishes(self) -> bool:
        return self.pfaffian_cubic().is_zero()

    def square_map(self) -> np.ndarray:
        """6 x 15 matrix: (A ^ A) coordinates for the monomials s^2, st, su, t^2, tu, u^2."""
        forms = [MultiVector.from_skew(A, dual=True) for A in self.basis]
        rows = []
        for i, j in itertools.combinations_with_replacement(range(3), 2):
            ww = wedge(forms[i], forms[j])
            if i != j:
                ww = ww * 2
            rows.append(ww.vector(self.field))
        return np.array(rows, dtype=object)

    def rank2_scan(self, chunk: int = 200_000) -> dict:
        """Exhaustively look for rank-2 members over P^2(F_p).

        Returns a record with the number of points scanned and any offenders.
        """
        p = self.field.characteristic
        if not p:
            raise ValueError("exhaustive scan needs a prime field")
        B = np.array([[int(c) for c in row] for row in self.square_map()], dtype=np.int64)
        pts = projective_plane_points(p)
        offenders = []
        for start in range(0, len(pts), chunk):
            P = pts[start:start + chunk]
            mons = np.stack([P[:, i] * P[:, j] % p for i, j in
                             itertools.combinations_with_replacement(range(3), 2)], axis=1)
            vals = mons.dot(B) % p
            bad = np.flatnonzero(~vals.any(axis=1))
            offenders.extend(P[bad].tolist())
        return {"mode": "exhaustive", "points": int(len(pts)), "rank2": offenders}

    def has_rank2_member(self) -> bool:
        return bool(self.rank2_scan()["rank2"])

    def serialize(self):
        return [[self.field.serialize(A[i, j]) for i, j in PAIRS] for A in self.basis]


def quadric_in_z(plane: PfaffianPlane, seed=None, n_forms: int = 4) -> np.ndarray:
    """The 4-space W spanned by kernels of members of the plane (rows of a 4x6 matrix)."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    F = plane.field
    kers = []
    used = 0
    tries = 0
    while used < n_forms:
        tries += 1
        if tries > 50 * n_forms:
            raise ValueError("could not find enough rank-4 members")
        s = [F.random_nonzero(rng) for _ in range(3)]
        A = plane.member(s)
        r = rank(A, F)
        if r == 2:
            raise ValueError("plane contains a rank-2 form")
        if r != 4:
            continue
        kers.extend(kernel_basis(A, F))
        used += 1
    W = row_basis(np.array(kers, dtype=object), F)
    if W.shape[0] != 4:
        raise ValueError(f"kernels span a {W.shape[0]}-dimensional space, expected 4")
    for A in plane.basis:
        if any(c != 0 for c in W.dot(A).dot(W.T).flat):
            raise ValueError("plane does not vanish on ∧^2 W")
    return W


def annihilates_wedge2(plane: PfaffianPlane, W) -> bool:
    W = np.asarray(W, dtype=object)
    return all(all(c == 0 for c in W.dot(A).dot(W.T).flat) for A in plane.basis)


def veronese_locus(plane: PfaffianPlane, params) -> list:
    """pker of the members s A1 + t A2 + u A3 for the given parameter triples."""
    out = []
    for s in params:
        A = plane.member([plane.field(c) for c in s])
        if rank(A, plane.field) == 2:
            raise ValueError("encountered a rank-2 member")
        out.append(pker(A, plane.field))
    return out
