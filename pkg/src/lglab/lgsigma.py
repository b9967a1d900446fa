"""The Lagrangian Grassmannian LG(3,6) as a subvariety of P^13 = P(V(14)).

Points are 14-tuples ``[u, x11, x12, x13, x22, x23, x33, y11, ..., y33, z]``
(see :mod:`lglab.exterior` for the dictionary with 3-vectors).  Dual forms
use the same layout and pair with points through the trace pairing
``u*u + tr(X*X) + tr(Y*Y) + z*z``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import List, Sequence

import numpy as np

from .exact import QQ, field_of, inverse, kernel_basis, rank, random_matrix
from .exterior import (
    SYM_PAIRS, MultiVector, compound, correlation_inverse, dual_to_3form,
    form_to_dual, pairing14, random_symplectic, sigma_to_trivector,
    sp_action14, standard_J, trivector_to_sigma, v14_decompose, wedge,
)
from .poly import Poly, variables

SIGMA = "SIGMA"
OMEGA_MINUS_SIGMA = "OMEGA_MINUS_SIGMA"
F_MINUS_OMEGA = "F_MINUS_OMEGA"
GENERIC = "GENERIC"
ORBITS = (SIGMA, OMEGA_MINUS_SIGMA, F_MINUS_OMEGA, GENERIC)


# ---------------------------------------------------------------------------
# points and forms

class _Coords14:
    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = list(coords)
        if len(coords) != 14:
            raise ValueError("expected 14 coordinates")
        self.coords = coords

    @property
    def u(self):
        return self.coords[0]

    @property
    def z(self):
        return self.coords[13]

    def _block(self, off):
        M = np.empty((3, 3), dtype=object)
        for t, (a, b) in enumerate(SYM_PAIRS):
            M[a, b] = M[b, a] = self.coords[off + t]
        return M

    @property
    def X(self):
        return self._block(1)

    @property
    def Y(self):
        return self._block(7)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return 14

    def __getitem__(self, i):
        return self.coords[i]

    def serialize(self, field=None):
        if field is None:
            field = field_of(self.coords)
        return [field.serialize(c) for c in self.coords]

    def __eq__(self, other):
        return list(self) == list(other)

    def __repr__(self):
        return f"{type(self).__name__}({[str(c) for c in self.coords]})"


class SigmaPoint(_Coords14):
    """Homogeneous coordinates [u : X : Y : z] of a point of P^13."""

    @classmethod
    def from_blocks(cls, u, X, Y, z):
        X = np.asarray(X, dtype=object)
        Y = np.asarray(Y, dtype=object)
        return cls([u] + [X[a, b] for a, b in SYM_PAIRS] + [Y[a, b] for a, b in SYM_PAIRS] + [z])


class DualForm(_Coords14):
    """Coordinates [u* : X* : Y* : z*] of a hyperplane of P^13."""

    @classmethod
    def from_blocks(cls, u, X, Y, z):
        X = np.asarray(X, dtype=object)
        Y = np.asarray(Y, dtype=object)
        return cls([u] + [X[a, b] for a, b in SYM_PAIRS] + [Y[a, b] for a, b in SYM_PAIRS] + [z])

    def __call__(self, point):
        return pairing14(self.coords, list(point))


def _sym3(entries):
    M = np.empty((3, 3), dtype=object)
    for t, (a, b) in enumerate(SYM_PAIRS):
        M[a, b] = M[b, a] = entries[t]
    return M


def adjugate3(X):
    """Classical adjoint (transposed cofactor matrix) of a 3x3 matrix."""
    X = np.asarray(X, dtype=object)
    A = np.empty((3, 3), dtype=object)
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != j]
            c = [k for k in range(3) if k != i]
            m = X[r[0], c[0]] * X[r[1], c[1]] - X[r[0], c[1]] * X[r[1], c[0]]
            A[i, j] = m if (i + j) % 2 == 0 else -m
    return A


def det3(X):
    X = np.asarray(X, dtype=object)
    return (X[0, 0] * (X[1, 1] * X[2, 2] - X[1, 2] * X[2, 1])
            - X[0, 1] * (X[1, 0] * X[2, 2] - X[1, 2] * X[2, 0])
            + X[0, 2] * (X[1, 0] * X[2, 1] - X[1, 1] * X[2, 0]))


def chart_point(X, field=None) -> SigmaPoint:
    """[1, X, adj X, det X] for a symmetric 3x3 matrix X."""
    X = np.asarray(X, dtype=object)
    if field is None:
        field = field_of(X)
    X = field.array(X)
    if any(X[a, b] != X[b, a] for a in range(3) for b in range(3)):
        raise ValueError("X must be symmetric")
    return SigmaPoint.from_blocks(field.one, X, adjugate3(X), det3(X))


def is_lagrangian(U, J=None) -> bool:
    U = np.asarray(U, dtype=object)
    field = field_of(U)
    if J is None:
        J = standard_J(field)
    if rank(U, field) != U.shape[0]:
        return False
    G = U.dot(J).dot(U.T)
    return all(g == 0 for g in G.flat)


def plucker_lagrangian(U, field=None) -> SigmaPoint:
    """Point of Sigma spanned by the rows of a Lagrangian 3x6 frame."""
    U = np.asarray(U, dtype=object)
    if field is None:
        field = field_of(U)
    U = field.array(U)
    if U.shape != (3, 6) or not is_lagrangian(U):
        raise ValueError("frame must be a rank-3 Lagrangian 3x6 matrix")
    rows = [MultiVector(6, 1, {(j,): U[i, j] for j in range(6)}) for i in range(3)]
    w = wedge(wedge(rows[0], rows[1]), rows[2])
    return SigmaPoint(trivector_to_sigma(w, field))


def lagrangian_from_point(w, field=None) -> np.ndarray:
    """Recover a 3x6 frame of the Lagrangian subspace {v : v ^ w = 0}."""
    if field is None:
        field = field_of(list(w))
    t = sigma_to_trivector(list(w))
    cols = []
    for j in range(6):
        ej = MultiVector(6, 1, {(j,): field.one})
        cols.append(wedge(ej, t).vector(field))
    M = np.array(cols, dtype=object).T     # 15 x 6
    ker = kernel_basis(M, field)
    if len(ker) != 3:
        raise ValueError("point is not decomposable")
    return np.array(ker, dtype=object)


# ---------------------------------------------------------------------------
# equations

def quadric_values(c) -> list:
    """The 21 quadrics at a point: 12 'left column', then 9 'right column'."""
    u, x11, x12, x13, x22, x23, x33, y11, y12, y13, y22, y23, y33, z = list(c)
    left = [
        u * y11 - x22 * x33 + x23 * x23,
        u * y22 - x11 * x33 + x13 * x13,
        u * y33 - x11 * x22 + x12 * x12,
        u * z - x11 * y11 - x12 * y12 - x13 * y13,
        u * z - x12 * y12 - x22 * y22 - x23 * y23,
        u * z - x13 * y13 - x23 * y23 - x33 * y33,
        x11 * y12 + x12 * y22 + x13 * y23,
        x11 * y13 + x12 * y23 + x13 * y33,
        x12 * y11 + x22 * y12 + x23 * y13,
        x12 * y13 + x22 * y23 + x23 * y33,
        x13 * y11 + x23 * y12 + x33 * y13,
        x13 * y12 + x23 * y22 + x33 * y23,
    ]
    right = [
        u * y12 + x12 * x33 - x13 * x23,
        u * y13 - x12 * x23 + x13 * x22,
        u * y23 + x11 * x23 - x12 * x13,
        z * x11 - y22 * y33 + y23 * y23,
        z * x22 - y11 * y33 + y13 * y13,
        z * x33 - y11 * y22 + y12 * y12,
        z * x12 + y12 * y33 - y13 * y23,
        z * x13 - y12 * y23 + y13 * y22,
        z * x23 + y11 * y23 - y12 * y13,
    ]
    return left + right


@lru_cache(maxsize=None)
def sigma_quadrics() -> tuple:
    """The 21 defining quadrics of Sigma as polynomials in the 14 coordinates."""
    return tuple(quadric_values(variables(14)))


def _minor(M, i, j):
    r = [k for k in range(3) if k != i]
    c = [k for k in range(3) if k != j]
    return M[r[0], c[0]] * M[r[1], c[1]] - M[r[0], c[1]] * M[r[1], c[0]]


def quartic_value(c):
    """(uz - tr XY)^2 + 4u det Y + 4z det X - 4 sum_ij det(X_ij) det(Y_ij)."""
    c = list(c)
    u, z = c[0], c[13]
    X, Y = _sym3(c[1:7]), _sym3(c[7:13])
    tr = 0
    for i in range(3):
        for j in range(3):
            tr = tr + X[i, j] * Y[j, i]
    s = 0
    for i in range(3):
        for j in range(3):
            s = s + _minor(X, i, j) * _minor(Y, i, j)
    t = u * z - tr
    return t * t + 4 * u * det3(Y) + 4 * z * det3(X) - 4 * s


@lru_cache(maxsize=None)
def quartic_f() -> Poly:
    return quartic_value(variables(14))


@lru_cache(maxsize=None)
def quartic_gradient() -> tuple:
    f = quartic_f()
    return tuple(f.diff(i) for i in range(14))


def on_sigma(w) -> bool:
    return all(q == 0 for q in quadric_values(list(w)))


def orbit_classify(w) -> str:
    """Orbit of a nonzero point: SIGMA, OMEGA_MINUS_SIGMA, F_MINUS_OMEGA or GENERIC."""
    w = list(w)
    if all(c == 0 for c in w):
        raise ValueError("zero vector")
    if on_sigma(w):
        return SIGMA
    if all(g(w) == 0 for g in quartic_gradient()):
        return OMEGA_MINUS_SIGMA
    if quartic_f()(w) == 0:
        return F_MINUS_OMEGA
    return GENERIC


def dual_to_point(om, field=None) -> SigmaPoint:
    """L_alpha^{-1}(omega), projected to V(14)."""
    om = list(om)
    if field is None:
        field = field_of(om)
    t = correlation_inverse(dual_to_3form([field(c) for c in om]), field=field)
    w14, _ = v14_decompose(t, field)
    return SigmaPoint(trivector_to_sigma(w14, field))


def dual_classify(om) -> str:
    return orbit_classify(dual_to_point(om))


# ---------------------------------------------------------------------------
# frames, tangent spaces and conic forms

def _coordinate_lagrangians():
    for mask in range(8):
        yield [i + 3 if (mask >> i) & 1 else i for i in range(3)]


def complete_to_symplectic(U, field=None) -> np.ndarray:
    """Columns (u1, u2, u3, f1, f2, f3) with S^T J S = J; rows of U are the u_i."""
    U = np.asarray(U, dtype=object)
    if field is None:
        field = field_of(U)
    U = field.array(U)
    if not is_lagrangian(U):
        raise ValueError("frame is not Lagrangian")
    J = standard_J(field)
    for idx in _coordinate_lagrangians():
        W = field.array(np.eye(6, dtype=int))[idx]     # rows w_j
        G = U.dot(J).dot(W.T)
        if rank(G, field) == 3:
            Fm = inverse(G, field).T.dot(W)             # rows f_j = sum_k C_kj w_k
            return np.concatenate([U, Fm], axis=0).T
    raise AssertionError("no transversal coordinate Lagrangian")  # pragma: no cover


def _pullback(om, S, field):
    """Coordinates of omega o (∧^3 S) in the 14-coordinate layout."""
    om3 = dual_to_3form([field(c) for c in om])
    C = compound(S, 3, field)
    pulled = MultiVector.from_vector(6, 3, C.T.dot(om3.vector(field)), dual=True)
    return form_to_dual(pulled, field)


def _pushforward(om_std, S, field):
    """omega with omega o ∧^3 S = om_std."""
    return _pullback(om_std, inverse(S, field), field)


def tangent_space(U, field=None) -> np.ndarray:
    """7 x 14 matrix whose rows span the affine tangent space at [U]."""
    U = np.asarray(U, dtype=object)
    if field is None:
        field = field_of(U)
    S = complete_to_symplectic(U, field)
    A = sp_action14(S, field)
    return A[:, :7].T.copy()


def annihilates_tangent(om, U, field=None) -> bool:
    if field is None:
        field = field_of(list(om))
    T = tangent_space(U, field)
    return all(pairing14(list(om), list(row)) == 0 for row in T)


def q_omega(om, U, field=None) -> np.ndarray:
    """The conic form of omega on the Lagrangian U, in the basis given by the rows of U.

    After completing U to a symplectic frame S, omega o ∧^3 S has u* = X* = 0
    and its Y*-block is the Gram matrix of q_omega: q(sum c_i u_i) = c^T Y* c.
    """
    om = list(om)
    if field is None:
        field = field_of(om)
    S = complete_to_symplectic(U, field)
    d = _pullback(om, S, field)
    if any(c != 0 for c in d[:7]):
        raise ValueError("omega does not annihilate the tangent space at U")
    return _sym3(d[7:13])


def tangent_cone_quadric(om_std) -> Poly:
    """Q(X) = tr(Y* adj X) for a form with u* = X* = 0, in x11, x12, x13, x22, x23, x33."""
    xs = variables(6)
    X = _sym3(xs)
    Yst = _sym3(list(om_std)[7:13])
    A = adjugate3(X)
    Q = Poly(6)
    for i in range(3):
        for j in range(3):
            Q = Q + A[i, j] * Yst[j, i]
    return Q


def quadric_gram(Q: Poly, field) -> np.ndarray:
    n = Q.nvars
    G = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            m = [0] * n
            m[i] += 1
            m[j] += 1
            c = field(Q.coefficient(tuple(m)))
            G[i, j] = c if i == j else c / 2
    return G


def tangent_cone_rank(om, U=None, field=None) -> int:
    """Rank of the leading quadric of H_omega at the singular point [U] (default U0)."""
    om = list(om)
    if field is None:
        field = field_of(om)
    if U is None:
        U = field.array(np.eye(6, dtype=int)[:3])
    S = complete_to_symplectic(U, field)
    d = _pullback(om, S, field)
    if any(c != 0 for c in d[:7]):
        raise ValueError("[U] is not a singular point of the hyperplane section")
    return rank(quadric_gram(tangent_cone_quadric(d), field), field)


@dataclass
class NodalWitness:
    omega: DualForm
    pivot: SigmaPoint
    frame: np.ndarray           # 3 x 6, rows span the pivot Lagrangian
    conic: np.ndarray           # 3 x 3 Gram matrix of q_omega in the frame basis
    S: np.ndarray = dc_field(repr=False, default=None)   # symplectic completion of the frame
    field: object = dc_field(repr=False, default=QQ)
    standard: list = dc_field(repr=False, default=None)  # omega o ∧^3 S = [0 : 0 : Y* : z*]

    def __post_init__(self):
        if self.standard is None and self.S is not None:
            self.standard = _pullback(list(self.omega), self.S, self.field)


def _random_sym(field, rng):
    M = random_matrix(field, rng, (3, 3))
    return _sym3([M[a, b] for a, b in SYM_PAIRS])


def nodal_dual_form(U=None, seed=None, field=QQ, Ystar=None, zstar=None) -> NodalWitness:
    """A dual form singular exactly at [U], built with a rank-3 conic block.

    ``U`` defaults to a random Lagrangian (the standard one moved by a random
    symplectic matrix).  Degenerate draws (rank q < 3) are redrawn.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if U is None:
        S = random_symplectic(rng, field)
    else:
        S = complete_to_symplectic(U, field)
    while True:
        Yst = field.array(Ystar) if Ystar is not None else _random_sym(field, rng)
        if rank(Yst, field) == 3:
            break
        if Ystar is not None:
            raise ValueError("Y* block must have rank 3")
    z = field(zstar) if zstar is not None else field.random(rng)
    zero = field.array(np.zeros((3, 3), dtype=int))
    om_std = DualForm.from_blocks(field.zero, zero, Yst, z)
    om = DualForm(_pushforward(list(om_std), S, field))
    frame = S[:, :3].T.copy()
    pivot = SigmaPoint(sp_action14(S, field)[:, 0])
    return NodalWitness(om, pivot, frame, q_omega(om, frame, field), S, field, list(om_std))


# ---------------------------------------------------------------------------
# sampling

def random_lagrangian(seed=None, field=QQ) -> np.ndarray:
    S = random_symplectic(seed, field)
    return S[:, :3].T.copy()


def tangent_line_point(seed=None, field=QQ, xrank: int | None = None):
    """A point u + X of the tangent space at a random point of Sigma.

    Returns ``(point, frame)``; ``xrank`` forces the rank of the X-part.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    S = random_symplectic(rng, field)
    while True:
        if xrank is None:
            X = _random_sym(field, rng)
        else:
            v = random_matrix(field, rng, (3, xrank))
            D = np.diag([field.random_nonzero(rng) for _ in range(xrank)]) if xrank else None
            X = v.dot(D).dot(v.T) if xrank else field.array(np.zeros((3, 3), dtype=int))
            if rank(X, field) != xrank:
                continue
        break
    t = field.random_nonzero(rng)
    coords = [t] + [X[a, b] for a, b in SYM_PAIRS] + [field.zero] * 7
    return SigmaPoint(sp_action14(S, field).dot(coords)), S[:, :3].T.copy()


def sample_hyperplane_section(witness: NodalWitness, rng, max_tries: int = 100):
    """A point of Sigma ∩ H_omega away from the pivot, with its Lagrangian frame.

    In the standard frame the condition tr(Y* adj X) + z* det X = 0 is affine
    linear in x33, so we draw the other five entries and solve.
    """
    field = witness.field
    S = witness.S
    d = witness.standard
    Yst, zst = _sym3(d[7:13]), d[13]
    for _ in range(max_tries):
        e = [field.random(rng) for _ in range(5)]
        base = e + [field.zero]
        X0 = _sym3(base)
        X1 = _sym3(e + [field.one])
        g0 = _hyper(X0, Yst, zst)
        g1 = _hyper(X1, Yst, zst)
        slope = g1 - g0
        if slope == 0:
            continue
        x33 = -g0 / slope
        X = _sym3(e + [x33])
        if all(c == 0 for c in X.flat):
            continue
        F = np.concatenate([field.array(np.eye(3, dtype=int)), X], axis=1)
        frame = F.dot(S.T)
        coords = sp_action14(S, field).dot(list(chart_point(X, field)))
        return SigmaPoint(coords), frame
    raise RuntimeError("could not sample the hyperplane section")


def _hyper(X, Yst, zst):
    A = adjugate3(X)
    s = 0
    for i in range(3):
        for j in range(3):
            s = s + Yst[i, j] * A[j, i]
    return s + zst * det3(X)
