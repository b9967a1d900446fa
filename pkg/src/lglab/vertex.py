"""The rank-5 incidence bundle over P(V) and its degeneracy loci.

For a nonzero v in V the fiber is

    E_v = {w in V(14) : v ^ w = 0} = (v ^ ∧^2 V) ∩ V(14),

a 5-dimensional space (the span of the Lagrangian 3-spaces through v).  A
dual form omega gives the section y -> omega|E_y, and k forms give the
k x 5 matrix Phi(y); Y(k) is the locus where Phi drops rank.

Two ways to evaluate rank Phi(y) are provided: directly from a basis of E_y,
and through the identity

    rank Phi(y) = rank[ (i_y w_1) ^ x, ..., (i_y w_k) ^ x, alpha ^ x ] - 1,
    x = L(y),

which only involves polynomial expressions in y and is vectorized over F_p.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import List

import numpy as np

from .exact import QQ, field_of, kernel_basis, rank, row_basis
from .exterior import (
    MultiVector, alpha_form, contract_3vector, dual_to_3form, pairing14,
    sigma_to_trivector, sort_sign, standard_J, subsets, trivector_to_sigma, wedge,
)
from .lgsigma import NodalWitness, nodal_dual_form, quadric_values
from .poly import Poly, variables, vector_from_poly

__all__ = [
    "EFiber", "e_fiber", "section_value", "lagrangian_through", "fiber_coordinates",
    "fiber_quadrics", "LinearSectionSetup", "witnessed_setup", "phi_matrix",
    "phi_rank", "phi_rank_fast", "vertex_scan", "DegeneracyScan", "conic_fiber",
    "line_frame", "line_determinant", "projective_points",
]


def _vec(v, field):
    v = [field(c) for c in v]
    if all(c == 0 for c in v):
        raise ValueError("v must be nonzero")
    return MultiVector(6, 1, {(i,): v[i] for i in range(6)})


def _wedge_matrix(k: int, v: MultiVector, field) -> np.ndarray:
    """Matrix of eta -> v ^ eta from ∧^k V to ∧^{k+1} V."""
    cols = []
    for I in subsets(6, k):
        cols.append(wedge(v, MultiVector(6, k, {I: field.one})).vector(field))
    return np.array(cols, dtype=object).T


@dataclass
class EFiber:
    v: list
    basis: np.ndarray                 # 5 x 14, rows in [u, X, Y, z] coordinates
    field: object = dc_field(repr=False, default=QQ)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def e_fiber(v, field=None) -> EFiber:
    """Basis of E_v = {w in V(14) : v ^ w = 0}."""
    if field is None:
        field = field_of(list(v))
    vv = _vec(v, field)
    # eta in ∧^2 V with contraction(v ^ eta) = 0, then push forward by v ^ .
    W = _wedge_matrix(2, vv, field)                        # 20 x 15
    C = []
    for I in subsets(6, 3):
        C.append(contract_3vector(MultiVector(6, 3, {I: field.one}), field=field).vector(field))
    C = np.array(C, dtype=object).T                        # 6 x 20
    ker = kernel_basis(C.dot(W), field)
    images = [W.dot(k) for k in ker]
    B = row_basis(np.array(images, dtype=object), field)
    rows = [trivector_to_sigma(MultiVector.from_vector(6, 3, b), field) for b in B]
    return EFiber([field(c) for c in v], np.array(rows, dtype=object), field)


def section_value(om, v, fiber: EFiber = None, field=None) -> list:
    """omega restricted to E_v, as values on the fiber basis."""
    om = list(om)
    if field is None:
        field = field_of(om + list(v))
    if fiber is None:
        fiber = e_fiber(v, field)
    return [pairing14(om, list(row)) for row in fiber.basis]


def lagrangian_through(v, rng, field) -> np.ndarray:
    """A random Lagrangian frame whose first row is v."""
    J = standard_J(field)
    v = np.array([field(c) for c in v], dtype=object)
    Vv = kernel_basis(np.array([v.dot(J)], dtype=object), field)      # v^perp, contains v
    while True:
        w1 = sum((field.random(rng) * b for b in Vv), np.array([field.zero] * 6, dtype=object))
        cond = np.array([v.dot(J), w1.dot(J)], dtype=object)
        perp = kernel_basis(cond, field)
        w2 = sum((field.random(rng) * b for b in perp), np.array([field.zero] * 6, dtype=object))
        U = np.array([v, w1, w2], dtype=object)
        if rank(U, field) == 3:
            return U


def fiber_coordinates(fiber: EFiber, point) -> list:
    """Coefficients of a point of E_v in the fiber basis."""
    F = fiber.field
    A = np.concatenate([fiber.basis.T, np.array([list(point)], dtype=object).T], axis=1)
    ker = kernel_basis(A, F)
    if len(ker) != 1 or ker[0][-1] == 0:
        raise ValueError("point does not lie in the fiber")
    k = ker[0]
    return [-c / k[-1] for c in k[:-1]]


def fiber_quadrics(fiber: EFiber) -> list:
    """Restrictions of the 21 quadrics of Sigma to P(E_v), as coefficient vectors.

    Returns a basis of their span (over the 15 monomials in 5 fiber coordinates).
    """
    F = fiber.field
    t = variables(5, F.one)
    point = [sum((t[i] * fiber.basis[i, j] for i in range(5)), Poly(5)) for j in range(14)]
    vecs = [vector_from_poly(q, 2, F.zero) for q in quadric_values(point)]
    vecs = [[F(c) for c in v] for v in vecs]
    return list(row_basis(np.array(vecs, dtype=object), F))


# ---------------------------------------------------------------------------
# linear sections and degeneracy loci

@dataclass
class LinearSectionSetup:
    forms: list                                  # k dual forms (14 coordinates each)
    witnesses: list = dc_field(default_factory=list)
    field: object = QQ

    def __post_init__(self):
        if not 1 <= len(self.forms) <= 5:
            raise ValueError("need between 1 and 5 forms")
        if rank(np.array([list(f) for f in self.forms], dtype=object), self.field) != len(self.forms):
            raise ValueError("forms are linearly dependent")

    @property
    def k(self) -> int:
        return len(self.forms)


def witnessed_setup(k: int, seed=None, field=QQ) -> LinearSectionSetup:
    """k nodal witnesses at random pivots; their forms span the linear system."""
    if not 2 <= k <= 5:
        raise ValueError("k must be between 2 and 5")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    while True:
        ws = [nodal_dual_form(seed=rng, field=field) for _ in range(k)]
        try:
            return LinearSectionSetup([list(w.omega) for w in ws], ws, field)
        except ValueError:
            continue


def phi_matrix(setup: LinearSectionSetup, y) -> np.ndarray:
    fib = e_fiber(y, setup.field)
    return np.array([section_value(om, y, fib, setup.field) for om in setup.forms], dtype=object)


def phi_rank(setup: LinearSectionSetup, y) -> int:
    return rank(phi_matrix(setup, y), setup.field)


def _contraction_tensor(om, field):
    """T[i, pair] with (i_{e_i} omega) = sum_pair T[i, pair] x_pair."""
    om3 = dual_to_3form(list(om))
    T = np.array([[field.zero] * 15 for _ in range(6)], dtype=object)
    pidx = {p: n for n, p in enumerate(subsets(6, 2))}
    for I, c in om3.coeffs.items():
        for pos, i in enumerate(I):
            rest = I[:pos] + I[pos + 1:]
            sign = -1 if pos % 2 else 1
            T[i, pidx[rest]] = T[i, pidx[rest]] + sign * field(c)
    return T


def _wedge1_tensor():
    """W[pair, j, triple] : x_pair ^ x_j = sum W x_triple."""
    tidx = {t: n for n, t in enumerate(subsets(6, 3))}
    W = np.zeros((15, 6, 20), dtype=np.int64)
    for a, p in enumerate(subsets(6, 2)):
        for j in range(6):
            s, key = sort_sign(p + (j,))
            if s:
                W[a, j, tidx[key]] = s
    return W


def _batched_rank_modp(M: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a batch of matrices (batch, rows, cols) over F_p (int64, so p < 2^31)."""
    if p >= 2 ** 31:
        raise ValueError("batched ranks need p < 2^31")
    M = M.copy() % p
    B, R, C = M.shape
    ranks = np.zeros(B, dtype=np.int64)
    ar = np.arange(B)
    for c in range(C):
        col = M[:, :, c]
        rowmask = np.arange(R)[None, :] >= ranks[:, None]
        cand = (col != 0) & rowmask
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        idx = ar[has]
        pr = piv[has]
        tr = ranks[has]
        # swap pivot row into position ranks
        rows_p = M[idx, pr].copy()
        rows_t = M[idx, tr].copy()
        M[idx, tr] = rows_p
        M[idx, pr] = rows_t
        pv = M[idx, tr, c]
        inv = np.array([pow(int(a), -1, p) for a in pv], dtype=np.int64)
        M[idx, tr] = (M[idx, tr] * inv[:, None]) % p
        prow = M[idx, tr]                      # (b, C)
        factors = M[idx, :, c].copy()          # (b, R)
        factors[np.arange(len(idx)), tr] = 0
        M[idx] = (M[idx] - (factors[:, :, None] * prow[:, None, :]) % p) % p
        ranks[idx] += 1
    return ranks


def phi_rank_fast(setup: LinearSectionSetup, points) -> np.ndarray:
    """rank Phi at many points of P^5(F_p) at once, via the wedge identity."""
    F = setup.field
    if not F.characteristic:
        return np.array([phi_rank(setup, y) for y in points])
    p = F.p
    Y = np.array([[int(F(c)) for c in y] for y in points], dtype=np.int64)
    W = _wedge1_tensor()
    # x = L(y): L e_i = sum_j J_ij x_j, so x_j = sum_i y_i J_ij: (y1..y6) -> (-y4,-y5,-y6, y1, y2, y3)
    X = np.concatenate([-Y[:, 3:], Y[:, :3]], axis=1) % p
    cols = []
    for om in setup.forms:
        T = np.array([[int(c) for c in row] for row in _contraction_tensor(om, F)], dtype=np.int64)
        beta = Y.dot(T) % p                                    # (N, 15) = i_y omega
        cols.append(np.einsum("na,ajt,nj->nt", beta, W, X) % p)
    a = np.array([int(c) for c in alpha_form(field=F).vector(F)], dtype=np.int64)
    cols.append(np.einsum("a,ajt,nj->nt", a, W, X) % p)
    M = np.stack(cols, axis=2)                                 # (N, 20, k+1)
    return _batched_rank_modp(M, p) - 1


@dataclass
class DegeneracyScan:
    k: int
    p: int
    mode: str
    points: np.ndarray            # (N, 6) integer coordinates
    ranks: np.ndarray             # (N,)
    region: str = "P5"

    def locus(self, max_rank=None) -> np.ndarray:
        r = self.k - 1 if max_rank is None else max_rank
        return self.points[self.ranks <= r]

    def counts(self) -> dict:
        vals, cnt = np.unique(self.ranks, return_counts=True)
        return {int(a): int(b) for a, b in zip(vals, cnt)}

    def to_csv(self) -> str:
        lines = ["y1,y2,y3,y4,y5,y6,rank,stratum"]
        for pt, r in zip(self.points, self.ranks):
            lab = "Y" if r <= self.k - 1 else "regular"
            lines.append(",".join(str(int(c)) for c in pt) + f",{int(r)},{lab}")
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        return {"k": self.k, "p": self.p, "mode": self.mode, "region": self.region,
                "points": int(len(self.points)), "rank_counts": self.counts(),
                "locus_size": int((self.ranks <= self.k - 1).sum())}


def projective_points(p: int, dim: int) -> np.ndarray:
    """Normalized representatives of P^dim(F_p) (first nonzero coordinate 1)."""
    blocks = []
    for lead in range(dim + 1):
        tail = dim - lead
        grids = np.meshgrid(*[np.arange(p, dtype=np.int64)] * tail, indexing="ij") if tail else []
        n = p ** tail
        cols = [np.zeros(n, dtype=np.int64)] * lead + [np.ones(n, dtype=np.int64)]
        cols += [g.ravel() for g in grids]
        blocks.append(np.stack(cols, axis=1))
    return np.concatenate(blocks)


def vertex_scan(setup: LinearSectionSetup, plane=None, mode: str = "exhaustive",
                n_samples: int = 20000, seed=None, chunk: int = 50000) -> DegeneracyScan:
    """Ranks of Phi over P^5(F_p), or over the projective plane spanned by the rows of ``plane``."""
    F = setup.field
    if not F.characteristic:
        raise ValueError("scans need a prime field")
    p = F.p
    if plane is not None:
        B = np.array([[int(F(c)) for c in row] for row in plane], dtype=np.int64)
        coeffs = projective_points(p, B.shape[0] - 1)
        pts = coeffs.dot(B) % p
        region = "plane"
    elif mode == "exhaustive":
        if p > 31:
            raise ValueError("exhaustive scans of P^5 need p <= 31")
        pts = projective_points(p, 5)
        region = "P5"
    else:
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        pts = rng.integers(0, p, size=(n_samples, 6))
        pts = pts[pts.any(axis=1)]
        region = "P5"
    ranks = np.concatenate([phi_rank_fast(setup, pts[i:i + chunk]) for i in range(0, len(pts), chunk)])
    return DegeneracyScan(setup.k, p, "exhaustive" if plane is not None or mode == "exhaustive" else "sampled",
                          pts if plane is None else coeffs, ranks, region)


def conic_fiber(witness: NodalWitness, setup: LinearSectionSetup) -> np.ndarray:
    """q_omega on the pivot plane of a witness whose form lies in the setup span."""
    F = setup.field
    om = list(witness.omega)
    if all(c == 0 for c in om):
        raise ValueError("zero form")
    A = np.array([list(f) for f in setup.forms], dtype=object)
    if rank(np.concatenate([A, [om]]), F) != rank(A, F):
        raise ValueError("form does not belong to the linear system")
    return witness.conic


# ---------------------------------------------------------------------------
# restriction to lines

def line_frame(v0, v1, field) -> list:
    """Pairs (a_j, b_j) with a_j + t b_j in E_{v0 + t v1} for all t."""
    F = field
    w0, w1 = _wedge_matrix(3, _vec(v0, F), F), _wedge_matrix(3, _vec(v1, F), F)   # 15 x 20
    # parametrize V(14) by its 14 coordinates
    basis = []
    for j in range(14):
        unit = [F.zero] * 14
        unit[j] = F.one
        basis.append(sigma_to_trivector(unit).vector(F))
    E = np.array(basis, dtype=object).T          # 20 x 14
    A, B = w0.dot(E), w1.dot(E)                  # 15 x 14
    Z = np.array([[F.zero] * 14 for _ in range(15)], dtype=object)
    top = np.concatenate([A, Z], axis=1)         # v0 ^ a = 0
    mid = np.concatenate([B, A], axis=1)         # v1 ^ a + v0 ^ b = 0
    bot = np.concatenate([Z, B], axis=1)         # v1 ^ b = 0
    ker = kernel_basis(np.concatenate([top, mid, bot]), F)
    return [(k[:14], k[14:]) for k in ker]


def line_determinant(setup: LinearSectionSetup, v0, v1) -> Poly:
    """det(omega_i(a_j + t b_j)) as a univariate polynomial in t."""
    F = setup.field
    frame = line_frame(v0, v1, F)
    if len(frame) != 5:
        raise ValueError(f"line frame has dimension {len(frame)}, expected 5")
    t = variables(1, F.one)[0]
    M = [[pairing14(om, list(a)) + t * pairing14(om, list(b)) for a, b in frame] for om in setup.forms]
    return _det_poly(M)


def _det_poly(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det_poly(minor)
        total = total + term if j % 2 == 0 else total - term
    return total
