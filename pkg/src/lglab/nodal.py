"""Projection of a nodal hyperplane section of LG(3,6) from its node.

Everything here is done in the *standard frame* of a witness: the pivot is
moved to u0 = <e1, e2, e3> by the symplectic completion of its frame, so
omega becomes [0 : 0 : Y* : z*] and projecting from the node just drops the
coordinate u.

Pipeline for one witness:

1. pick v in u0 on the conic {q_omega = 0} and put x = L(v);
2. ``section_space``: solve  beta ^ x = alpha ^ y + c omega  for beta in
   U^perp ⊗ U1^perp ⊕ ∧^2 U^perp, giving a 6-dimensional space modulo alpha;
3. ``gr_point``: at a sampled Lagrangian U' on H_omega, evaluate the six
   sections on ∧^2 U'; the 2-dimensional image is a point of G(2,6);
4. ``fit_projection``: find a 15 x 12 matrix M with M pi_u(U') ∥ gr_point(U').
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import List, Optional

import numpy as np
from sympy.ntheory import sqrt_mod

from .exact import QQ, field_of, kernel_basis, left_kernel, rank, row_basis, solve_homogeneous
from .exterior import MultiVector, alpha_form, correlation, dual_to_3form, wedge
from .gr26 import PAIRS, PfaffianPlane, is_decomposable, plucker_vector, quadric_in_z
from .lgsigma import (
    NodalWitness, _pullback, _sym3, _hyper, adjugate3, chart_point, det3,
)
from .poly import monomial_matrix

# beta ranges over x_i ^ x_j (i in 1..3, j in 4..6) and x_j ^ x_k (4 <= j < k <= 6)
BETA_BASIS = tuple([(i, j) for i in range(3) for j in range(3, 6)]
                   + [(j, k) for j, k in itertools.combinations(range(3, 6), 2)])


def standard_form(witness: NodalWitness) -> list:
    """omega o ∧^3 S, i.e. omega in the frame where the pivot is u0."""
    if witness.standard is None:
        witness.standard = _pullback(list(witness.omega), witness.S, witness.field)
    return witness.standard


def conic_point(Q, field, rng, max_tries: int = 200, bound: int = 6):
    """A nonzero c with c^T Q c = 0.

    Over F_p: intersect the conic with random lines and take square roots.
    Over Q: search small integer vectors (bounded, may fail).
    """
    Q = field.array(Q)

    def qf(c):
        return np.asarray(c, dtype=object).dot(Q).dot(np.asarray(c, dtype=object))

    if field.characteristic:
        p = field.p
        for _ in range(max_tries):
            a = [field.random(rng) for _ in range(3)]
            b = [field.random(rng) for _ in range(3)]
            if rank(np.array([a, b], dtype=object), field) < 2:
                continue
            A, B = np.array(a, dtype=object), np.array(b, dtype=object)
            qa, qb, bab = qf(A), qf(B), A.dot(Q).dot(B)
            if qa == 0:
                return list(A)
            if qb == 0:
                continue
            disc = bab * bab - qa * qb
            roots = sqrt_mod(disc.v, p, all_roots=True) if disc != 0 else [0]
            if not roots:
                continue
            t = (-bab + roots[0]) / qb
            return list(A + t * B)
        raise RuntimeError("no conic point found")
    for c in itertools.product(range(-bound, bound + 1), repeat=3):
        if any(c) and qf([field(v) for v in c]) == 0:
            return [field(v) for v in c]
    raise ValueError("conic has no small rational point; choose another witness")


def off_conic_point(Q, field, rng):
    Q = field.array(Q)
    while True:
        c = [field.random(rng) for _ in range(3)]
        C = np.asarray(c, dtype=object)
        if C.dot(Q).dot(C) != 0:
            return c


@dataclass
class SectionSpace:
    witness: NodalWitness
    v: list                    # coefficients of v in the standard basis e1, e2, e3
    x: MultiVector             # the 1-form L(v)
    basis: np.ndarray          # 6 x 12 rows: beta_k in BETA_BASIS coordinates (mod alpha)
    full_dim: int              # dimension before quotienting by alpha
    skews: list = dc_field(repr=False, default=None)   # 6x6 skew matrices of the beta_k

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def _beta_form(coeffs, field) -> MultiVector:
    return MultiVector(6, 2, {pair: c for pair, c in zip(BETA_BASIS, coeffs) if c != 0}, dual=True)


def section_space(witness: NodalWitness, v=None, seed=None, on_conic: bool = True) -> SectionSpace:
    """Solutions beta of  beta ^ x - alpha ^ y - c omega = 0, modulo alpha."""
    F = witness.field
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    Q = witness_conic_std(witness)
    if v is None:
        v = conic_point(Q, F, rng) if on_conic else off_conic_point(Q, F, rng)
    v = [F(c) for c in v]
    if all(c == 0 for c in v):
        raise ValueError("v must be nonzero")
    vec = MultiVector(6, 1, {(i,): v[i] for i in range(3)})
    x = correlation(vec, field=F)
    om3 = dual_to_3form(standard_form(witness))
    alpha = alpha_form(field=F)
    cols = []
    for pair in BETA_BASIS:
        b = MultiVector(6, 2, {pair: F.one}, dual=True)
        cols.append(wedge(b, x).vector(F))
    for i in range(6):
        xi = MultiVector(6, 1, {(i,): F.one}, dual=True)
        cols.append(-wedge(alpha, xi).vector(F))
    cols.append(-om3.vector(F))
    A = np.array(cols, dtype=object).T          # 20 x 19
    ker = kernel_basis(A, F)
    betas = np.array([k[:12] for k in ker], dtype=object) if ker else np.empty((0, 12), dtype=object)
    full_dim = rank(betas, F) if len(ker) else 0
    # quotient by alpha = x14 + x25 + x36: kill the x14 coordinate
    a_vec = np.array([F.one if pair in ((0, 3), (1, 4), (2, 5)) else F.zero for pair in BETA_BASIS],
                     dtype=object)
    j = BETA_BASIS.index((0, 3))
    reduced = [b - b[j] * a_vec for b in betas]
    basis = row_basis(np.array(reduced, dtype=object), F) if reduced else np.empty((0, 12), dtype=object)
    skews = [_beta_form(b, F).skew_matrix(F) for b in basis]
    return SectionSpace(witness, v, x, basis, full_dim, skews)


def witness_conic_std(witness: NodalWitness):
    """Gram matrix of q_omega on u0 in the standard frame (the Y*-block)."""
    return _sym3(standard_form(witness)[7:13])


# ---------------------------------------------------------------------------
# sampling H_omega in the standard frame

@dataclass
class HSample:
    X: np.ndarray              # symmetric 3x3, U' = rowspace [I | X]
    point: list                # 14 coordinates in the standard frame
    frame: np.ndarray          # 3 x 6 = [I | X]


def sample_hyperplane_std(witness: NodalWitness, rng, max_tries: int = 100) -> HSample:
    """A point of Sigma ∩ H_omega in the standard chart, solving for x33 linearly."""
    F = witness.field
    d = standard_form(witness)
    Yst, zst = _sym3(d[7:13]), d[13]
    for _ in range(max_tries):
        e = [F.random(rng) for _ in range(5)]
        g0 = _hyper(_sym3(e + [F.zero]), Yst, zst)
        g1 = _hyper(_sym3(e + [F.one]), Yst, zst)
        if g1 == g0:
            continue
        X = _sym3(e + [-g0 / (g1 - g0)])
        if all(c == 0 for c in X.flat):
            continue
        frame = np.concatenate([F.array(np.eye(3, dtype=int)), X], axis=1)
        return HSample(X, list(chart_point(X, F)), frame)
    raise RuntimeError("could not sample the hyperplane section")


def projection_coordinates(witness: NodalWitness) -> tuple:
    """Indices (into the 14 coordinates) used as coordinates on P^11.

    Drop u (the node) and one coordinate with a nonzero coefficient in the
    hyperplane equation (z if z* != 0, else the first nonzero y*).
    """
    d = standard_form(witness)
    drop = 13 if d[13] != 0 else next(i for i in range(7, 13) if d[i] != 0)
    return tuple(i for i in range(1, 14) if i != drop)


def pi_u(witness: NodalWitness, point, coords=None) -> list:
    if coords is None:
        coords = projection_coordinates(witness)
    return [point[i] for i in coords]


def evaluation_matrix(frame, space: SectionSpace) -> np.ndarray:
    """3 x 6 matrix: rows are the pairs (0,1), (0,2), (1,2) of the frame, columns the sections."""
    F = space.witness.field
    frame = np.asarray(frame, dtype=object)
    ev = np.empty((3, space.dim), dtype=object)
    for k, M in enumerate(space.skews):
        G = frame.dot(M).dot(frame.T)
        ev[0, k], ev[1, k], ev[2, k] = G[0, 1], G[0, 2], G[1, 2]
    return ev


def gr_point(frame, space: SectionSpace):
    """Plücker vector of the image of evaluation on ∧^2 U', or None off the good locus."""
    F = space.witness.field
    ev = evaluation_matrix(frame, space)
    if rank(ev, F) != 2:
        return None
    R = row_basis(ev, F)
    return plucker_vector(R, F)


def proportional(a, b) -> bool:
    """a ∥ b (both nonzero) via vanishing 2x2 minors."""
    a, b = list(a), list(b)
    if all(c == 0 for c in a) or all(c == 0 for c in b):
        return False
    i0 = next(i for i, c in enumerate(b) if c != 0)
    return all(a[j] * b[i0] - a[i0] * b[j] == 0 for j in range(len(a)))


# ---------------------------------------------------------------------------
# the fit

@dataclass
class ProjectionFit:
    witness: NodalWitness
    space: SectionSpace
    coords: tuple
    M: Optional[np.ndarray]
    solution_dim: int
    accepted: int
    discarded: int
    test_pass: int
    test_total: int
    test_on_grassmannian: int
    pairs: list = dc_field(repr=False, default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.solution_dim == 1 and self.test_pass == self.test_total
                and self.test_on_grassmannian == self.test_total)

    def plane(self) -> PfaffianPlane:
        """The 3-space of 2-forms orthogonal to the image of M."""
        ker = left_kernel(self.M, self.witness.field)
        return PfaffianPlane([_two_form(k) for k in ker], self.witness.field)

    def report(self, W=None) -> dict:
        F = self.witness.field
        out = {
            "field": F.p if F.characteristic else "Q",
            "v": [F.serialize(c) for c in self.space.v],
            "section_dim": self.space.dim,
            "accepted": self.accepted,
            "discarded": self.discarded,
            "solution_dim": self.solution_dim,
            "test_pass": self.test_pass,
            "test_total": self.test_total,
        }
        if self.M is not None and self.solution_dim == 1:
            out["plane"] = self.plane().serialize()
        if W is not None:
            out["W"] = [[F.serialize(c) for c in row] for row in W]
        return out


def _two_form(vec15):
    return MultiVector(6, 2, dict(zip(PAIRS, vec15)), dual=True).skew_matrix(field_of(list(vec15)))


def collect_pairs(witness: NodalWitness, space: SectionSpace, n: int, rng, max_draws=None):
    """n accepted (a, b) pairs plus the number of discarded samples."""
    coords = projection_coordinates(witness)
    pairs, discarded = [], 0
    max_draws = max_draws or 10 * n + 100
    draws = 0
    while len(pairs) < n:
        draws += 1
        if draws > max_draws:
            raise RuntimeError("too many discarded samples")
        s = sample_hyperplane_std(witness, rng)
        b = gr_point(s.frame, space)
        if b is None:
            discarded += 1
            continue
        pairs.append((pi_u(witness, s.point, coords), b, s))
    return pairs, discarded


def proportionality_rows(a, b, F):
    """Linear equations on M (15 x 12, row-major) expressing M a ∥ b."""
    n_out, n_in = len(b), len(a)
    i0 = next(i for i, c in enumerate(b) if c != 0)
    rows = []
    for j in range(n_out):
        if j == i0:
            continue
        r = [F.zero] * (n_out * n_in)
        for k in range(n_in):
            r[j * n_in + k] = r[j * n_in + k] + b[i0] * a[k]
            r[i0 * n_in + k] = r[i0 * n_in + k] - b[j] * a[k]
        rows.append(r)
    return rows


def fit_linear_map(pairs, n_in: int, n_out: int, F) -> list:
    """All matrices M (as n_out x n_in arrays) with M a ∥ b on the given pairs."""
    rows = []
    for a, b in pairs:
        rows.extend(proportionality_rows(a, b, F))
    ker = solve_homogeneous(rows, n_in * n_out, F)
    return [np.array(k, dtype=object).reshape(n_out, n_in) for k in ker]


def fit_projection(witness: NodalWitness, space: SectionSpace = None, n_fit: int = 200,
                   n_test: int = 50, seed=None) -> ProjectionFit:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    F = witness.field
    if space is None:
        space = section_space(witness, seed=rng)
    if space.dim != 6:
        raise ValueError(f"section space has dimension {space.dim}, expected 6")
    if n_fit < 150:
        raise ValueError("need at least 150 fit samples")
    coords = projection_coordinates(witness)
    pairs, discarded = collect_pairs(witness, space, n_fit + n_test, rng)
    fit, test = pairs[:n_fit], pairs[n_fit:]
    sols = fit_linear_map([(a, b) for a, b, _ in fit], 12, 15, F)
    M = sols[0] if len(sols) == 1 else None
    passed = on_gr = 0
    if M is not None:
        for a, b, _ in test:
            image = list(M.dot(np.array(a, dtype=object)))
            if proportional(image, b):
                passed += 1
            if any(c != 0 for c in image) and is_decomposable(image):
                on_gr += 1
    return ProjectionFit(witness, space, coords, M, len(sols), len(pairs), discarded,
                         passed, len(test), on_gr, pairs)


def fit_quadrics(points, field=None) -> list:
    """Basis of the quadrics vanishing on the points (coefficient vectors over monomials)."""
    points = [list(p) for p in points]
    if field is None:
        field = field_of(points)
    A = monomial_matrix(points, 2)
    return kernel_basis(A, field)


def frame_change_map(space1: SectionSpace, space2: SectionSpace, samples, F) -> list:
    """All g in gl(6) with g R1(U') ⊆ R2(U') for the sampled U'.

    R_i(U') is the 2-dimensional row space of the evaluation matrix.  A
    one-dimensional answer means the two maps to G(2,6) differ by a fixed
    change of basis of the section space.
    """
    rows = []
    for frame in samples:
        e1 = evaluation_matrix(frame, space1)
        e2 = evaluation_matrix(frame, space2)
        if rank(e1, F) != 2 or rank(e2, F) != 2:
            continue
        R1 = row_basis(e1, F)
        N2 = kernel_basis(row_basis(e2, F), F)     # annihilator of R2 (4 vectors)
        # (g r)·n = sum_ij g_ij r_j n_i
        for r in R1:
            for nvec in N2:
                rows.append([nvec[i] * r[j] for i in range(6) for j in range(6)])
    ker = solve_homogeneous(rows, 36, F)
    return [np.array(k, dtype=object).reshape(6, 6) for k in ker]
