"""Exterior algebra of F^n, the standard symplectic form and the 14 coordinates of V(14).

Conventions (0-based internally, 1-based in names and serialization):

* ``e_i`` is the standard basis of V = F^6, ``x_i`` the dual basis;
* the symplectic form is ``alpha = x1^x4 + x2^x5 + x3^x6`` with Gram matrix
  ``J = [[0, I], [-I, 0]]``, i.e. ``alpha(a, b) = a^T J b``;
* the correlation ``L(v) = alpha(v, .)`` sends ``e1 -> x4`` and ``e4 -> -x1``
  and is extended to k-vectors factorwise;
* coordinates of a k-vector are listed over sorted k-subsets in
  lexicographic order.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np

from .exact import QQ, det, field_of, inverse, random_invertible, random_matrix

__all__ = [
    "MultiVector", "e", "x", "subsets", "sort_sign", "wedge", "compound",
    "standard_J", "alpha_form", "alpha_bivector", "is_symplectic",
    "contract_3vector", "correlation", "correlation_inverse",
    "act_vector", "act_form", "random_symplectic", "symplectic_generator",
    "v14_decompose", "in_v14",
    "COORD_NAMES", "SYM_PAIRS", "T_TRIPLE", "S_TRIPLE",
    "sigma_to_trivector", "trivector_to_sigma", "dual_to_3form", "form_to_dual",
    "pairing14", "sp_action14",
]


@lru_cache(maxsize=None)
def subsets(n: int, k: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(itertools.combinations(range(n), k))


@lru_cache(maxsize=None)
def _subset_index(n: int, k: int) -> Dict[Tuple[int, ...], int]:
    return {s: i for i, s in enumerate(subsets(n, k))}


def sort_sign(idx: Sequence[int]):
    """Return (sign, sorted tuple) of an index sequence; sign 0 on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    inv = sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])
    return (-1 if inv % 2 else 1), tuple(sorted(idx))


class MultiVector:
    """An element of ∧^k F^n (``dual=False``) or of ∧^k (F^n)* (``dual=True``).

    ``coeffs`` maps index tuples (0-based, any order) to scalars; they are
    normalized to sorted tuples with the reordering sign on construction.
    """

    __slots__ = ("n", "k", "coeffs", "dual")

    def __init__(self, n: int, k: int, coeffs=None, dual: bool = False):
        if k < 0 or k > n:
            raise ValueError(f"degree {k} out of range for dimension {n}")
        self.n, self.k, self.dual = n, k, dual
        self.coeffs: Dict[Tuple[int, ...], object] = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != k or any(not 0 <= i < n for i in idx):
                raise ValueError(f"bad index tuple {idx}")
            s, key = sort_sign(idx)
            if s == 0 or c == 0:
                continue
            new = self.coeffs.get(key, 0) + s * c
            if new == 0:
                self.coeffs.pop(key, None)
            else:
                self.coeffs[key] = new

    # -- construction ----------------------------------------------------
    @classmethod
    def from_vector(cls, n: int, k: int, vec, dual: bool = False) -> "MultiVector":
        return cls(n, k, dict(zip(subsets(n, k), vec)), dual)

    @classmethod
    def from_skew(cls, A, dual: bool = False) -> "MultiVector":
        A = np.asarray(A, dtype=object)
        n = A.shape[0]
        return cls(n, 2, {(i, j): A[i, j] for i, j in subsets(n, 2)}, dual)

    def vector(self, field=None) -> np.ndarray:
        """Coordinates over sorted subsets, lexicographic order."""
        if field is None:
            field = field_of(list(self.coeffs.values()))
        out = np.array([field.zero] * len(subsets(self.n, self.k)), dtype=object)
        idx = _subset_index(self.n, self.k)
        for key, c in self.coeffs.items():
            out[idx[key]] = field(c)
        return out

    def skew_matrix(self, field=None) -> np.ndarray:
        if self.k != 2:
            raise ValueError("skew matrix only for degree 2")
        if field is None:
            field = field_of(list(self.coeffs.values()))
        A = np.array([[field.zero] * self.n for _ in range(self.n)], dtype=object)
        for (i, j), c in self.coeffs.items():
            A[i, j] = field(c)
            A[j, i] = -field(c)
        return A

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, MultiVector):
            raise TypeError("expected a MultiVector")
        if (other.n, other.k, other.dual) != (self.n, self.k, self.dual):
            raise ValueError("incompatible multivectors")

    def __add__(self, other):
        self._check(other)
        c = dict(self.coeffs)
        for key, v in other.coeffs.items():
            c[key] = c.get(key, 0) + v
        return MultiVector(self.n, self.k, c, self.dual)

    def __neg__(self):
        return MultiVector(self.n, self.k, {a: -b for a, b in self.coeffs.items()}, self.dual)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        if isinstance(s, MultiVector):
            return NotImplemented
        return MultiVector(self.n, self.k, {a: b * s for a, b in self.coeffs.items()}, self.dual)

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, MultiVector):
            return NotImplemented
        if (other.n, other.k, other.dual) != (self.n, self.k, self.dual):
            return False
        return (self - other).is_zero()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs.values())

    def items(self):
        return sorted(self.coeffs.items())

    def serialize(self, field=None):
        """List of (1-based index tuple, scalar) pairs in lexicographic order."""
        out = []
        for key, c in self.items():
            if field is not None:
                c = field.serialize(c)
            out.append((tuple(i + 1 for i in key), c))
        return out

    def __repr__(self):
        sym = "x" if self.dual else "e"
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{sym}{''.join(str(i + 1) for i in key)}" for key, c in self.items())


def e(*idx, n: int = 6, coeff=1) -> MultiVector:
    """Basis k-vector e_{i1...ik} (1-based indices)."""
    return MultiVector(n, len(idx), {tuple(i - 1 for i in idx): coeff})


def x(*idx, n: int = 6, coeff=1) -> MultiVector:
    """Basis k-form x_{i1...ik} (1-based indices)."""
    return MultiVector(n, len(idx), {tuple(i - 1 for i in idx): coeff}, dual=True)


def wedge(a: MultiVector, b: MultiVector) -> MultiVector:
    if a.n != b.n or a.dual != b.dual:
        raise ValueError("wedge of incompatible multivectors")
    if a.k + b.k > a.n:
        raise ValueError("degree overflow")
    out: Dict[Tuple[int, ...], object] = {}
    for ia, ca in a.coeffs.items():
        sa = set(ia)
        for ib, cb in b.coeffs.items():
            if sa.intersection(ib):
                continue
            s, key = sort_sign(ia + ib)
            out[key] = out.get(key, 0) + s * ca * cb
    return MultiVector(a.n, a.k + b.k, out, a.dual)


def compound(M, k: int, field=None) -> np.ndarray:
    """k-th compound matrix: entry (I, J) is det M[I, J] over sorted k-subsets."""
    M = np.asarray(M, dtype=object)
    if field is None:
        field = field_of(M)
    rows = subsets(M.shape[0], k)
    cols = subsets(M.shape[1], k)
    if k == 0:
        return np.array([[field.one]], dtype=object)
    C = np.empty((len(rows), len(cols)), dtype=object)
    for a, I in enumerate(rows):
        sub = M[list(I)]
        for b, Jc in enumerate(cols):
            C[a, b] = det(sub[:, list(Jc)], field) if k > 1 else field(sub[0, Jc[0]])
    return C


# ---------------------------------------------------------------------------
# the symplectic form

def standard_J(field=QQ, n: int = 3) -> np.ndarray:
    Z = np.zeros((n, n), dtype=int)
    I = np.eye(n, dtype=int)
    return field.array(np.block([[Z, I], [-I, Z]]))


def alpha_form(J=None, field=QQ) -> MultiVector:
    """The 2-form with Gram matrix J (default: the standard one)."""
    if J is None:
        J = standard_J(field)
    return MultiVector.from_skew(J, dual=True)


def alpha_bivector(J=None, field=QQ) -> MultiVector:
    """The bivector L^{-1}(alpha); equals e14 + e25 + e36 for the standard J."""
    return correlation_inverse(alpha_form(J, field), J, field)


def is_symplectic(S, J=None) -> bool:
    S = np.asarray(S, dtype=object)
    field = field_of(S)
    if J is None:
        J = standard_J(field, S.shape[0] // 2)
    lhs = S.T.dot(J).dot(S)
    return all(a == b for a, b in zip(lhs.flat, np.asarray(J).flat))


def contract_3vector(w: MultiVector, J=None, field=None) -> MultiVector:
    """alpha(w) for a 3-vector: alpha(u^v^w) = a(u,v)w + a(v,w)u + a(w,u)v."""
    if w.k != 3 or w.dual:
        raise ValueError("expected a 3-vector")
    if field is None:
        field = field_of(list(w.coeffs.values()))
    if J is None:
        J = standard_J(field, w.n // 2)
    out = {}
    for (i, j, k), c in w.coeffs.items():
        for a, b, r in ((i, j, k), (j, k, i), (k, i, j)):
            g = J[a, b]
            if g != 0:
                out[(r,)] = out.get((r,), 0) + c * g
    return MultiVector(w.n, 1, out)


def _correlation_matrix(J, field):
    # L(e_i) = sum_j J_ij x_j, so in coordinates L is J^T
    return np.asarray(J, dtype=object).T


def correlation(w: MultiVector, J=None, field=None) -> MultiVector:
    """L_alpha extended factorwise: k-vectors -> k-forms."""
    if w.dual:
        raise ValueError("correlation expects a k-vector")
    if field is None:
        field = field_of(list(w.coeffs.values()) + ([] if J is None else list(np.asarray(J).flat)))
    if J is None:
        J = standard_J(field, w.n // 2)
    C = compound(field.array(_correlation_matrix(J, field)), w.k, field)
    return MultiVector.from_vector(w.n, w.k, C.dot(w.vector(field)), dual=True)


def correlation_inverse(w: MultiVector, J=None, field=None) -> MultiVector:
    if not w.dual:
        raise ValueError("inverse correlation expects a k-form")
    if field is None:
        field = field_of(list(w.coeffs.values()) + ([] if J is None else list(np.asarray(J).flat)))
    if J is None:
        J = standard_J(field, w.n // 2)
    Linv = inverse(field.array(_correlation_matrix(J, field)), field)
    C = compound(Linv, w.k, field)
    return MultiVector.from_vector(w.n, w.k, C.dot(w.vector(field)), dual=False)


def act_vector(g, w: MultiVector, field=None) -> MultiVector:
    """(∧^k g) w."""
    if field is None:
        field = field_of(g)
    return MultiVector.from_vector(w.n, w.k, compound(g, w.k, field).dot(w.vector(field)), w.dual)


def act_form(g, w: MultiVector, field=None) -> MultiVector:
    """w o (∧^k g)^{-1}, the contragredient action on forms."""
    if field is None:
        field = field_of(g)
    ginvT = inverse(np.asarray(g, dtype=object), field).T
    return MultiVector.from_vector(w.n, w.k, compound(ginvT, w.k, field).dot(w.vector(field)), w.dual)


def symplectic_generator(kind: str, field, rng=None, A=None, B=None, n: int = 3) -> np.ndarray:
    """One of the three standard generators of Sp(2n).

    ``"levi"``: [[A, 0], [0, A^-T]];  ``"unipotent"``: [[I, B], [0, I]] with B
    symmetric;  ``"J"``: the Gram matrix itself.
    """
    I = field.array(np.eye(n, dtype=int))
    Z = field.array(np.zeros((n, n), dtype=int))
    if kind == "levi":
        if A is None:
            A = random_invertible(field, rng, n)
        A = field.array(A)
        return np.block([[A, Z], [Z, inverse(A, field).T]])
    if kind == "unipotent":
        if B is None:
            B = random_matrix(field, rng, (n, n))
            B = B + B.T
        B = field.array(B)
        return np.block([[I, B], [Z, I]])
    if kind == "J":
        return standard_J(field, n)
    raise ValueError(f"unknown generator {kind!r}")


def random_symplectic(seed=None, field=QQ, length: int = 6, n: int = 3) -> np.ndarray:
    """A random word of ``length`` standard generators (exactly symplectic)."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    S = field.array(np.eye(2 * n, dtype=int))
    for _ in range(length):
        kind = ("levi", "unipotent", "J")[int(rng.integers(0, 3))]
        S = S.dot(symplectic_generator(kind, field, rng, n=n))
    return S


# ---------------------------------------------------------------------------
# V(14) = ker(contraction) and its coordinates [u, X, Y, z]

SYM_PAIRS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))
COORD_NAMES = (["u"] + [f"x{a + 1}{b + 1}" for a, b in SYM_PAIRS]
               + [f"y{a + 1}{b + 1}" for a, b in SYM_PAIRS] + ["z"])


def T_TRIPLE(a: int, b: int) -> Tuple[int, int, int]:
    """Signed triple of x_ab: (1,2,3) with position b replaced by 3+a (0-based)."""
    t = [0, 1, 2]
    t[b] = 3 + a
    return tuple(t)


def S_TRIPLE(a: int, b: int) -> Tuple[int, int, int]:
    """Signed triple of y_ab: (4,5,6) with position b replaced by a (0-based)."""
    t = [3, 4, 5]
    t[b] = a
    return tuple(t)


def _blocks(coords):
    c = list(coords)
    if len(c) != 14:
        raise ValueError("expected 14 coordinates")
    X = [[None] * 3 for _ in range(3)]
    Y = [[None] * 3 for _ in range(3)]
    for t, (a, b) in enumerate(SYM_PAIRS):
        X[a][b] = X[b][a] = c[1 + t]
        Y[a][b] = Y[b][a] = c[7 + t]
    return c[0], X, Y, c[13]


def sigma_to_trivector(coords, n=6) -> MultiVector:
    """The 3-vector u e123 + sum x_ab e_{T_ab} + sum y_ab e_{S_ab} + z e456."""
    u, X, Y, z = _blocks(coords)
    terms = [((0, 1, 2), u), ((3, 4, 5), z)]
    for a in range(3):
        for b in range(3):
            terms.append((T_TRIPLE(a, b), X[a][b]))
            terms.append((S_TRIPLE(a, b), Y[a][b]))
    acc = {}
    for t, c in terms:
        s, key = sort_sign(t)
        acc[key] = acc.get(key, 0) + s * c
    return MultiVector(6, 3, acc)


def _read(w: MultiVector, triple):
    s, key = sort_sign(triple)
    return s * w.coeffs.get(key, 0)


def trivector_to_sigma(w: MultiVector, field=None, check: bool = True) -> list:
    """14 coordinates of a 3-vector in V(14)."""
    if field is None:
        field = field_of(list(w.coeffs.values()))
    if check and not contract_3vector(w, field=field).is_zero():
        raise ValueError("3-vector does not lie in V(14)")
    out = [field(_read(w, (0, 1, 2)))]
    out += [field(_read(w, T_TRIPLE(a, b))) for a, b in SYM_PAIRS]
    out += [field(_read(w, S_TRIPLE(a, b))) for a, b in SYM_PAIRS]
    out.append(field(_read(w, (3, 4, 5))))
    return out


def dual_to_3form(coords) -> MultiVector:
    """The 3-form u* x123 + sum X*_ab x_{T_ab} + sum Y*_ab x_{S_ab} + z* x456."""
    w = sigma_to_trivector(coords)
    return MultiVector(6, 3, w.coeffs, dual=True)


def form_to_dual(om: MultiVector, field=None) -> list:
    """14 coordinates [u*, X*, Y*, z*] of the restriction of a 3-form to V(14).

    The symmetric blocks are averages ``(om(T_ab) + om(T_ba)) / 2`` so that the
    pairing with a point is the trace pairing ``u*u + tr X*X + tr Y*Y + z*z``.
    """
    if field is None:
        field = field_of(list(om.coeffs.values()))
    half = field.one / 2
    out = [field(_read(om, (0, 1, 2)))]
    out += [(field(_read(om, T_TRIPLE(a, b))) + field(_read(om, T_TRIPLE(b, a)))) * half
            for a, b in SYM_PAIRS]
    out += [(field(_read(om, S_TRIPLE(a, b))) + field(_read(om, S_TRIPLE(b, a)))) * half
            for a, b in SYM_PAIRS]
    out.append(field(_read(om, (3, 4, 5))))
    return out


_WEIGHTS = [1] + [1 if a == b else 2 for a, b in SYM_PAIRS] * 2 + [1]


def pairing14(dual, point):
    """<omega, w> = u*u + tr(X* X) + tr(Y* Y) + z* z."""
    total = 0
    for wgt, a, b in zip(_WEIGHTS, dual, point):
        total = total + wgt * a * b
    return total


def in_v14(w: MultiVector, field=None) -> bool:
    return contract_3vector(w, field=field).is_zero()


def v14_decompose(w: MultiVector, field=None):
    """Split a 3-vector as (V(14) part, V(6) part).

    V(6) = abar ^ V with abar = L^{-1}(alpha); the contraction maps
    abar ^ v to 2v, which gives the projector.
    """
    if w.k != 3 or w.dual or w.n != 6:
        raise ValueError("expected a 3-vector in dimension 6")
    if field is None:
        field = field_of(list(w.coeffs.values()))
    c = contract_3vector(w, field=field)
    abar = alpha_bivector(field=field)
    w6 = wedge(abar, c) * (field.one / 2)
    return w - w6, w6


def sp_action14(S, field=None) -> np.ndarray:
    """Matrix of ∧^3 S on V(14) in the coordinates [u, X, Y, z]."""
    S = np.asarray(S, dtype=object)
    if field is None:
        field = field_of(S)
    C = compound(S, 3, field)
    cols = []
    for j in range(14):
        unit = [field.zero] * 14
        unit[j] = field.one
        w = sigma_to_trivector(unit)
        image = MultiVector.from_vector(6, 3, C.dot(w.vector(field)))
        cols.append(trivector_to_sigma(image, field, check=False))
    return np.array(cols, dtype=object).T
