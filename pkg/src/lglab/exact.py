"""Exact fields and linear algebra.

Two kinds of field are supported:

* ``QQ``  -- the rationals, elements are :class:`fractions.Fraction`;
* ``GF(p)`` -- a prime field with ``p`` odd, elements are :class:`Fp`.

Matrices are numpy object arrays holding field elements.  Elimination over
F_p is carried out on machine integers, elimination over Q uses a
fraction-free (Bareiss style) Gauss–Jordan sweep on integer rows, so the
public functions stay exact while the inner loops stay in numpy.
"""
from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime

__all__ = [
    "Fp", "PrimeField", "RationalField", "QQ", "GF", "parse_field",
    "field_of", "asmatrix", "rref", "rank", "kernel_basis", "left_kernel",
    "solve_homogeneous", "row_basis", "det", "inverse", "intersect_rowspaces",
    "random_matrix", "random_invertible", "is_zero_array",
]


class Fp:
    """An element of the prime field F_p, stored reduced to ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = int(v) % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, (int, np.integer)):
            return int(other) % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError("denominator vanishes mod p")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(o, self.p) * self.inverse()

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class RationalField:
    """The field Q."""

    name = "Q"
    characteristic = 0
    p = None

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fp):
            raise TypeError("cannot coerce an F_p element into Q")
        if isinstance(x, np.integer):
            x = int(x)
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def random(self, rng: np.random.Generator, bound: int = 5) -> Fraction:
        """A small random integer in [-bound, bound]."""
        return Fraction(int(rng.integers(-bound, bound + 1)))

    def random_nonzero(self, rng, bound: int = 5) -> Fraction:
        while True:
            x = self.random(rng, bound)
            if x:
                return x

    def array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=object)
        out = np.empty(a.shape, dtype=object)
        for idx, x in np.ndenumerate(a):
            out[idx] = self(x)
        return out

    def elements(self):
        raise ValueError("Q is infinite")

    def serialize(self, x) -> str:
        x = self(x)
        return f"{x.numerator}/{x.denominator}"

    def parse(self, s: str) -> Fraction:
        return Fraction(s)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """The prime field F_p (p odd).  Use :func:`GF` to get a cached instance."""

    characteristic: int

    def __init__(self, p: int):
        p = int(p)
        if p == 2 or not isprime(p):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"F_{p}"

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{x.p}")
            return x
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.p) / x.denominator
        return Fp(int(x), self.p)

    @property
    def zero(self):
        return Fp(0, self.p)

    @property
    def one(self):
        return Fp(1, self.p)

    def random(self, rng: np.random.Generator, bound=None) -> Fp:
        return Fp(int(rng.integers(0, self.p)), self.p)

    def random_nonzero(self, rng, bound=None) -> Fp:
        return Fp(int(rng.integers(1, self.p)), self.p)

    def array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=object)
        out = np.empty(a.shape, dtype=object)
        for idx, x in np.ndenumerate(a):
            out[idx] = self(x)
        return out

    def elements(self):
        return (Fp(i, self.p) for i in range(self.p))

    def serialize(self, x) -> int:
        return self(x).v

    def parse(self, s) -> Fp:
        return Fp(int(s), self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str):
    """Parse ``"q"`` or ``"fp:<p>"`` into a field."""
    s = spec.strip().lower()
    if s in ("q", "qq", "rational"):
        return QQ
    if s.startswith("fp:"):
        return GF(int(s[3:]))
    raise ValueError(f"unknown field {spec!r}; use 'q' or 'fp:<p>'")


# ---------------------------------------------------------------------------
# helpers

def field_of(*arrays):
    """Infer the field from the entries (any F_p entry wins, else Q)."""
    for a in arrays:
        for x in np.asarray(a, dtype=object).flat:
            if isinstance(x, Fp):
                return GF(x.p)
    return QQ


def asmatrix(A, field=None) -> np.ndarray:
    """Return a 2-d object array of field elements."""
    A = np.asarray(A, dtype=object)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    if field is None:
        field = field_of(A)
    return field.array(A)


def is_zero_array(a) -> bool:
    return all(x == 0 for x in np.asarray(a, dtype=object).flat)


def _to_ints_modp(A, p) -> np.ndarray:
    out = np.empty(A.shape, dtype=np.int64 if p < 2**31 else object)
    for idx, x in np.ndenumerate(A):
        out[idx] = x.v if isinstance(x, Fp) else int(x) % p
    return out


def _rref_modp(M: np.ndarray, p: int):
    """In-place reduced row echelon form of an integer matrix mod p."""
    m, n = M.shape
    piv = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            M[rows] = (M[rows] - np.outer(col[rows], M[r]) % p) % p
        piv.append(c)
        r += 1
    return M, piv


def _integer_rows(A: np.ndarray) -> np.ndarray:
    """Scale each rational row by the lcm of its denominators."""
    m, n = A.shape
    out = np.empty((m, n), dtype=object)
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        out[i] = [x.numerator * (den // x.denominator) for x in row]
    return out


def _rref_bareiss(M: np.ndarray):
    """Fraction-free Gauss–Jordan elimination of an integer object matrix.

    Returns ``(M, pivots, d)`` where ``M / d`` is the reduced row echelon
    form.  Every intermediate entry is a minor of the input, so all the
    divisions are exact.
    """
    m, n = M.shape
    piv = []
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = [i for i in range(r, m) if M[i, c] != 0]
        if not nz:
            continue
        i = nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        pv = M[r, c]
        col = M[:, c].copy()
        others = np.array([k for k in range(m) if k != r], dtype=int)
        if others.size:
            sub = M[others]
            M[others] = (sub * pv - np.outer(col[others], M[r])) // prev
        piv.append(c)
        prev = pv
        r += 1
    return M, piv, prev


def rref(A, field=None):
    """Reduced row echelon form.  Returns ``(R, pivots)`` with R over the field."""
    A = np.asarray(A, dtype=object)
    if field is None:
        field = field_of(A)
    m, n = A.shape
    if m == 0 or n == 0:
        return field.array(np.zeros((m, n), dtype=object)), []
    if field.characteristic:
        p = field.p
        M, piv = _rref_modp(_to_ints_modp(A, p), p)
        R = np.empty(M.shape, dtype=object)
        for idx, x in np.ndenumerate(M):
            R[idx] = Fp(int(x), p)
        return R, piv
    M, piv, d = _rref_bareiss(_integer_rows(A))
    R = np.empty((m, n), dtype=object)
    for idx, x in np.ndenumerate(M):
        R[idx] = Fraction(x, d) if idx[0] < len(piv) else Fraction(0)
    return R, piv


def rank(A, field=None) -> int:
    """Exact rank."""
    A = np.asarray(A, dtype=object)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if A.size == 0:
        return 0
    if field is None:
        field = field_of(A)
    if field.characteristic:
        return len(_rref_modp(_to_ints_modp(A, field.p), field.p)[1])
    return len(_rref_bareiss(_integer_rows(A))[1])


def kernel_basis(A, field=None) -> list:
    """Basis of the right null space {v : A v = 0}."""
    A = np.asarray(A, dtype=object)
    if field is None:
        field = field_of(A)
    n = A.shape[1]
    if A.shape[0] == 0:
        return [field.array(np.eye(n, dtype=int)[i]) for i in range(n)]
    R, piv = rref(A, field)
    free = [j for j in range(n) if j not in set(piv)]
    basis = []
    for f in free:
        v = np.array([field.zero] * n, dtype=object)
        v[f] = field.one
        for i, c in enumerate(piv):
            v[c] = -R[i, f]
        basis.append(v)
    return basis


def left_kernel(A, field=None) -> list:
    """Basis of {w : w A = 0}."""
    A = np.asarray(A, dtype=object)
    return kernel_basis(A.T, field)


def solve_homogeneous(rows: Sequence, n: int, field=None) -> list:
    """Basis of the solutions of a homogeneous system given by coefficient rows."""
    rows = list(rows)
    if field is None:
        field = field_of(rows) if rows else QQ
    if not rows:
        return [field.array(np.eye(n, dtype=int)[i]) for i in range(n)]
    A = np.array([list(r) for r in rows], dtype=object)
    if A.shape[1] != n:
        raise ValueError("row length does not match the number of unknowns")
    return kernel_basis(A, field)


def row_basis(A, field=None) -> np.ndarray:
    """Rows of the reduced echelon form spanning the row space of A."""
    A = np.asarray(A, dtype=object)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if field is None:
        field = field_of(A)
    R, piv = rref(A, field)
    return R[: len(piv)]


def det(A, field=None):
    A = np.asarray(A, dtype=object)
    n, m = A.shape
    if n != m:
        raise ValueError("det of a non-square matrix")
    if field is None:
        field = field_of(A)
    M = A.copy()
    d = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i, c] != 0), None)
        if piv is None:
            return field.zero
        if piv != c:
            M[[c, piv]] = M[[piv, c]]
            d = -d
        d = d * M[c, c]
        inv = field.one / M[c, c]
        for i in range(c + 1, n):
            if M[i, c] != 0:
                M[i] = M[i] - M[c] * (M[i, c] * inv)
    return field(d)


def inverse(A, field=None) -> np.ndarray:
    A = np.asarray(A, dtype=object)
    n = A.shape[0]
    if field is None:
        field = field_of(A)
    aug = np.concatenate([field.array(A), field.array(np.eye(n, dtype=int))], axis=1)
    R, piv = rref(aug, field)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


def intersect_rowspaces(A, B, field=None) -> np.ndarray:
    """Basis (as rows) of rowspace(A) ∩ rowspace(B)."""
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    if field is None:
        field = field_of(A, B)
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.empty((0, A.shape[1] if A.ndim == 2 else 0), dtype=object)
    M = np.concatenate([A, B], axis=0)
    ker = left_kernel(M, field)
    if not ker:
        return np.empty((0, A.shape[1]), dtype=object)
    vecs = np.array([k[: A.shape[0]].dot(A) for k in ker], dtype=object)
    return row_basis(vecs, field)


def random_matrix(field, rng: np.random.Generator, shape, bound: int = 5) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    for idx in np.ndindex(*shape):
        out[idx] = field.random(rng, bound)
    return out


def random_invertible(field, rng, n: int, bound: int = 5) -> np.ndarray:
    while True:
        T = random_matrix(field, rng, (n, n), bound)
        if rank(T, field) == n:
            return T
