"""Small sparse multivariate polynomials.

Coefficients can be ints, Fractions or :class:`~lglab.exact.Fp` elements;
the class only relies on ``+``, ``*`` and comparison with 0.  Because the
arithmetic is generic, the same Python function that evaluates a formula
at a point also builds the polynomial when fed :func:`variables`.
"""
from __future__ import annotations

import itertools
from typing import Dict, Iterable, Tuple

import numpy as np

Monomial = Tuple[int, ...]


def _is_zero(c) -> bool:
    return c == 0


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Monomial, object] | None = None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if not _is_zero(c):
                    self.terms[tuple(m)] = c

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i, one=1):
        m = [0] * nvars
        m[i] = 1
        return cls(nvars, {tuple(m): one})

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return Poly.constant(self.nvars, other)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return Poly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.nvars, {m: c * other for m, c in self.terms.items()})
        other = self._lift(other)
        t: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t[m] + c1 * c2 if m in t else c1 * c2
        return Poly(self.nvars, t)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e: int):
        out = Poly.constant(self.nvars, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return (self - other).is_zero()

    def __hash__(self):  # pragma: no cover - polys are not meant as keys
        raise TypeError("Poly is unhashable")

    # inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(m) for m in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), 0)

    def diff(self, i: int) -> "Poly":
        t = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                t[tuple(mm)] = c * m[i]
        return Poly(self.nvars, t)

    def __call__(self, point):
        point = list(point)
        if len(point) != self.nvars:
            raise ValueError("wrong number of coordinates")
        total = 0
        for m, c in self.terms.items():
            term = c
            for x, e in zip(point, m):
                if e:
                    term = term * x ** e
            total = total + term
        return total

    def map_coefficients(self, f) -> "Poly":
        return Poly(self.nvars, {m: f(c) for m, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), reverse=True):
            mon = "*".join(f"t{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
            parts.append(f"{c}*{mon}" if mon else f"{c}")
        return " + ".join(parts)


def variables(nvars: int, one=1):
    return [Poly.var(nvars, i, one) for i in range(nvars)]


def monomials(nvars: int, degree: int) -> list:
    """Exponent vectors of all degree-``degree`` monomials, in a fixed order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        m = [0] * nvars
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    return out


def monomial_matrix(points, degree: int) -> np.ndarray:
    """Rows: points; columns: all degree-d monomials evaluated at the point."""
    points = [list(p) for p in points]
    nvars = len(points[0])
    combos = list(itertools.combinations_with_replacement(range(nvars), degree))
    M = np.empty((len(points), len(combos)), dtype=object)
    for r, p in enumerate(points):
        for c, combo in enumerate(combos):
            v = p[combo[0]]
            for i in combo[1:]:
                v = v * p[i]
            M[r, c] = v
    return M


def poly_from_vector(vec, nvars: int, degree: int) -> Poly:
    """Inverse of :func:`monomial_matrix`: coefficients → polynomial."""
    return Poly(nvars, dict(zip(monomials(nvars, degree), vec)))


def vector_from_poly(P: Poly, degree: int, zero=0) -> list:
    return [P.terms.get(m, zero) for m in monomials(P.nvars, degree)]
