"""Cohomology-ring, Chern-class and Brill-Noether degree computations.

Everything here is exact integer / rational arithmetic on small symbolic
objects: a graded quotient ring Z[tau1, tau2, tau3]/I, truncated Chern
polynomials on P^5, and hook-length counts.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from fractions import Fraction
from typing import Dict, Sequence, Tuple

import numpy as np

from .exact import QQ, rref

__all__ = [
    "GradedQuotientRing", "sigma_ring", "sigma_ring_degree", "hook_length_count",
    "grassmannian_degree", "gr26_degree", "chern_series", "vertex_bundle_chern",
    "vertex_degrees", "brill_noether_degree", "summary_table", "table_json", "table_csv",
    "UNVERIFIED",
]

Mono = Tuple[int, ...]


class GradedQuotientRing:
    """Q[t_1..t_m] (weighted) modulo homogeneous relations.

    ``relations`` is a list of dicts {exponent tuple: coefficient}.  Each
    relation's weighted-degrevlex largest monomial is its leading term for
    the rewriting reducer; the linear-algebra normal form picks the same
    standard monomials because every graded piece is row-reduced in that
    order.
    """

    def __init__(self, names: Sequence[str], degrees: Sequence[int], relations, top: Mono):
        self.names = list(names)
        self.degrees = list(degrees)
        self.m = len(names)
        self.relations = [{tuple(k): Fraction(v) for k, v in r.items() if v} for r in relations]
        for r in self.relations:
            if len({self.deg(k) for k in r}) != 1:
                raise ValueError("relations must be homogeneous")
        self.top = tuple(top)
        self.top_degree = self.deg(self.top)
        self.rules = [self._rule(r) for r in self.relations]
        self._pieces: Dict[int, tuple] = {}

    # -- monomials ----------------------------------------------------------
    def deg(self, mono: Mono) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def order_key(self, mono: Mono):
        """Weighted degree, then reverse lexicographic (smaller last exponent is larger)."""
        return (self.deg(mono), tuple(-e for e in reversed(mono)))

    def monomials(self, d: int) -> list:
        out = []
        bound = [d // w for w in self.degrees]
        for exps in itertools.product(*[range(b + 1) for b in bound]):
            if self.deg(exps) == d:
                out.append(tuple(exps))
        return sorted(out, key=self.order_key, reverse=True)

    def gen(self, i: int) -> dict:
        e = [0] * self.m
        e[i] = 1
        return {tuple(e): Fraction(1)}

    @staticmethod
    def mul(a: dict, b: dict) -> dict:
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = out.get(m, 0) + ca * cb
        return {k: v for k, v in out.items() if v}

    def power(self, a: dict, e: int) -> dict:
        out = {tuple([0] * self.m): Fraction(1)}
        for _ in range(e):
            out = self.mul(out, a)
        return out

    # -- rewriting ------------------------------------------------------------
    def _rule(self, r: dict):
        lead = max(r, key=self.order_key)
        c = r[lead]
        tail = {k: -v / c for k, v in r.items() if k != lead}
        return lead, tail

    def reduce(self, poly: dict, rng=None) -> dict:
        """Rewrite with the relations until no leading term divides any term.

        With an rng the term and rule are picked at random, which is how
        confluence is exercised.
        """
        poly = {k: Fraction(v) for k, v in poly.items() if v}
        while True:
            moves = [(m, i) for m in poly for i, (lead, _) in enumerate(self.rules)
                     if all(a >= b for a, b in zip(m, lead))]
            if not moves:
                return poly
            if rng is None:
                m, i = max(moves, key=lambda mi: (self.order_key(mi[0]), -mi[1]))
            else:
                m, i = moves[int(rng.integers(len(moves)))]
            lead, tail = self.rules[i]
            c = poly.pop(m)
            q = tuple(a - b for a, b in zip(m, lead))
            for t, tc in tail.items():
                mm = tuple(a + b for a, b in zip(q, t))
                poly[mm] = poly.get(mm, 0) + c * tc
            poly = {k: v for k, v in poly.items() if v}

    def is_confluent_on(self, poly: dict, trials: int = 20, seed=0) -> bool:
        rng = np.random.default_rng(seed)
        ref = self.reduce(poly)
        return all(self.reduce(poly, rng) == ref for _ in range(trials))

    # -- linear algebra normal form --------------------------------------------
    def _piece(self, d: int):
        """(monomials, RREF rows of I_d, pivots)."""
        if d in self._pieces:
            return self._pieces[d]
        mons = self.monomials(d)
        index = {m: i for i, m in enumerate(mons)}
        rows = []
        for r in self.relations:
            rd = self.deg(next(iter(r)))
            if rd > d:
                continue
            for q in self.monomials(d - rd):
                row = [Fraction(0)] * len(mons)
                for m, c in r.items():
                    row[index[tuple(a + b for a, b in zip(q, m))]] += c
                rows.append(row)
        if rows:
            R, piv = rref(np.array(rows, dtype=object), QQ)
            R = R[:len(piv)]
        else:
            R, piv = np.zeros((0, len(mons)), dtype=object), []
        self._pieces[d] = (mons, R, list(piv))
        return self._pieces[d]

    def graded_rank(self, d: int) -> int:
        mons, R, piv = self._piece(d)
        return len(mons) - len(piv)

    def graded_ranks(self) -> list:
        return [self.graded_rank(d) for d in range(self.top_degree + 1)]

    def normal_form(self, poly: dict) -> dict:
        """Unique representative supported on non-pivot monomials (per degree)."""
        by_deg: dict = {}
        for m, c in poly.items():
            by_deg.setdefault(self.deg(m), {})[m] = Fraction(c)
        out = {}
        for d, part in by_deg.items():
            mons, R, piv = self._piece(d)
            vec = [part.get(m, Fraction(0)) for m in mons]
            for row, pc in zip(R, piv):
                c = vec[pc]
                if c:
                    vec = [v - c * x for v, x in zip(vec, row)]
            out.update({m: v for m, v in zip(mons, vec) if v})
        return out

    def degree_of(self, poly: dict) -> Fraction:
        """Coefficient on the top class (taken as the point class)."""
        nf = self.normal_form(poly)
        top_nf = self.normal_form({self.top: Fraction(1)})
        if len(top_nf) != 1:
            raise ValueError("top class is not a normal-form monomial")
        (tm, tc), = top_nf.items()
        extra = {m for m, c in nf.items() if self.deg(m) == self.top_degree and m != tm}
        if extra:
            raise ValueError("top piece is not spanned by the top class")
        return nf.get(tm, Fraction(0)) / tc


def sigma_ring() -> GradedQuotientRing:
    """Z[tau1,tau2,tau3]/(tau1^2 - 2 tau2, tau2^2 - 2 tau1 tau3, tau3^2)."""
    rel = [{(2, 0, 0): 1, (0, 1, 0): -2},
           {(0, 2, 0): 1, (1, 0, 1): -2},
           {(0, 0, 2): 1}]
    return GradedQuotientRing(["tau1", "tau2", "tau3"], [1, 2, 3], rel, top=(1, 1, 1))


def sigma_ring_degree() -> int:
    R = sigma_ring()
    d = R.degree_of(R.power(R.gen(0), 6))
    if d.denominator != 1:
        raise AssertionError("non-integral degree")  # pragma: no cover
    return int(d)


# ---------------------------------------------------------------------------
# Grassmannian degrees

def hook_length_count(shape: Sequence[int]) -> int:
    """Number of standard Young tableaux of a partition (hook-length formula)."""
    shape = [r for r in shape if r > 0]
    if any(a < b for a, b in zip(shape, shape[1:])):
        raise ValueError("shape must be a partition (non-increasing rows)")
    n = sum(shape)
    cols = [sum(1 for r in shape if r > j) for j in range(shape[0])] if shape else []
    hooks = 1
    for i, r in enumerate(shape):
        for j in range(r):
            hooks *= (r - j - 1) + (cols[j] - i - 1) + 1
    return math.factorial(n) // hooks


def grassmannian_degree(k: int, n: int) -> int:
    """deg G(k, n) in its Plücker embedding = #SYT of the k x (n-k) rectangle."""
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    return hook_length_count([n - k] * k)


def gr26_degree() -> int:
    return grassmannian_degree(2, 6)


# ---------------------------------------------------------------------------
# Chern classes on P^5

def chern_series(kclass: Dict[int, int], dim: int = 5) -> list:
    """Total Chern class of sum_a m_a O(a) on P^dim, truncated at t^dim.

    The Chern class of O(a) is (1 + a t); negative multiplicities invert it.
    """
    out = [Fraction(0)] * (dim + 1)
    out[0] = Fraction(1)
    for a, mult in kclass.items():
        if a == 0:
            continue
        for _ in range(abs(mult)):
            if mult > 0:
                out = [out[i] + (a * out[i - 1] if i else 0) for i in range(dim + 1)]
            else:
                new = []
                for i in range(dim + 1):           # divide by (1 + a t)
                    new.append(out[i] - (a * new[i - 1] if i else 0))
                out = new
    return out


def vertex_bundle_chern() -> list:
    """Chern classes of the rank-5 incidence bundle E on P^5.

    E is the kernel of the surjection ∧^2 T ⊗ O(-1) -> Ω(3) induced by alpha.
    From the Euler sequence T = 6 O(1) - O, so
    ∧^2 T ⊗ O(-1) = 15 O(1) - 6 O + O(-1), and Ω(3) = 6 O(2) - O(3).
    """
    k = {1: 15, 0: -6, -1: 1, 2: -6, 3: 1}
    c = chern_series(k)
    rank_e = sum(k.values())
    if rank_e != 5:
        raise AssertionError("rank mismatch")  # pragma: no cover
    return [int(x) for x in c]


def vertex_degrees() -> Dict[int, int]:
    """deg Y(k) = c_{6-k}(E) for k = 2..5 (Porteous)."""
    c = vertex_bundle_chern()
    return {k: c[6 - k] for k in (5, 4, 3, 2)}


# ---------------------------------------------------------------------------
# Brill-Noether

def brill_noether_degree(g: int, r: int, d: int) -> Fraction:
    """g! * prod_{i=0..r} i! / (g - d + r + i)!."""
    if min(g, r) < 0 or g - d + r < 0:
        raise ValueError("negative factorial argument")
    val = Fraction(math.factorial(g))
    for i in range(r + 1):
        val *= Fraction(math.factorial(i), math.factorial(g - d + r + i))
    return val


def expected_dimension(g: int, r: int, d: int) -> int:
    return g - (r + 1) * (g - d + r)


# ---------------------------------------------------------------------------
# summary table

_ROWS = [
    (1, "Fano 5-fold of index 3", "empty", "empty"),
    (2, "Fano 4-fold of index 2", "4 disjoint conics", "4 points"),
    (3, "Fano 3-fold of index 1", "surface of degree 16", "plane quartic curve"),
    (4, "K3-surface", "3-fold of degree 12", "quartic surface"),
    (5, "Canonical curve of genus 9", "quintic hypersurface", "21-nodal quartic 3-fold"),
]

UNVERIFIED = {
    "sectional_genus_omega": 22,
    "sectional_genus_projected_section": 8,
}


def summary_table() -> list:
    c = vertex_bundle_chern()
    rows = []
    for k, X, Y, dual in _ROWS:
        rows.append({"k": k, "section": X, "dimY": k - 1, "degY": c[6 - k],
                     "vertex": Y, "dual": dual})
    return rows


def table_json(rows=None) -> str:
    return json.dumps(summary_table() if rows is None else rows, sort_keys=True, indent=2)


def table_csv(rows=None) -> str:
    rows = summary_table() if rows is None else rows
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["k", "section", "dimY", "degY", "vertex", "dual"],
                       lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
