#!/usr/bin/env python3
"""
Diagonalizing a generic pencil of skew forms.

A pencil <alpha, alpha'> on F^{2n} has n degenerate members; their images
cut out 2-planes U_j and both forms split as sums of the rank-2 pieces
gamma_j = ∧^2 U_j.  For 2-forms, the common Lagrangian subspaces are exactly
the n-spaces meeting each W_i, a Segre variety (P^1)^n of degree n!.
"""

import numpy as np

from lglab.exact import GF, random_invertible, rank
from lglab.pencil import (
    common_lagrangian_test, conjugate, diagonal_pencil, meets_all, pencil_diagonalize,
    segre_components, segre_degree,
)

F = GF(1009)
rng = np.random.default_rng(0)

A, B = diagonal_pencil([F(2), F(5), F(11)], F)
T = random_invertible(F, rng, 6)
d = pencil_diagonalize(conjugate(T, A), conjugate(T, B), field=F)
print("roots of the pencil Pfaffian:", [F.serialize(r) for r in d.roots])
print("alpha  =", [F.serialize(c) for c in d.coeffs], "in the gamma basis")
print("alpha' =", [F.serialize(c) for c in d.coeffs2], "in the gamma basis")

# %% common Lagrangian subspaces of a pencil of forms
A2, B2 = T.T.dot(A).dot(T), T.T.dot(B).dot(T)
W = segre_components(A2, B2, field=F)
U = np.array([w.T.dot(np.array([F.random(rng), F.random(rng)], dtype=object)) for w in W],
             dtype=object)
print("frame built from the W_i is Lagrangian for both:", common_lagrangian_test(U, A2, B2, F),
      "| meets every W_i:", meets_all(U, W, F))
R = np.array([[F.random(rng) for _ in range(6)] for _ in range(3)], dtype=object)
print("random frame:", common_lagrangian_test(R, A2, B2, F), meets_all(R, W, F))
print("degree of the Segre 3-fold:", segre_degree(3))
