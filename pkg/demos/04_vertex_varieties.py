#!/usr/bin/env python3
"""
Vertex varieties as degeneracy loci.

For k forms omega_1..omega_k, Y(k) is where their restrictions to the
5-dimensional fibers E_y drop rank.  Over F_31 the pivot planes of nodal
witnesses meet Y(k) exactly in their conics; for k = 5 the determinant has
degree 5 on lines.
"""

import numpy as np

from lglab.enumerative import vertex_degrees
from lglab.exact import GF
from lglab.vertex import (
    e_fiber, fiber_quadrics, line_determinant, projective_points, vertex_scan, witnessed_setup,
)

F31 = GF(31)
print("degrees of Y(k) from the Chern classes:", vertex_degrees())

fb = e_fiber([1, 2, 3, 4, 5, 6], F31)
print("fiber dimension:", fb.dim, "| quadrics on P(E_y):", len(fiber_quadrics(fb)))

for k in (2, 3):
    st = witnessed_setup(k, seed=0, field=F31)
    cs = projective_points(31, 2)
    for i, w in enumerate(st.witnesses):
        scan = vertex_scan(st, plane=w.frame)
        Q = np.array([[int(c) for c in row] for row in w.conic])
        conic = np.einsum("ni,ij,nj->n", cs, Q, cs) % 31 == 0
        print(f"k={k} witness {i}: rank counts {scan.counts()}, "
              f"locus = conic: {np.array_equal(scan.ranks <= k - 1, conic)}")

F = GF(1009)
rng = np.random.default_rng(1)
st5 = witnessed_setup(5, seed=2, field=F)
degs = []
for _ in range(5):
    v0, v1 = ([F.random(rng) for _ in range(6)] for _ in range(2))
    degs.append(line_determinant(st5, np.array(v0, dtype=object), np.array(v1, dtype=object)).degree())
print("k = 5 determinant degrees on random lines:", degs)
