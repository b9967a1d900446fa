#!/usr/bin/env python3
"""
Equations and orbits of LG(3,6) in P^13.

Points of the Lagrangian Grassmannian are written [u : X : Y : z] with X, Y
symmetric 3x3.  The affine chart is [1 : X : adj X : det X].  This script
recovers the 21 quadrics by interpolation, evaluates the invariant quartic f,
and sorts a few points into the four Sp(6)-orbits.
"""

import numpy as np

from lglab.exact import GF, QQ, random_matrix
from lglab.lgsigma import (
    chart_point, orbit_classify, quadric_values, quartic_f, sigma_quadrics, tangent_line_point,
)
from lglab.nodal import fit_quadrics

F = GF(1009)
rng = np.random.default_rng(0)

# %% interpolate quadrics through chart points
pts = []
for _ in range(200):
    M = random_matrix(F, rng, (3, 3))
    pts.append(list(chart_point(M + M.T, F)))
print("quadrics through 200 chart points over F_1009:", len(fit_quadrics(pts, F)))
print("listed quadrics:", len(sigma_quadrics()))

# %% the quartic invariant
f = quartic_f()
print("f has", len(f.terms), "terms, degree", f.degree())

# %% orbits of points on tangent lines, by the rank of the X-part
for r in range(4):
    p, _ = tangent_line_point(rng, QQ, xrank=r)
    print(f"rank X = {r}: f = {f(list(p))}, orbit = {orbit_classify(p)}")

w = [0] * 14
w[5] = 1
print("x23 witness:", orbit_classify(w),
      "- nonzero quadrics:", sum(q != 0 for q in quadric_values(w)))
print("[1:0:0:1]:", orbit_classify([1] + [0] * 12 + [1]))
