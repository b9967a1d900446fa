#!/usr/bin/env python3
"""
Projecting a nodal hyperplane section from its node into G(2,6).

Six sections attached to a point v of the conic send every Lagrangian U' of
the section to the 2-plane they span on ∧^2 U'.  The script fits the linear
map from the projected point in P^11 to the Plücker point of that 2-plane,
checks it on held-out samples, and then looks at the plane of skew forms
orthogonal to the image.
"""

import numpy as np

from lglab.exact import GF, rank
from lglab.gr26 import annihilates_wedge2, quadric_in_z
from lglab.lgsigma import nodal_dual_form
from lglab.nodal import fit_projection, fit_quadrics, pi_u, sample_hyperplane_std, section_space

F = GF(1009)
rng = np.random.default_rng(3)
W = nodal_dual_form(seed=11, field=F)

on = section_space(W, seed=1)
off = section_space(W, seed=1, on_conic=False)
print("section space: on the conic", on.dim, "| off the conic", off.dim)

fit = fit_projection(W, on, n_fit=200, n_test=50, seed=2)
print("solution space dimension:", fit.solution_dim)
print("held-out pairs proportional:", fit.test_pass, "/", fit.test_total)
print("images on G(2,6):", fit.test_on_grassmannian, "/", fit.test_total)
print("rank of the fitted 15 x 12 map:", rank(fit.M, F))

# %% the orthogonal plane of 2-forms
P = fit.plane()
print("Pfaffian cubic identically zero:", P.pfaffian_vanishes())
scan = P.rank2_scan()
print("rank-2 members among", scan["points"], "points of P^2(F_1009):", len(scan["rank2"]))
Wz = quadric_in_z(P, seed=0)
print("common kernel span W has dimension", Wz.shape[0], "and the plane kills ∧^2 W:",
      annihilates_wedge2(P, Wz))

# %% quadrics through the projected section in P^11
pts = [pi_u(W, sample_hyperplane_std(W, rng).point) for _ in range(400)]
print("quadrics through 400 projected samples:", len(fit_quadrics(pts, F)))
