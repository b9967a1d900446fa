#!/usr/bin/env python3
"""
Singular hyperplane sections and their conic forms.

A dual form omega that kills the tangent space at a point [U] of LG(3,6)
cuts a hyperplane section singular at [U].  In a symplectic frame adapted to
U the form reads [0 : 0 : Y* : z*]; the conic q_omega = Y* decides
the type of the singularity through the rank of the tangent cone.
"""

import numpy as np

from lglab.exact import GF, QQ, rank
from lglab.lgsigma import DualForm, dual_classify, nodal_dual_form, tangent_cone_rank

# %% rank table of the tangent cone
Z = np.zeros((3, 3), dtype=int)
for Y in (np.eye(3, dtype=int), np.diag([1, 1, 0]), np.diag([1, 0, 0])):
    d = list(QQ.array(list(DualForm.from_blocks(0, Z, Y, 0))))
    print("Y* =", np.diag(Y), "-> tangent-cone rank", tangent_cone_rank(d),
          "| dual orbit", dual_classify(d))

# %% a random nodal witness over F_1009
F = GF(1009)
W = nodal_dual_form(seed=1, field=F)
print("pivot on the section:", W.omega(W.pivot) == 0)
print("conic Gram matrix rank:", rank(W.conic, F))
print("tangent cone rank at the pivot:", tangent_cone_rank(W.omega, W.frame, F))
