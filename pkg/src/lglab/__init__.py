"""Exact-arithmetic toolkit for the Lagrangian Grassmannian LG(3,6) in P^13.

Modules
-------
exact        fields Q and F_p, exact linear algebra
poly         sparse multivariate polynomials
exterior     multivectors, wedge, symplectic group, the 14 coordinates
lgsigma      quadrics, quartic f, orbits, nodal hyperplane sections
gr26         G(2,6), Pfaffians, planes of rank-4 forms
nodal        projection of a nodal section from its node into G(2,6)
vertex       incidence bundle fibers, degeneracy scans (vertex varieties)
pencil       diagonalization of pencils of skew forms, Segre varieties
enumerative  cohomology ring, Chern classes, Brill-Noether numbers
checks, cli  verification checks and the ``lglab`` command
"""
__version__ = "0.1.0"

from .exact import GF, QQ, parse_field  # noqa: F401
