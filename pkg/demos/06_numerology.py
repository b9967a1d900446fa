#!/usr/bin/env python3
"""
Enumerative numbers: cohomology ring, Grassmannian degrees, Chern classes,
Brill-Noether counts, and the summary table of linear sections.
"""

from lglab import enumerative as en

R = en.sigma_ring()
t6 = R.power(R.gen(0), 6)
print("tau1^6 =", R.reduce(t6))
print("graded ranks:", R.graded_ranks())
print("deg G(2,6) =", en.gr26_degree())
print("c(E) =", en.vertex_bundle_chern())
print("deg Y(k):", en.vertex_degrees())
bn = en.brill_noether_degree(9, 2, 8)
print("Brill-Noether degree (9,2,8):", bn, "->", bn / 2, "pairs")
print()
print(en.table_csv())
