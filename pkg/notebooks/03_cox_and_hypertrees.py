"""
Keel-Vermeire and hypertrees
============================

The Keel-Vermeire expression expands to two triangles sharing a vertex.
Hypertrees of low degree exist only for n = 6 and n = 7.
"""

from __future__ import annotations

from balanced_complexes.cox_poly import clear_denominators, is_invariant
from balanced_complexes.fixtures import cycle_of_tetrahedra, keel_vermeire
from balanced_complexes.hypertree import enumerate_hypertrees, hypertree_degree, min_degree
from balanced_complexes.complex_core import is_balanced
from balanced_complexes.balance_solver import is_minimal
from balanced_complexes import QQ

f = keel_vermeire()
print("expanded:", f)
print("invariant:", is_invariant(f))
print("support:", f.to_weighted_complex().complex)
print("class:", clear_denominators(f).pic_class)

for n in (5, 6, 7):
    found = enumerate_hypertrees(n)
    print(f"n={n}: {len(found)} hypertree class(es)")
    for h in found:
        degrees = {v: hypertree_degree(h, v) for v in range(1, n + 1)}
        print("  ", h, "degrees", degrees, "min", min_degree(h))

# cycles of tetrahedra give minimal 2-complexes
for m in (3, 4, 5):
    wc = cycle_of_tetrahedra(m)
    print(f"m={m}: {len(wc.complex)} faces, balanced={is_balanced(wc)}, minimal={is_minimal(wc.complex, QQ)}")
