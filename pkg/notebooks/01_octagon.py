"""
The alternating octagon
=======================

An octagon of edges with weights +1, -1, +1, ... is balanced, and its
Laurent polynomial survives the translation u_i -> u_i + s.
"""

from __future__ import annotations

from balanced_complexes import QQ, FieldSpec
from balanced_complexes.balance_solver import constraint_system, decide_balanceable, nullspace
from balanced_complexes.cox_poly import clear_denominators, ga_expand, is_invariant, laurent_of
from balanced_complexes.fixtures import alternating_octagon, curve_f9, octagon, two_triangles_disjoint
from balanced_complexes.picard import divisor_class_of, pair

cx = octagon()
print("complex:", cx)

# the balancing equations have a one-dimensional solution space
dim, basis = nullspace(constraint_system(cx, QQ))
print("nullspace dimension:", dim, "generator:", [str(x) for x in basis[0]])

# the matching polynomial and its expansion in s
f = laurent_of(alternating_octagon())
print("f =", f)
for j, piece in enumerate(ga_expand(f)):
    print(f"  s^{j}:", piece)
print("invariant:", is_invariant(f))

# clearing denominators lands in the Cox ring with the class of the complex
g = clear_denominators(f)
print("class of cleared element equals class of complex:", g.pic_class == divisor_class_of(cx))
print("D =", divisor_class_of(cx))
print("F9 . D =", pair(curve_f9(), divisor_class_of(cx)))

# two disjoint triangles only balance in characteristic 2
tri = two_triangles_disjoint()
for p in (0, 2, 3, 5):
    v = decide_balanceable(tri, FieldSpec(p))
    print(f"two triangles, char {p}: balanceable={v.balanceable}", v.witness)
