"""
Minimal graphs by characteristic
================================

Enumerate minimal loop-allowed graphs on few vertices and compare the
linear-algebra verdict with the shape patterns.
"""

from __future__ import annotations

from collections import Counter

from balanced_complexes import FieldSpec
from balanced_complexes.graph_catalog import catalogue

for p in (0, 2, 3):
    entries, mismatches = catalogue(5, FieldSpec(p))
    tags = Counter(e.shape.tag.value for e in entries)
    print(f"char {p}: {len(entries)} classes, {len(mismatches)} mismatches")
    for tag, count in sorted(tags.items()):
        print(f"   {tag:28s} {count}")

# a few individual graphs in characteristic 0
entries, _ = catalogue(4, FieldSpec(0))
for e in entries:
    edges = " ".join(f"{a}{b}" for a, b in (s.entries for s in e.complex.simplices))
    print(f"{edges:24s} {e.shape.to_json()}  witness={[str(w) for w in e.witness]}")
