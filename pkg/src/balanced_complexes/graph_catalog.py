"""Minimal 1-complexes (graphs with loops) and the degree-two irreducibility test.

Over a field k the minimal graphs are: an even cycle; two odd cycles
meeting in one vertex; two disjoint odd cycles (char 2 only); two odd
cycles joined by a path of bivalent vertices (char != 2 only).  A loop
{i,i} counts as an odd cycle of length one.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from typing import Iterable

from .balance_solver import BudgetExceeded, is_minimal, minimal_generator
from .complex_core import Complex, ComplexError
from .exact_arith import FieldSpec


class Shape(str, Enum):
    EVEN_CYCLE = "EvenCycle"
    SHARED_VERTEX = "TwoOddCyclesSharedVertex"
    DISJOINT = "TwoOddCyclesDisjoint"
    PATH = "TwoOddCyclesPath"
    NOT_MINIMAL = "NotMinimalPattern"


@dataclass(frozen=True)
class GraphShape:
    tag: Shape
    cycles: tuple[int, ...] = ()
    path_length: int | None = None

    @property
    def is_minimal_pattern(self) -> bool:
        return self.tag is not Shape.NOT_MINIMAL

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag.value}
        if self.tag is Shape.EVEN_CYCLE:
            out["m"] = self.cycles[0]
        elif self.tag is not Shape.NOT_MINIMAL:
            out["m1"], out["m2"] = self.cycles
        if self.path_length is not None:
            out["path_length"] = self.path_length
        return out


NOT_MINIMAL = GraphShape(Shape.NOT_MINIMAL)


@dataclass
class _Graph:
    edges: list[tuple[int, int]]
    incident: dict[int, list[int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for idx, (a, b) in enumerate(self.edges):
            self.incident.setdefault(a, []).append(idx)
            if b != a:
                self.incident.setdefault(b, []).append(idx)

    def degree(self, v: int) -> int:
        return sum(2 if self.edges[e][0] == self.edges[e][1] else 1 for e in self.incident[v])

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def walk(self, start: int, e: int) -> tuple[int, int, int]:
        """Follow edge ``e`` out of ``start`` through degree-2 vertices.

        Returns (end vertex, number of edges walked, last edge used).
        """
        length, v = 1, self.other(e, start)
        while v != start and self.degree(v) == 2:
            (e,) = [f for f in self.incident[v] if f != e]
            v = self.other(e, v)
            length += 1
        return v, length, e

    def components(self) -> list[set[int]]:
        seen: set[int] = set()
        comps = []
        for v in self.incident:
            if v in seen:
                continue
            comp, stack = set(), [v]
            while stack:
                u = stack.pop()
                if u in comp:
                    continue
                comp.add(u)
                stack.extend(self.other(e, u) for e in self.incident[u])
            seen |= comp
            comps.append(comp)
        return comps

    def edges_in(self, comp: set[int]) -> int:
        return sum(1 for a, _ in self.edges if a in comp)


def _cycles_at(g: _Graph, v: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Closed walks back to ``v`` and open walks (end vertex, length) leaving ``v``."""
    used: set[int] = set()
    cycles, paths = [], []
    for e in g.incident[v]:
        if e in used:
            continue
        end, length, last = g.walk(v, e)
        used.add(e)
        if end == v:
            used.add(last)
            cycles.append(length)
        else:
            paths.append((end, length))
    return cycles, paths


def _as_graph(cx: Complex) -> _Graph:
    if cx.cardinality != 2:
        raise ComplexError("graph classification needs a 1-complex (simplices of cardinality 2)")
    return _Graph([tuple(s.entries) for s in cx.simplices])  # type: ignore[misc]


def classify_graph(cx: Complex, field: FieldSpec) -> GraphShape:
    """Match the graph against the minimal patterns valid in this characteristic."""
    g = _as_graph(cx)
    char2 = field.characteristic == 2
    degs = {v: g.degree(v) for v in g.incident}
    comps = g.components()
    high = sorted(v for v, d in degs.items() if d != 2)

    if not high:
        lengths = sorted(g.edges_in(c) for c in comps)
        if len(lengths) == 1 and lengths[0] % 2 == 0:
            return GraphShape(Shape.EVEN_CYCLE, (lengths[0],))
        if len(lengths) == 2 and all(m % 2 for m in lengths) and char2:
            return GraphShape(Shape.DISJOINT, tuple(lengths))
        return NOT_MINIMAL

    if len(comps) != 1:
        return NOT_MINIMAL

    if len(high) == 1 and degs[high[0]] == 4:
        cycles, paths = _cycles_at(g, high[0])
        if len(cycles) == 2 and not paths and all(m % 2 for m in cycles):
            return GraphShape(Shape.SHARED_VERTEX, tuple(sorted(cycles)))
        return NOT_MINIMAL

    if len(high) == 2 and all(degs[v] == 3 for v in high) and not char2:
        a, b = high
        cyc_a, paths_a = _cycles_at(g, a)
        cyc_b, paths_b = _cycles_at(g, b)
        if len(cyc_a) == len(cyc_b) == 1 and len(paths_a) == len(paths_b) == 1:
            (end, length), = paths_a
            if end == b and all(m % 2 for m in cyc_a + cyc_b):
                return GraphShape(Shape.PATH, tuple(sorted(cyc_a + cyc_b)), length)
        return NOT_MINIMAL

    return NOT_MINIMAL


def is_irreducible_degree_two(cx: Complex, field: FieldSpec, n: int | None = None) -> bool:
    """Whether D_cx is an irreducible degree-two class: minimal, loop-free, not the square."""
    n = cx.n if n is None else n
    if n < 6:
        raise ValueError(f"degree-two irreducibility needs 2 <= n - 4, got n={n}")
    if max(cx.support()) > n - 1:
        raise ComplexError(f"labels outside [1, {n - 1}]")
    shape = classify_graph(cx, field)
    if not shape.is_minimal_pattern or cx.is_singular():
        return False
    return not (shape.tag is Shape.EVEN_CYCLE and shape.cycles == (4,))


# -- enumeration --------------------------------------------------------------

def _budget() -> int:
    return int(os.environ.get("BC_ENUM_BUDGET", 20_000_000))


def _candidate_graphs(k: int, budget: int) -> Iterable[list[tuple[int, int]]]:
    """Graphs with support exactly 1..k, every degree >= 2, at most k + 2 edges,
    and degrees non-increasing in label order.

    Every minimal graph is isomorphic to one of these: a vertex of degree one
    forces its edge weight to zero, and a one-dimensional solution space
    needs #edges <= rank + 1 <= #vertices + 2.
    """
    all_edges = [(i, j) for i in range(1, k + 1) for j in range(i, k + 1)]
    deg = [0] * (k + 2)
    chosen: list[tuple[int, int]] = []
    nodes = 0
    max_edges = k + 2

    def row_done(v: int) -> bool:
        return deg[v] >= 2 and (v == 1 or deg[v] <= deg[v - 1])

    def rec(idx: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"graph enumeration exceeded {budget} nodes")
        if idx == len(all_edges):
            if row_done(k):
                yield list(chosen)
            return
        i, j = all_edges[idx]
        # the first edge of row i closes row i - 1
        if j == i and i > 1 and not row_done(i - 1):
            return
        if len(chosen) < max_edges:
            chosen.append((i, j))
            inc = 2 if i == j else 1
            deg[i] += inc
            if i != j:
                deg[j] += inc
            yield from rec(idx + 1)
            deg[i] -= inc
            if i != j:
                deg[j] -= inc
            chosen.pop()
        yield from rec(idx + 1)

    yield from rec(0)


def graph_canonical_form(edges: Iterable[tuple[int, int]], k: int) -> tuple[tuple[int, int], ...]:
    edges = list(edges)
    return min(_relabel(edges, perm) for perm in permutations(range(1, k + 1)))


def _relabel(edges, perm) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(tuple(sorted((perm[a - 1], perm[b - 1]))) for a, b in edges))


def _minimal_on_exactly(k: int, char: int, budget: int) -> list[tuple[tuple[int, int], ...]]:
    field = FieldSpec(char)
    seen: set = set()
    out = []
    perms = list(permutations(range(1, k + 1)))
    for edges in _candidate_graphs(k, budget):
        key = tuple(sorted(edges))
        if key in seen:
            continue
        if not is_minimal(Complex(k + 1, edges), field):
            continue
        orbit = {_relabel(edges, p) for p in perms}
        seen |= orbit
        out.append(min(orbit))
    return sorted(out)


def enumerate_minimal_graphs(V: int, field: FieldSpec, jobs: int = 1,
                             budget: int | None = None) -> list[Complex]:
    """Every minimal graph on at most ``V`` vertices up to relabeling, labels 1..k, n = V + 1."""
    if V > 7 and budget is None and "BC_ENUM_BUDGET" not in os.environ:
        raise BudgetExceeded(f"minimal-graph enumeration is budgeted for V <= 7 (got {V})")
    budget = _budget() if budget is None else budget
    ks = list(range(1, V + 1))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_minimal_on_exactly, ks, [field.characteristic] * len(ks),
                                  [budget] * len(ks)))
    else:
        parts = [_minimal_on_exactly(k, field.characteristic, budget) for k in ks]
    return [Complex(V + 1, edges) for part in parts for edges in part]


@dataclass(frozen=True)
class CatalogueEntry:
    complex: Complex
    shape: GraphShape
    witness: tuple | None

    def to_json(self, field: FieldSpec) -> dict:
        return {
            "edges": [list(s.entries) for s in self.complex.simplices],
            "shape": self.shape.to_json(),
            "witness": None if self.witness is None else [field.format(w) for w in self.witness],
        }


def catalogue(V: int, field: FieldSpec, jobs: int = 1) -> tuple[list[CatalogueEntry], list[CatalogueEntry]]:
    """Enumerated minimal graphs with their pattern; second list holds pattern mismatches."""
    entries, mismatches = [], []
    for cx in enumerate_minimal_graphs(V, field, jobs):
        entry = CatalogueEntry(cx, classify_graph(cx, field), minimal_generator(cx, field))
        entries.append(entry)
        if not entry.shape.is_minimal_pattern:
            mismatches.append(entry)
    return entries, mismatches
