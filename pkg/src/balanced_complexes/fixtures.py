"""Named example objects, addressable as ``fixtures://<name>``.

Every fixture is stored as the JSON document its type serializes to, so a
fixture and a file on disk are interchangeable on the command line.
Parametric families take a numeric suffix: ``cycle-of-tetrahedra-4``,
``orthoplex-3``, ``even-cycle-10``.
"""

from __future__ import annotations

import copy
import re
from typing import Callable

from .complex_core import Complex, WeightedComplex
from .cox_poly import LaurentElement
from .hypertree import Hypertree
from .picard import CurveClass, divisor_class_of

SCHEME = "fixtures://"
FIXTURE_VERSION = 1


class FixtureError(KeyError):
    pass


def cycle_graph(m: int, n: int | None = None) -> Complex:
    """Edges {i, i+1} around 1..m (m = 1 gives the loop {1,1}, m = 2 is not a cycle)."""
    if m == 1:
        return Complex(n or 5, [(1, 1)])
    if m < 3:
        raise ValueError("a cycle needs at least three edges or a single loop")
    return Complex(n or max(m + 1, 5), [(i, i % m + 1) for i in range(1, m + 1)])


def octagon() -> Complex:
    return cycle_graph(8, 9)


def alternating_octagon() -> WeightedComplex:
    cx = octagon()
    return WeightedComplex(cx, {(i, i % 8 + 1): (-1) ** (i + 1) for i in range(1, 9)})


def square(n: int = 5) -> Complex:
    return cycle_graph(4, n)


def k4(n: int = 5) -> Complex:
    return Complex(n, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)])


def two_triangles_disjoint(n: int = 7) -> Complex:
    return Complex(n, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)])


def two_triangles_shared_vertex(n: int = 6) -> Complex:
    return Complex(n, [(1, 2), (2, 4), (1, 4), (1, 3), (3, 5), (1, 5)])


def odd_cycles_with_path(m1: int, m2: int, length: int, n: int | None = None) -> Complex:
    """Cycle on 1..m1, path of ``length`` edges from m1, then a cycle of length m2.

    Cycles of length one are loops.
    """
    edges = []
    if m1 == 1:
        edges.append((1, 1))
    else:
        edges += [(i, i % m1 + 1) for i in range(1, m1 + 1)]
    a = m1
    for step in range(length):
        edges.append((a + step, a + step + 1))
    b = a + length
    if m2 == 1:
        edges.append((b, b))
    else:
        ring = list(range(b, b + m2))
        edges += [(ring[i], ring[(i + 1) % m2]) for i in range(m2)]
    top = max(max(e) for e in edges)
    return Complex(n or max(top + 1, 5), edges)


def triangle_bridge_triangle(n: int = 7) -> Complex:
    """Triangles {1,2,3} and {4,5,6} joined by the edge {3,4}."""
    return odd_cycles_with_path(3, 3, 1, n)


def cycle_of_tetrahedra(m: int) -> WeightedComplex:
    """Tetrahedra (2k-1, 2k, 2k+1, 2k+2) with labels taken mod 2m, as a weighted 2-complex.

    For a tetrahedron listed as (a, b, c, d): w_abc = w_abd = 1, w_acd = w_bcd = -1.
    """
    if m < 2:
        raise ValueError("need at least two tetrahedra")
    size = 2 * m
    lab = lambda v: (v - 1) % size + 1  # noqa: E731
    weights: dict[tuple[int, ...], int] = {}
    for k in range(1, m + 1):
        a, b, c, d = (lab(2 * k - 1), lab(2 * k), lab(2 * k + 1), lab(2 * k + 2))
        for face, w in (((a, b, c), 1), ((a, b, d), 1), ((a, c, d), -1), ((b, c, d), -1)):
            key = tuple(sorted(face))
            if key in weights:
                raise ValueError(f"face {key} appears twice")
            weights[key] = w
    cx = Complex(size + 1, list(weights))
    return WeightedComplex(cx, weights)


def orthoplex(d: int, n: int | None = None) -> Complex:
    """Facets of the d-dimensional cross-polytope on pairs {2k-1, 2k}."""
    from .complex_core import product

    pieces = [Complex(n or max(2 * d + 1, 5), [(2 * k - 1,), (2 * k,)]) for k in range(1, d + 1)]
    out = pieces[0]
    for p in pieces[1:]:
        out = product(out, p)
    return out


def keel_vermeire(n: int = 6) -> LaurentElement:
    """(u1 - u2)(u3 - u4) - (u1 - u3)(u2 - u5)."""
    d = LaurentElement.difference
    return d(1, 2, n) * d(3, 4, n) - d(1, 3, n) * d(2, 5, n)


def curve_f9() -> CurveClass:
    return CurveClass(9, 3, {
        "1,3,5,7": 2, "2,4,6,8": 1, "1,4,6": 1, "3,6,8": 1, "2,5,8": 1, "2,4,7": 1,
    })


def curve_f7() -> CurveClass:
    return CurveClass(7, 4, {f"{i},{j}": 1 for i in range(1, 4) for j in range(4, 7)})


def hypertree_6() -> Hypertree:
    return Hypertree(6, [[1, 2, 3], [1, 4, 5], [2, 4, 6], [3, 5, 6]])


def hypertree_7() -> Hypertree:
    return Hypertree(7, [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [3, 5, 7]])


_STATIC: dict[str, Callable[[], object]] = {
    "octagon": octagon,
    "octagon-alternating": alternating_octagon,
    "hexagon": lambda: cycle_graph(6, 7),
    "square": square,
    "K4": k4,
    "two-triangles-disjoint": two_triangles_disjoint,
    "two-triangles-shared-vertex": two_triangles_shared_vertex,
    "triangle-bridge-triangle": triangle_bridge_triangle,
    "keel-vermeire": keel_vermeire,
    "F9": curve_f9,
    "F7": curve_f7,
    "class-oct": lambda: divisor_class_of(octagon()),
    "class-tri": lambda: divisor_class_of(two_triangles_disjoint()),
    "hypertree-6": hypertree_6,
    "hypertree-7": hypertree_7,
}

_FAMILIES: dict[str, Callable[[int], object]] = {
    "cycle-of-tetrahedra": cycle_of_tetrahedra,
    "orthoplex": orthoplex,
    "even-cycle": lambda m: cycle_graph(m, m + 1) if m % 2 == 0 else _odd(m),
}

FAMILY_EXAMPLES = ("cycle-of-tetrahedra-3", "cycle-of-tetrahedra-4", "cycle-of-tetrahedra-5",
                   "orthoplex-2", "orthoplex-3", "even-cycle-10")


def _odd(m: int):
    raise ValueError(f"even-cycle needs an even length, got {m}")


def names() -> list[str]:
    return sorted(_STATIC) + list(FAMILY_EXAMPLES)


def build(name: str):
    """The fixture as a library object."""
    if name in _STATIC:
        return _STATIC[name]()
    match = re.fullmatch(r"([a-z-]+)-(\d+)", name)
    if match and match.group(1) in _FAMILIES:
        return _FAMILIES[match.group(1)](int(match.group(2)))
    raise FixtureError(f"unknown fixture {name!r}")


_CACHE: dict[str, dict] = {}


def load(name: str) -> dict:
    """The fixture as a JSON document (a fresh copy each call)."""
    if name not in _CACHE:
        _CACHE[name] = build(name).to_json()  # type: ignore[attr-defined]
    return copy.deepcopy(_CACHE[name])


def resolve(uri: str) -> dict | None:
    """JSON document for a ``fixtures://`` URI, or None if ``uri`` is not one."""
    if not uri.startswith(SCHEME):
        return None
    return load(uri[len(SCHEME):])
