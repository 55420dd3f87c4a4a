"""Divisor classes on the blow-up model of M_{0,n} and their pairing with curves.

A class is stored as ``h*H + sum_I e[I]*E_I`` with signed ``e`` (so the
classes attached to complexes have ``e[I] <= 0``).  Index sets ``I`` range
over subsets of ``1..n-1`` with ``1 <= |I| <= n-4``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .complex_core import Complex, ComplexError

IndexSet = frozenset


class PicardError(ValueError):
    pass


def index_sets(n: int) -> Iterator[frozenset[int]]:
    """Admissible exceptional index sets for M_{0,n}, by size then lexicographically."""
    labels = range(1, n)
    for k in range(1, n - 3):
        for I in combinations(labels, k):
            yield frozenset(I)


def format_index_set(I: Iterable[int]) -> str:
    return ",".join(str(i) for i in sorted(I))


def parse_index_set(text: str) -> frozenset[int]:
    return frozenset(int(t) for t in text.split(",") if t.strip())


def _index_key(I: frozenset[int]) -> tuple:
    return (len(I), tuple(sorted(I)))


def _check_index(n: int, I: frozenset[int]) -> None:
    if not 1 <= len(I) <= n - 4:
        raise PicardError(f"E_{format_index_set(I)} is not an exceptional class on M_0,{n}")
    if min(I) < 1 or max(I) > n - 1:
        raise PicardError(f"index set {sorted(I)} not inside [1, {n - 1}]")


def _clean(n: int, coeffs: Mapping) -> dict[frozenset[int], int]:
    out = {}
    for I, v in coeffs.items():
        I = parse_index_set(I) if isinstance(I, str) else frozenset(I)
        _check_index(n, I)
        if v:
            out[I] = out.get(I, 0) + int(v)
    return {I: v for I, v in out.items() if v}


@dataclass(frozen=True)
class DivisorClass:
    n: int
    h: int
    e: Mapping[frozenset[int], int]

    def __init__(self, n: int, h: int = 0, e: Mapping | None = None):
        if n < 5:
            raise PicardError(f"need n >= 5, got {n}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "h", int(h))
        object.__setattr__(self, "e", _clean(n, e or {}))

    def coefficient(self, I: Iterable[int]) -> int:
        return self.e.get(frozenset(I), 0)

    @property
    def degree(self) -> int:
        return self.h

    @classmethod
    def zero(cls, n: int) -> "DivisorClass":
        return cls(n)

    @classmethod
    def exceptional(cls, n: int, I: Iterable[int]) -> "DivisorClass":
        return cls(n, 0, {frozenset(I): 1})

    @classmethod
    def hyperplane(cls, n: int) -> "DivisorClass":
        return cls(n, 1)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return class_add(self, other)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return class_sub(self, other)

    def __neg__(self) -> "DivisorClass":
        return class_scale(-1, self)

    def __rmul__(self, m: int) -> "DivisorClass":
        return class_scale(m, self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.n == other.n and self.h == other.h and dict(self.e) == dict(other.e)

    def __hash__(self) -> int:
        return hash((self.n, self.h, frozenset(self.e.items())))

    def __str__(self) -> str:
        parts = [f"{self.h}H"] if self.h else []
        for I in sorted(self.e, key=_index_key):
            v = self.e[I]
            sign = "-" if v < 0 else "+"
            mag = "" if abs(v) == 1 else str(abs(v))
            parts.append(f"{sign} {mag}E_{{{format_index_set(I)}}}")
        return " ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "H": self.h,
            "E": {format_index_set(I): self.e[I] for I in sorted(self.e, key=_index_key)},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "DivisorClass":
        return cls(int(data["n"]), int(data.get("H", 0)), dict(data.get("E", {})))


@dataclass(frozen=True)
class CurveClass:
    """Intersection numbers of a curve with H and with each E_I."""

    n: int
    dot_h: int
    dot_e: Mapping[frozenset[int], int]

    def __init__(self, n: int, dot_h: int, dot_e: Mapping | None = None):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "dot_h", int(dot_h))
        object.__setattr__(self, "dot_e", _clean(n, dot_e or {}))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CurveClass):
            return NotImplemented
        return (self.n, self.dot_h, dict(self.dot_e)) == (other.n, other.dot_h, dict(other.dot_e))

    def __hash__(self) -> int:
        return hash((self.n, self.dot_h, frozenset(self.dot_e.items())))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dotH": self.dot_h,
            "dotE": {format_index_set(I): self.dot_e[I] for I in sorted(self.dot_e, key=_index_key)},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CurveClass":
        return cls(int(data["n"]), int(data["dotH"]), dict(data.get("dotE", {})))


def _same_n(a, b) -> None:
    if a.n != b.n:
        raise PicardError(f"classes on M_0,{a.n} and M_0,{b.n}")


def class_add(d1: DivisorClass, d2: DivisorClass) -> DivisorClass:
    _same_n(d1, d2)
    e = dict(d1.e)
    for I, v in d2.e.items():
        e[I] = e.get(I, 0) + v
    return DivisorClass(d1.n, d1.h + d2.h, e)


def class_scale(m: int, d: DivisorClass) -> DivisorClass:
    return DivisorClass(d.n, m * d.h, {I: m * v for I, v in d.e.items()})


def class_sub(d1: DivisorClass, d2: DivisorClass) -> DivisorClass:
    return class_add(d1, class_scale(-1, d2))


def pair(c: CurveClass, d: DivisorClass) -> int:
    """Intersection number C . D."""
    _same_n(c, d)
    return c.dot_h * d.h + sum(v * c.dot_e.get(I, 0) for I, v in d.e.items())


def _max_overlap(cx: Complex, I: frozenset[int]) -> int:
    return max(sum(1 for v in s.entries if v in I) for s in cx.simplices)


def divisor_class_of(cx: Complex, n: int | None = None) -> DivisorClass:
    """The class c*H - sum_I (c - max_sigma sum_{i in I} mult_i(sigma)) E_I of a complex.

    Defined for any complex, balanceable or not.  ``n`` overrides ``cx.n``.
    """
    n = cx.n if n is None else n
    if n < 5:
        raise PicardError(f"need n >= 5, got {n}")
    if max(cx.support()) > n - 1:
        raise ComplexError(f"complex has labels outside [1, {n - 1}]")
    c = cx.cardinality
    e = {I: -(c - _max_overlap(cx, I)) for I in index_sets(n)}
    return DivisorClass(n, c, e)


def boundary_binomial_class(i: int, j: int, n: int) -> DivisorClass:
    """H - sum of E_I over admissible I avoiding both i and j."""
    if i == j:
        raise PicardError("need two distinct labels")
    for v in (i, j):
        if not 1 <= v <= n - 1:
            raise PicardError(f"label {v} outside [1, {n - 1}]")
    return DivisorClass(n, 1, {I: -1 for I in index_sets(n) if i not in I and j not in I})


def is_effective_sum_of_exceptionals(d: DivisorClass) -> bool:
    """True iff ``d`` is a non-negative integer combination of the E_I (the empty one included)."""
    return d.h == 0 and all(v >= 0 for v in d.e.values())


def unique_complex_for_class(d: DivisorClass, c: int) -> Complex | None:
    """Recover the non-singular complex of cardinality ``c`` whose class is ``d``.

    A c-subset sigma belongs to the complex exactly when E_sigma has
    coefficient zero; the candidate is returned only if it reproduces ``d``.
    """
    n = d.n
    if c > n - 4:
        raise PicardError(f"uniqueness needs c <= n - 4 (c={c}, n={n})")
    if c < 1:
        raise PicardError("cardinality must be positive")
    simplices = [sigma for sigma in combinations(range(1, n), c) if d.coefficient(sigma) == 0]
    if not simplices:
        return None
    cx = Complex(n, simplices)
    return cx if divisor_class_of(cx) == d else None


def exceptional_excess(d: DivisorClass, d_sub: DivisorClass) -> DivisorClass:
    """d - d_sub; for a subcomplex this is a sum of exceptional classes."""
    return class_sub(d, d_sub)


def repeated_label(cx: Complex) -> int | None:
    """Smallest label with multiplicity >= 2 in some simplex, if the complex is singular.

    Its E_i coefficient is strictly larger for ``cx`` than for any
    non-singular complex of the same cardinality.
    """
    reps = [v for s in cx.simplices for v, m in s.multiplicities().items() if m >= 2]
    return min(reps) if reps else None
