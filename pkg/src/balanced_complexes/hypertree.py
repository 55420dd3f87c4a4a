"""Irreducible hypertrees: axiom checks, degrees, and small-n enumeration."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from .balance_solver import BudgetExceeded

OUTSIDE = "outside"

AXIOM_NAMES = {1: "part size", 2: "valence", 3: "convexity", 4: "normality"}


class HypertreeError(ValueError):
    pass


@dataclass(frozen=True)
class Hypertree:
    """Parts Gamma_1..Gamma_d on the vertex set 1..n (not validated on construction)."""

    n: int
    parts: tuple[frozenset[int], ...]

    def __init__(self, n: int, parts: Iterable[Iterable[int]]):
        ps = tuple(sorted((frozenset(p) for p in parts), key=lambda p: sorted(p)))
        for p in ps:
            if p and (min(p) < 1 or max(p) > n):
                raise HypertreeError(f"part {sorted(p)} not inside [1, {n}]")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "parts", ps)

    @property
    def d(self) -> int:
        return len(self.parts)

    def valence(self, v: int) -> int:
        return sum(1 for p in self.parts if v in p)

    def valences(self) -> dict[int, int]:
        return {v: self.valence(v) for v in range(1, self.n + 1)}

    def canonical_form(self) -> tuple[tuple[int, ...], ...]:
        return min(_relabel(self.parts, perm) for perm in permutations(range(1, self.n + 1)))

    def to_json(self) -> dict:
        return {"n": self.n, "parts": [sorted(p) for p in self.parts]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Hypertree":
        return cls(int(data["n"]), data["parts"])


def _relabel(parts: Sequence[frozenset[int]], perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(perm[v - 1] for v in p)) for p in parts))


@dataclass(frozen=True)
class AxiomVerdict:
    ok: bool
    violated: tuple[int, ...] = ()
    details: tuple[str, ...] = field(default=())

    @property
    def first_violation(self) -> int | None:
        return self.violated[0] if self.violated else None

    def to_json(self) -> dict:
        return {"ok": self.ok, "violated": list(self.violated), "details": list(self.details)}


def _convexity_failure(parts: Sequence[frozenset[int]]) -> tuple[int, ...] | None:
    d = len(parts)
    for size in range(2, d):
        for S in combinations(range(d), size):
            union = frozenset().union(*(parts[i] for i in S))
            if not len(union) - 2 > sum(len(parts[i]) - 2 for i in S):
                return S
    return None


def check_axioms(gamma: Hypertree) -> AxiomVerdict:
    """Check all four axioms; report every violated one, in axiom order."""
    violated, details = [], []
    small = [sorted(p) for p in gamma.parts if len(p) < 3]
    if small or not gamma.parts:
        violated.append(1)
        details.append(f"parts with fewer than 3 elements: {small}" if small else "no parts")
    low = [v for v, k in gamma.valences().items() if k < 2]
    if low:
        violated.append(2)
        details.append(f"vertices of valence < 2: {low}")
    bad = _convexity_failure(gamma.parts)
    if bad is not None:
        violated.append(3)
        details.append(f"convexity fails for parts {[i + 1 for i in bad]}")
    lhs = gamma.n - 2
    rhs = sum(len(p) - 2 for p in gamma.parts)
    if lhs != rhs:
        violated.append(4)
        details.append(f"normality: |N| - 2 = {lhs} but sum(|G_i| - 2) = {rhs}")
    return AxiomVerdict(not violated, tuple(violated), tuple(details))


def hypertree_degree(gamma: Hypertree, i: int | str) -> int:
    """Degree relative to the psi-class of vertex ``i``: d - v_i, or d - 1 for an outside point."""
    verdict = check_axioms(gamma)
    if not verdict.ok:
        raise HypertreeError(f"not a hypertree: {'; '.join(verdict.details)}")
    if i == OUTSIDE or not (isinstance(i, int) and 1 <= i <= gamma.n):
        return gamma.d - 1
    return gamma.d - gamma.valence(i)


def min_degree(gamma: Hypertree) -> int:
    return hypertree_degree(gamma, max(range(1, gamma.n + 1), key=gamma.valence))


def _budget() -> int:
    return int(os.environ.get("BC_ENUM_BUDGET", 20_000_000))


def _candidates(n: int, max_part_size: int) -> list[frozenset[int]]:
    out = []
    for k in range(3, min(max_part_size, n) + 1):
        out.extend(frozenset(c) for c in combinations(range(1, n + 1), k))
    return sorted(out, key=lambda p: sorted(p))


def _search(n: int, cands: list[frozenset[int]], first: int, budget: int) -> list[tuple[frozenset[int], ...]]:
    """Labeled hypertrees whose lexicographically first part is ``cands[first]``."""
    target = n - 2
    found = []
    nodes = 0

    def extend(chosen: list[frozenset[int]], start: int, excess: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"hypertree search exceeded {budget} nodes")
        if excess == target:
            parts = tuple(chosen)
            cover: dict[int, int] = {}
            for p in parts:
                for v in p:
                    cover[v] = cover.get(v, 0) + 1
            if len(cover) == n and min(cover.values()) >= 2 and _convexity_failure(parts) is None:
                found.append(parts)
            return
        for j in range(start, len(cands)):
            p = cands[j]
            if excess + len(p) - 2 > target:
                continue
            # two parts sharing two vertices already break convexity once d >= 3,
            # and no hypertree has d <= 2
            if any(len(p & q) > 1 for q in chosen):
                continue
            chosen.append(p)
            extend(chosen, j + 1, excess + len(p) - 2)
            chosen.pop()

    p0 = cands[first]
    if len(p0) - 2 <= target:
        extend([p0], first + 1, len(p0) - 2)
    return found


def enumerate_hypertrees(n: int, max_part_size: int | None = None, jobs: int = 1,
                         budget: int | None = None) -> list[Hypertree]:
    """All irreducible hypertrees on 1..n up to relabeling, in canonical form.

    Every hypertree has a part containing vertex 1, so the lexicographically
    first part does; the search is split on that first part.
    """
    if n > 8 and budget is None and "BC_ENUM_BUDGET" not in os.environ:
        raise BudgetExceeded(f"hypertree enumeration is budgeted for n <= 8 (got n={n})")
    budget = _budget() if budget is None else budget
    cands = _candidates(n, max_part_size or n)
    firsts = [i for i, p in enumerate(cands) if 1 in p]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            chunks = list(pool.map(_search, [n] * len(firsts), [cands] * len(firsts), firsts,
                                   [budget] * len(firsts)))
    else:
        chunks = [_search(n, cands, i, budget) for i in firsts]
    seen: set[tuple[tuple[int, ...], ...]] = set()
    classes: list[tuple[tuple[int, ...], ...]] = []
    perms = list(permutations(range(1, n + 1)))
    for chunk in chunks:
        for parts in chunk:
            key = _relabel(parts, range(1, n + 1))
            if key in seen:
                continue
            orbit = {_relabel(parts, perm) for perm in perms}
            seen |= orbit
            classes.append(min(orbit))
    return [Hypertree(n, c) for c in sorted(classes)]
