"""Balanceability and minimality by exact nullspace computation.

The balancing conditions of a complex are linear in the weights: one row
per face ``S`` (size 0..c-1, lying in some simplex), one column per
simplex, entry ``embedding_multiplicity(S, sigma)`` mapped into the field.
A complex is balanceable iff this system has a solution with no zero
coordinate, and minimal iff the solution space is a line spanned by such a
vector (a weighting of a subcomplex is a solution supported on it).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .complex_core import Complex, Simplex, WeightedComplex, embedding_multiplicity, is_balanced
from .exact_arith import FieldSpec, Raw

Matrix = list[list[Raw]]


class BudgetExceeded(RuntimeError):
    """A search would exceed its configured budget; no verdict was reached."""


def default_search_cap() -> int:
    """Largest number of projective points the finite-field witness search visits."""
    return 2 ** 16


def _max_nullspace_dim(p: int) -> int:
    env = os.environ.get("BC_MAX_NULLSPACE_DIM")
    if env:
        return int(env)
    # p**dim <= 2**16
    dim = 0
    while p ** (dim + 1) <= default_search_cap():
        dim += 1
    return dim


@dataclass(frozen=True)
class ConstraintSystem:
    field: FieldSpec
    rows: tuple[tuple[int, ...], ...]
    columns: tuple[Simplex, ...]
    matrix: tuple[tuple[Raw, ...], ...]

    def apply(self, w: Sequence[Raw]) -> list[Raw]:
        f = self.field
        out = []
        for row in self.matrix:
            acc = f.zero()
            for a, x in zip(row, w):
                if a and x:
                    acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return out

    def is_solution(self, w: Sequence[Raw]) -> bool:
        return all(v == 0 for v in self.apply(w))


def constraint_system(cx: Complex, field: FieldSpec) -> ConstraintSystem:
    rows = tuple(cx.faces())
    matrix = tuple(
        tuple(field.lift(embedding_multiplicity(S, s)) for s in cx.simplices) for S in rows
    )
    return ConstraintSystem(field, rows, cx.simplices, matrix)


def rref(matrix: Sequence[Sequence[Raw]], field: FieldSpec) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns, exact over ``field``."""
    p = field.characteristic
    M = [list(r) for r in matrix]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        row = M[r]
        if p:
            inv = pow(row[c], -1, p)
            row = [(x * inv) % p for x in row]
        else:
            inv = 1 / row[c]
            row = [x * inv for x in row]
        M[r] = row
        for i in range(len(M)):
            if i != r:
                a = M[i][c]
                if a:
                    other = M[i]
                    if p:
                        M[i] = [(x - a * y) % p for x, y in zip(other, row)]
                    else:
                        M[i] = [x - a * y for x, y in zip(other, row)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def matrix_nullspace(matrix: Sequence[Sequence[Raw]], ncols: int, field: FieldSpec) -> list[list[Raw]]:
    """Basis of {x : Mx = 0}, one vector per free column, in column order."""
    R, pivots = rref(matrix, field) if matrix else ([], [])
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero()] * ncols
        v[free] = field.one()
        for row, pc in zip(R, pivots):
            if row[free]:
                v[pc] = field.neg(row[free])
        basis.append(v)
    return basis


def nullspace(cs: ConstraintSystem) -> tuple[int, list[list[Raw]]]:
    basis = matrix_nullspace(cs.matrix, len(cs.columns), cs.field)
    return len(basis), basis


@dataclass(frozen=True)
class BalanceVerdict:
    complex: Complex
    field: FieldSpec
    balanceable: bool
    witness: tuple[Raw, ...] | None
    nullspace_dimension: int
    nullspace_basis: tuple[tuple[Raw, ...], ...]

    def weighted(self) -> WeightedComplex:
        if self.witness is None:
            raise ValueError("no witness: complex is not balanceable")
        return WeightedComplex(self.complex, self.witness, self.field)

    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "char": self.field.characteristic,
            "balanceable": self.balanceable,
            "witness": None if self.witness is None else [fmt(w) for w in self.witness],
            "dim": self.nullspace_dimension,
            "basis": [[fmt(x) for x in v] for v in self.nullspace_basis],
        }


def _normalize_rational(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale to coprime integers with first nonzero entry positive."""
    den = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0) or 1
    lead = next((x for x in ints if x), 1)
    if lead < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


def _normalize_modular(v: Sequence[int], p: int) -> tuple[int, ...]:
    lead = next((x for x in v if x), 1)
    inv = pow(lead, -1, p)
    return tuple((x * inv) % p for x in v)


def _rational_witness(basis: list[list[Raw]]) -> tuple[Raw, ...] | None:
    m = len(basis[0])
    k = len(basis)
    if any(all(b[j] == 0 for b in basis) for j in range(m)):
        return None
    # each coordinate of sum_i t^i b_i is a nonzero polynomial in t of degree < k,
    # so at most m*(k-1) integers t are bad
    for t in range(1, m * k + 2):
        coeffs = [Fraction(t) ** i for i in range(k)]
        v = [sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(m)]
        if all(x != 0 for x in v):
            return _normalize_rational(v)
    raise AssertionError("t-sweep bound violated")  # pragma: no cover


def _projective_points(p: int, k: int) -> np.ndarray:
    """All nonzero vectors of F_p^k whose first nonzero entry is 1, in lexicographic order."""
    grid = np.indices((p,) * k).reshape(k, -1).T
    grid = grid[np.any(grid != 0, axis=1)]
    first = grid[np.arange(len(grid)), np.argmax(grid != 0, axis=1)]
    return grid[first == 1]


def _modular_witness(basis: list[list[Raw]], p: int, max_dim: int | None = None) -> tuple[int, ...] | None:
    m = len(basis[0])
    k = len(basis)
    if any(all(b[j] == 0 for b in basis) for j in range(m)):
        return None
    for b in basis:
        if all(x != 0 for x in b):
            return _normalize_modular(b, p)
    cap = _max_nullspace_dim(p) if max_dim is None else max_dim
    if k > cap:
        raise BudgetExceeded(f"nullspace dimension {k} over F_{p} exceeds the search cap {cap}")
    B = np.array(basis, dtype=np.int64)
    pts = _projective_points(p, k)
    vals = (pts @ B) % p
    hits = np.flatnonzero(np.all(vals != 0, axis=1))
    if len(hits) == 0:
        return None
    return _normalize_modular([int(x) for x in vals[hits[0]]], p)


def decide_balanceable(cx: Complex, field: FieldSpec, max_dim: int | None = None) -> BalanceVerdict:
    """Decide whether some all-nonzero weighting balances ``cx`` over ``field``.

    Over F_p the witness search walks the projectivized nullspace and raises
    :class:`BudgetExceeded` if its dimension is above the cap.
    """
    cs = constraint_system(cx, field)
    dim, basis = nullspace(cs)
    witness = None
    if dim:
        if field.is_rational:
            witness = _rational_witness(basis)
        else:
            witness = _modular_witness(basis, field.characteristic, max_dim)
    return BalanceVerdict(
        cx, field, witness is not None, witness, dim, tuple(tuple(v) for v in basis)
    )


def is_minimal(cx: Complex, field: FieldSpec) -> bool:
    cs = constraint_system(cx, field)
    dim, basis = nullspace(cs)
    return dim == 1 and all(x != 0 for x in basis[0])


def minimal_generator(cx: Complex, field: FieldSpec) -> tuple[Raw, ...] | None:
    """The normalized spanning weighting of a minimal complex, else None."""
    cs = constraint_system(cx, field)
    dim, basis = nullspace(cs)
    if dim != 1 or any(x == 0 for x in basis[0]):
        return None
    if field.is_rational:
        return _normalize_rational(basis[0])
    return _normalize_modular(basis[0], field.characteristic)


# -- brute-force oracle -----------------------------------------------------

ORACLE_MAX_SIMPLICES = 20


def _subset_balanceable_oracle(cx: Complex, cols: tuple[int, ...], field: FieldSpec) -> bool:
    import sympy

    simps = [cx.simplices[i] for i in cols]
    faces: set[tuple[int, ...]] = {()}
    sub = Complex(cx.n, simps)
    faces.update(sub.faces())
    rows = [[embedding_multiplicity(S, s) for s in simps] for S in sorted(faces, key=lambda f: (len(f), f))]
    p = field.characteristic
    if p:
        rows = [[x % p for x in r] for r in rows]
    # a face seen with a nonzero coefficient by exactly one simplex kills that simplex's weight
    for r in rows:
        if sum(1 for x in r if x) == 1:
            return False
    if p == 0:
        basis = sympy.Matrix(rows).nullspace()
        return all(any(v[j] != 0 for v in basis) for j in range(len(simps)))
    k = len(simps)
    if (p - 1) ** k > 2 ** 20:
        raise BudgetExceeded(f"oracle weight enumeration over F_{p} with {k} simplices")
    A = np.array(rows, dtype=np.int64)
    W = np.indices((p - 1,) * k).reshape(k, -1) + 1
    return bool(np.any(np.all((A @ W) % p == 0, axis=0)))


def brute_force_minimal_oracle(cx: Complex, field: FieldSpec) -> bool:
    """Minimality straight from the definition: balanceable, and no proper subset is."""
    m = len(cx.simplices)
    if m > ORACLE_MAX_SIMPLICES:
        raise BudgetExceeded(f"oracle limited to {ORACLE_MAX_SIMPLICES} simplices, got {m}")
    if not _subset_balanceable_oracle(cx, tuple(range(m)), field):
        return False
    for size in range(1, m):
        for cols in combinations(range(m), size):
            if _subset_balanceable_oracle(cx, cols, field):
                return False
    return True


def verify_witness(verdict: BalanceVerdict) -> bool:
    if verdict.witness is None:
        return not verdict.balanceable
    return all(x != 0 for x in verdict.witness) and is_balanced(verdict.weighted())
