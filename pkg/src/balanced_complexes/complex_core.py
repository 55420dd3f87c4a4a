"""Multiset simplices, pure complexes, weightings and the balancing condition."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product as _cartesian
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

from .exact_arith import QQ, FieldSpec, Raw, Scalar


class ComplexError(ValueError):
    """Invalid complex, weighting or operation precondition."""


@dataclass(frozen=True, order=True)
class Simplex:
    """A multiset of positive vertex labels, stored sorted."""

    entries: tuple[int, ...]

    def __init__(self, entries: Iterable[int]):
        ents = tuple(sorted(int(v) for v in entries))
        if not ents:
            raise ComplexError("a simplex needs at least one entry")
        if ents[0] < 1:
            raise ComplexError(f"vertex labels must be positive: {ents}")
        object.__setattr__(self, "entries", ents)

    @property
    def cardinality(self) -> int:
        return len(self.entries)

    @property
    def dimension(self) -> int:
        return len(self.entries) - 1

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.entries))

    def mult(self, i: int) -> int:
        return self.entries.count(i)

    def support(self) -> frozenset[int]:
        return frozenset(self.entries)

    def is_singular(self) -> bool:
        return len(set(self.entries)) < len(self.entries)

    def union(self, other: "Simplex") -> "Simplex":
        """Multiset union in the sense of the product of complexes (sum of multiplicities)."""
        return Simplex(self.entries + other.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.entries)) + "}"


def _as_multiset(S: Iterable[int]) -> tuple[int, ...]:
    if isinstance(S, Simplex):
        return S.entries
    return tuple(sorted(S))


def embedding_multiplicity(S: Iterable[int], sigma: Simplex) -> int:
    """Number of ways the multiset ``S`` sits inside ``sigma``.

    This is prod_i binom(mult_i(sigma), mult_i(S)), zero when ``S`` is not
    a sub-multiset.  A loop {i,i} therefore contains {i} twice.
    """
    s_counts = Counter(_as_multiset(S))
    out = 1
    for i, k in s_counts.items():
        m = sigma.entries.count(i)
        if m < k:
            return 0
        out *= comb(m, k)
    return out


def sub_multisets(sigma: Simplex, size: int) -> set[tuple[int, ...]]:
    """Distinct sub-multisets of ``sigma`` with the given cardinality."""
    counts = sorted(Counter(sigma.entries).items())
    out: set[tuple[int, ...]] = set()
    for choice in _cartesian(*(range(m + 1) for _, m in counts)):
        if sum(choice) == size:
            face: list[int] = []
            for (v, _), k in zip(counts, choice):
                face.extend([v] * k)
            out.add(tuple(face))
    return out


@dataclass(frozen=True)
class Complex:
    """A nonempty set of simplices of one cardinality on labels ``1..n-1``."""

    n: int
    simplices: tuple[Simplex, ...]

    def __init__(self, n: int, simplices: Iterable[Iterable[int] | Simplex]):
        simps = sorted({s if isinstance(s, Simplex) else Simplex(s) for s in simplices})
        if not simps:
            raise ComplexError("empty complexes are not allowed")
        cards = {s.cardinality for s in simps}
        if len(cards) != 1:
            raise ComplexError(f"simplices of mixed cardinality {sorted(cards)}")
        top = max(s.entries[-1] for s in simps)
        if top > n - 1:
            raise ComplexError(f"label {top} outside [1, {n - 1}]")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "simplices", tuple(simps))

    @property
    def cardinality(self) -> int:
        return self.simplices[0].cardinality

    @property
    def dimension(self) -> int:
        return self.cardinality - 1

    def support(self) -> frozenset[int]:
        out: set[int] = set()
        for s in self.simplices:
            out.update(s.entries)
        return frozenset(out)

    def is_singular(self) -> bool:
        return any(s.is_singular() for s in self.simplices)

    def faces(self) -> list[tuple[int, ...]]:
        """Every multiset face of size 0..c-1 lying in at least one simplex, sorted by (size, entries)."""
        out: set[tuple[int, ...]] = {()}
        for s in self.simplices:
            for j in range(1, self.cardinality):
                out |= sub_multisets(s, j)
        return sorted(out, key=lambda f: (len(f), f))

    def with_n(self, n: int) -> "Complex":
        return Complex(n, self.simplices)

    def subcomplex(self, indices: Iterable[int]) -> "Complex":
        return Complex(self.n, [self.simplices[i] for i in indices])

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.simplices)

    def __contains__(self, s: object) -> bool:
        if not isinstance(s, Simplex):
            s = Simplex(s)  # type: ignore[arg-type]
        return s in self.simplices

    # -- JSON -------------------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.n, "simplices": [list(s.entries) for s in self.simplices]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Complex":
        return cls(int(data["n"]), data["simplices"])


@dataclass(frozen=True)
class WeightedComplex:
    """A complex with one nonzero field weight per simplex (in simplex order)."""

    complex: Complex
    weights: tuple[Raw, ...]
    field: FieldSpec = QQ

    def __init__(
        self,
        complex: Complex,
        weights: Sequence[Raw | Scalar | str | int] | Mapping,
        field: FieldSpec = QQ,
    ):
        if isinstance(weights, Mapping):
            # simplex (or tuple of labels) -> weight
            by_simplex = {(k if isinstance(k, Simplex) else Simplex(k)): v for k, v in weights.items()}
            if set(by_simplex) != set(complex.simplices):
                raise ComplexError("weight keys must be exactly the simplices of the complex")
            weights = [by_simplex[s] for s in complex.simplices]
        if len(weights) != len(complex.simplices):
            raise ComplexError(f"{len(weights)} weights for {len(complex.simplices)} simplices")
        raw = []
        for w in weights:
            if isinstance(w, Scalar):
                if w.field != field:
                    raise ComplexError(f"weight in {w.field}, complex weighted over {field}")
                w = w.value
            r = field.coerce(w)
            if r == 0:
                raise ComplexError("weights must be nonzero")
            raw.append(r)
        object.__setattr__(self, "complex", complex)
        object.__setattr__(self, "weights", tuple(raw))
        object.__setattr__(self, "field", field)

    @property
    def n(self) -> int:
        return self.complex.n

    def weight_of(self, s: Simplex | Iterable[int]) -> Scalar:
        if not isinstance(s, Simplex):
            s = Simplex(s)
        return Scalar(self.weights[self.complex.simplices.index(s)], self.field)

    def items(self) -> Iterator[tuple[Simplex, Scalar]]:
        for s, w in zip(self.complex.simplices, self.weights):
            yield s, Scalar(w, self.field)

    def scaled(self, r: Raw | Scalar | int) -> "WeightedComplex":
        r = r.value if isinstance(r, Scalar) else self.field.coerce(r)
        return WeightedComplex(self.complex, [self.field.mul(r, w) for w in self.weights], self.field)

    def to_json(self) -> dict:
        out = self.complex.to_json()
        out["weights"] = [self.field.format(w) for w in self.weights]
        out["char"] = self.field.characteristic
        return out

    @classmethod
    def from_json(cls, data: Mapping, field: FieldSpec | None = None) -> "WeightedComplex":
        if field is None:
            field = FieldSpec(int(data.get("char", 0)))
        cx = Complex(int(data["n"]), data["simplices"])
        # weights run parallel to the *input* simplex order, which may not be canonical
        pairs = {Simplex(s): w for s, w in zip(data["simplices"], data["weights"])}
        if len(pairs) != len(data["weights"]):
            raise ComplexError("duplicate simplices in weighted complex")
        return cls(cx, pairs, field)


def balancing_sum(wc: WeightedComplex, S: Iterable[int]) -> Scalar:
    """Sum over simplices of embedding_multiplicity(S, sigma) * w_sigma."""
    f = wc.field
    S = _as_multiset(S)
    if len(S) > wc.complex.cardinality - 1:
        raise ComplexError(f"face of size {len(S)} exceeds c - 1 = {wc.complex.cardinality - 1}")
    total = f.zero()
    for s, w in zip(wc.complex.simplices, wc.weights):
        k = embedding_multiplicity(S, s)
        if k:
            total = f.add(total, f.mul(f.lift(k), w))
    return Scalar(total, f)


def is_balanced(wc: WeightedComplex) -> bool:
    """True when every balancing sum over faces of size 0..c-1 vanishes."""
    return all(balancing_sum(wc, S).is_zero() for S in wc.complex.faces())


def is_balanced_in_degree(wc: WeightedComplex, j: int) -> bool:
    return all(balancing_sum(wc, S).is_zero() for S in wc.complex.faces() if len(S) == j)


def product(d1: Complex, d2: Complex) -> Complex:
    """All multiset unions sigma1 + sigma2, deduplicated."""
    if d1.n != d2.n:
        raise ComplexError(f"product of complexes on different n ({d1.n} vs {d2.n})")
    return Complex(d1.n, {a.union(b) for a in d1.simplices for b in d2.simplices})


@dataclass(frozen=True)
class Restriction:
    weighted: WeightedComplex
    relabeling: dict[int, int] = field(hash=False)


def restrict_to_support(wc: WeightedComplex) -> Restriction:
    """Relabel a balanced complex onto ``1..|Supp|`` in order, with ``n = |Supp| + 1``."""
    if not is_balanced(wc):
        raise ComplexError("restriction to the support is only defined for balanced complexes")
    supp = sorted(wc.complex.support())
    relabel = {old: new for new, old in enumerate(supp, start=1)}
    simps = [Simplex(relabel[v] for v in s) for s in wc.complex.simplices]
    cx = Complex(len(supp) + 1, simps)
    pairs = dict(zip(simps, wc.weights))
    return Restriction(WeightedComplex(cx, pairs, wc.field), relabel)
