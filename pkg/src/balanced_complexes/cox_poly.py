"""Laurent polynomials in u_i = y_i/z_i, the translation action, and the Cox ring.

A :class:`LaurentElement` is a homogeneous polynomial in ``u_1..u_{n-1}``;
its monomials are sorted multisets of labels, exactly the simplices of the
matching weighted complex.  The additive group acts by ``u_i -> u_i + s``.

A :class:`CoxElement` lives in ``k[y_1..y_{n-1}, x_I]`` (1 <= |I| <= n-4),
graded by ``[x_I] = E_I`` and ``[y_i] = H - sum_{I not containing i} E_I``.
Clearing denominators of ``u_sigma = y_sigma / prod_i z_i^{mult_i}`` with
``z_i = prod_{I containing i} x_I`` turns invariant Laurent elements into
Cox-ring elements; :func:`cox_is_invariant` checks the corresponding action
``y_i -> y_i + s z_i`` directly on the (y, x) side.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

from .complex_core import Complex, Simplex, WeightedComplex
from .exact_arith import QQ, FieldSpec, Raw, Scalar
from .picard import DivisorClass, class_add, format_index_set, index_sets, parse_index_set

Monomial = tuple[int, ...]  # sorted multiset of labels


class CoxError(ValueError):
    pass


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b))


def _accumulate(field: FieldSpec, terms: dict, key, value: Raw) -> None:
    v = field.add(terms.get(key, field.zero()), value)
    if v == 0:
        terms.pop(key, None)
    else:
        terms[key] = v


@dataclass(frozen=True)
class LaurentElement:
    """Homogeneous polynomial of degree ``degree`` in u_1..u_{n-1}; zero has no terms."""

    n: int
    degree: int
    terms: Mapping[Monomial, Raw]
    field: FieldSpec = QQ

    def __init__(self, n: int, terms: Mapping, field: FieldSpec = QQ, degree: int | None = None):
        clean: dict[Monomial, Raw] = {}
        for mono, coeff in terms.items():
            mono = mono.entries if isinstance(mono, Simplex) else tuple(sorted(mono))
            if mono and (mono[0] < 1 or mono[-1] > n - 1):
                raise CoxError(f"variable index outside [1, {n - 1}] in {mono}")
            if isinstance(coeff, Scalar):
                coeff = coeff.value
            _accumulate(field, clean, mono, field.coerce(coeff))
        degrees = {len(m) for m in clean}
        if len(degrees) > 1:
            raise CoxError(f"not homogeneous: degrees {sorted(degrees)}")
        if degrees:
            d = degrees.pop()
            if degree is not None and degree != d:
                raise CoxError(f"declared degree {degree} but terms have degree {d}")
            degree = d
        elif degree is None:
            degree = 0
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "field", field)

    @classmethod
    def variable(cls, i: int, n: int, field: FieldSpec = QQ) -> "LaurentElement":
        return cls(n, {(i,): 1}, field)

    @classmethod
    def difference(cls, i: int, j: int, n: int, field: FieldSpec = QQ) -> "LaurentElement":
        """u_i - u_j."""
        return cls(n, {(i,): 1, (j,): -1}, field)

    @classmethod
    def constant(cls, c: int, n: int, field: FieldSpec = QQ) -> "LaurentElement":
        return cls(n, {(): c}, field)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "LaurentElement") -> None:
        if self.n != other.n or self.field != other.field:
            raise CoxError("Laurent elements over different n or fields")

    def __add__(self, other: "LaurentElement") -> "LaurentElement":
        self._check(other)
        if self.terms and other.terms and self.degree != other.degree:
            raise CoxError("sum of elements of different degree")
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(self.field, out, m, c)
        deg = self.degree if self.terms else other.degree
        return LaurentElement(self.n, out, self.field, None if out else deg)

    def __neg__(self) -> "LaurentElement":
        f = self.field
        return LaurentElement(self.n, {m: f.neg(c) for m, c in self.terms.items()}, f, self.degree)

    def __sub__(self, other: "LaurentElement") -> "LaurentElement":
        return self + (-other)

    def __mul__(self, other: "LaurentElement | int | Scalar") -> "LaurentElement":
        f = self.field
        if isinstance(other, (int, Scalar)):
            r = other.value if isinstance(other, Scalar) else f.lift(other)
            return LaurentElement(self.n, {m: f.mul(r, c) for m, c in self.terms.items()}, f, self.degree)
        self._check(other)
        out: dict[Monomial, Raw] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                _accumulate(f, out, _mono_mul(m1, m2), f.mul(c1, c2))
        return LaurentElement(self.n, out, f, self.degree + other.degree)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return (self.n, self.degree, self.field, dict(self.terms)) == (
            other.n, other.degree, other.field, dict(other.terms))

    def __hash__(self) -> int:
        return hash((self.n, self.degree, self.field, frozenset(self.terms.items())))

    def to_weighted_complex(self) -> WeightedComplex:
        """Inverse of :func:`laurent_of`."""
        if not self.terms:
            raise CoxError("the zero polynomial has no complex")
        if self.degree == 0:
            raise CoxError("constants do not correspond to complexes")
        cx = Complex(self.n, self.terms.keys())
        return WeightedComplex(cx, {Simplex(m): c for m, c in self.terms.items()}, self.field)

    def __str__(self) -> str:
        return format_polynomial(self.terms, self.field, _render_u)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "char": self.field.characteristic,
            "degree": self.degree,
            "terms": [{"coeff": self.field.format(self.terms[m]), "u": list(m)}
                      for m in sorted(self.terms)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentElement":
        field = FieldSpec(int(data.get("char", 0)))
        terms: dict[Monomial, Raw] = {}
        for t in data["terms"]:
            _accumulate(field, terms, tuple(sorted(t["u"])), field.parse(str(t["coeff"])))
        return cls(int(data["n"]), terms, field, data.get("degree"))


def _render_u(m: Monomial) -> str:
    return "*".join(f"u{i}" + (f"^{m.count(i)}" if m.count(i) > 1 else "") for i in sorted(set(m)))


def format_polynomial(terms: Mapping, field: FieldSpec, render) -> str:
    if not terms:
        return "0"
    pieces = []
    for key in sorted(terms):
        c = field.format(terms[key])
        body = render(key)
        neg = c.startswith("-")
        mag = c[1:] if neg else c
        if body:
            text = body if mag == "1" else f"{mag}*{body}"
        else:
            text = mag
        pieces.append(("- " if neg else "+ ") + text)
    out = " ".join(pieces)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def laurent_of(wc: WeightedComplex) -> LaurentElement:
    """Sum of w_sigma * u_sigma over the simplices."""
    return LaurentElement(wc.n, dict(zip((s.entries for s in wc.complex.simplices), wc.weights)), wc.field)


def ga_expand(f: LaurentElement) -> list[LaurentElement]:
    """Coefficients of s^0 .. s^degree in f(u_1 + s, ..., u_{n-1} + s).

    Each monomial is expanded factor by factor, so this does not rely on
    any closed-form binomial identity.
    """
    fld = f.field
    # key: (u-monomial, power of s)
    acc: dict[tuple[Monomial, int], Raw] = {}
    for mono, coeff in f.terms.items():
        partial: dict[tuple[Monomial, int], Raw] = {((), 0): coeff}
        for i in mono:
            nxt: dict[tuple[Monomial, int], Raw] = {}
            for (m, k), c in partial.items():
                _accumulate(fld, nxt, (_mono_mul(m, (i,)), k), c)
                _accumulate(fld, nxt, (m, k + 1), c)
            partial = nxt
        for key, c in partial.items():
            _accumulate(fld, acc, key, c)
    by_power: list[dict[Monomial, Raw]] = [dict() for _ in range(f.degree + 1)]
    for (m, k), c in acc.items():
        by_power[k][m] = c
    return [LaurentElement(f.n, t, fld, f.degree - k) for k, t in enumerate(by_power)]


def is_invariant(f: LaurentElement) -> bool:
    return all(piece.is_zero() for piece in ga_expand(f)[1:])


# -- Cox ring of the toric model ---------------------------------------------

XPart = tuple[tuple[tuple[int, ...], int], ...]  # sorted ((I as tuple), exponent)


@dataclass(frozen=True, order=True)
class CoxMonomial:
    y: Monomial
    x: XPart = ()

    @classmethod
    def build(cls, y: Iterable[int], x: Mapping | None = None) -> "CoxMonomial":
        xs: dict[tuple[int, ...], int] = defaultdict(int)
        for I, k in (x or {}).items():
            I = tuple(sorted(parse_index_set(I) if isinstance(I, str) else I))
            if k < 0:
                raise CoxError("negative exponent in a Cox monomial")
            if k:
                xs[I] += k
        return cls(tuple(sorted(y)), tuple(sorted(xs.items())))

    def x_exponent(self, I: Iterable[int]) -> int:
        I = tuple(sorted(I))
        return dict(self.x).get(I, 0)

    def __mul__(self, other: "CoxMonomial") -> "CoxMonomial":
        xs = dict(self.x)
        for I, k in other.x:
            xs[I] = xs.get(I, 0) + k
        return CoxMonomial(_mono_mul(self.y, other.y), tuple(sorted(xs.items())))

    def __str__(self) -> str:
        parts = []
        for i in sorted(set(self.y)):
            k = self.y.count(i)
            parts.append(f"y{i}" + (f"^{k}" if k > 1 else ""))
        for I, k in self.x:
            parts.append(f"x{{{format_index_set(I)}}}" + (f"^{k}" if k > 1 else ""))
        return "*".join(parts)


def monomial_class(m: CoxMonomial, n: int) -> DivisorClass:
    """Degree of a monomial: [x_I] = E_I, [y_i] = H - sum_{I not containing i} E_I."""
    e: dict[frozenset[int], int] = defaultdict(int)
    for I, k in m.x:
        e[frozenset(I)] += k
    if m.y:
        for I in index_sets(n):
            missing = sum(1 for i in m.y if i not in I)
            if missing:
                e[I] -= missing
    return DivisorClass(n, len(m.y), e)


@dataclass(frozen=True)
class CoxElement:
    n: int
    terms: Mapping[CoxMonomial, Raw]
    pic_class: DivisorClass
    field: FieldSpec = QQ
    invariant: bool = True

    def __init__(self, n: int, terms: Mapping, field: FieldSpec = QQ,
                 pic_class: DivisorClass | None = None, invariant: bool = True):
        clean: dict[CoxMonomial, Raw] = {}
        for m, c in terms.items():
            if isinstance(c, Scalar):
                c = c.value
            _accumulate(field, clean, m, field.coerce(c))
        classes = {monomial_class(m, n) for m in clean}
        if len(classes) > 1:
            raise CoxError("terms of a Cox element must share one Picard degree")
        if classes:
            cls_ = classes.pop()
            if pic_class is not None and pic_class != cls_:
                raise CoxError("declared class does not match the monomials")
            pic_class = cls_
        elif pic_class is None:
            raise CoxError("the zero element needs an explicit class")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "pic_class", pic_class)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "invariant", bool(invariant))

    @classmethod
    def one(cls, n: int, field: FieldSpec = QQ) -> "CoxElement":
        return cls(n, {CoxMonomial(()): 1}, field)

    def __mul__(self, other: "CoxElement") -> "CoxElement":
        return cox_multiply(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoxElement):
            return NotImplemented
        return (self.n, self.field, dict(self.terms), self.pic_class) == (
            other.n, other.field, dict(other.terms), other.pic_class)

    def __hash__(self) -> int:
        return hash((self.n, self.field, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return format_polynomial(self.terms, self.field, str)

    def min_x_exponent(self, I: Iterable[int]) -> int:
        return min(m.x_exponent(I) for m in self.terms)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "char": self.field.characteristic,
            "invariant": self.invariant,
            "class": self.pic_class.to_json(),
            "terms": [
                {
                    "coeff": self.field.format(self.terms[m]),
                    "y": list(m.y),
                    "x": {format_index_set(I): k for I, k in m.x},
                }
                for m in sorted(self.terms)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CoxElement":
        field = FieldSpec(int(data.get("char", 0)))
        n = int(data["n"])
        terms = {CoxMonomial.build(t["y"], t.get("x", {})): field.parse(t["coeff"]) for t in data["terms"]}
        pic = DivisorClass.from_json(data["class"]) if "class" in data else None
        return cls(n, terms, field, pic, bool(data.get("invariant", True)))


def clear_denominators(f: LaurentElement) -> CoxElement:
    """Multiply by prod_I x_I^{m_I}, m_I = max over terms of sum_{i in I} mult_i.

    Non-invariant input is still converted; the result carries
    ``invariant=False``.
    """
    if f.is_zero():
        raise CoxError("cannot clear denominators of zero")
    n = f.n
    monos = list(f.terms)
    terms: dict[CoxMonomial, Raw] = {}
    overlaps = {}
    for I in index_sets(n):
        counts = [sum(1 for i in m if i in I) for m in monos]
        overlaps[I] = (max(counts), counts)
    for idx, m in enumerate(monos):
        xs = {I: top - counts[idx] for I, (top, counts) in overlaps.items() if top - counts[idx]}
        terms[CoxMonomial.build(m, xs)] = f.terms[m]
    return CoxElement(n, terms, f.field, invariant=is_invariant(f))


def cox_multiply(g1: CoxElement, g2: CoxElement) -> CoxElement:
    if g1.n != g2.n or g1.field != g2.field:
        raise CoxError("product of Cox elements over different n or fields")
    f = g1.field
    out: dict[CoxMonomial, Raw] = {}
    for m1, c1 in g1.terms.items():
        for m2, c2 in g2.terms.items():
            _accumulate(f, out, m1 * m2, f.mul(c1, c2))
    return CoxElement(g1.n, out, f, class_add(g1.pic_class, g2.pic_class),
                      g1.invariant and g2.invariant)


def cox_is_invariant(g: CoxElement) -> bool:
    """Invariance under y_i -> y_i + s * prod_{I containing i} x_I, expanded in (y, x, s)."""
    n, fld = g.n, g.field
    z = {i: CoxMonomial.build((), {I: 1 for I in index_sets(n) if i in I}) for i in range(1, n)}
    positive: dict[tuple[CoxMonomial, int], Raw] = {}
    for mono, coeff in g.terms.items():
        base = CoxMonomial((), mono.x)
        partial: dict[tuple[CoxMonomial, int], Raw] = {(base, 0): coeff}
        for i in mono.y:
            nxt: dict[tuple[CoxMonomial, int], Raw] = {}
            for (m, k), c in partial.items():
                _accumulate(fld, nxt, (m * CoxMonomial((i,)), k), c)
                _accumulate(fld, nxt, (m * z[i], k + 1), c)
            partial = nxt
        for (m, k), c in partial.items():
            if k:
                _accumulate(fld, positive, (m, k), c)
    return not positive

