from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from balanced_complexes.complex_core import (
    Complex,
    ComplexError,
    Simplex,
    WeightedComplex,
    balancing_sum,
    embedding_multiplicity,
    is_balanced,
    is_balanced_in_degree,
    product,
    restrict_to_support,
    sub_multisets,
)
from balanced_complexes.exact_arith import QQ, FieldSpec, Scalar, lift_integer
from balanced_complexes.fixtures import alternating_octagon, octagon, square
from oracles import balanced_by_definition
from strategies import complexes, fields, weighted_complexes

F2 = FieldSpec(2)
TRIANGLE = Complex(4, [(1, 2), (2, 3), (1, 3)])


@pytest.mark.parametrize(
    "S, sigma, expected",
    [((1,), (1, 1), 2), ((1,), (1, 2), 1), ((1, 1), (1, 1, 2), 1), ((1, 2), (1, 1, 2), 2),
     ((3,), (1, 2), 0), ((), (1, 1, 2), 1), ((1, 1, 1), (1, 1), 0)],
)
def test_embedding_multiplicity(S, sigma, expected):
    assert embedding_multiplicity(S, Simplex(sigma)) == expected


def test_simplex_basics():
    s = Simplex((3, 1, 1))
    assert s.entries == (1, 1, 3)
    assert s.cardinality == 3 and s.dimension == 2
    assert s.multiplicities() == {1: 2, 3: 1}
    assert s.is_singular() and not Simplex((1, 2)).is_singular()
    assert s.support() == frozenset({1, 3})
    assert sub_multisets(s, 2) == {(1, 1), (1, 3)}
    with pytest.raises(ComplexError):
        Simplex(())
    with pytest.raises(ComplexError):
        Simplex((0, 1))


def test_complex_validation():
    with pytest.raises(ComplexError):
        Complex(5, [])
    with pytest.raises(ComplexError):
        Complex(5, [(1, 2), (1, 2, 3)])
    with pytest.raises(ComplexError):
        Complex(5, [(1, 5)])
    assert len(Complex(5, [(1, 2), (2, 1)])) == 1


def test_weights_must_be_nonzero_and_match():
    with pytest.raises(ComplexError):
        WeightedComplex(TRIANGLE, [1, 0, 1])
    with pytest.raises(ComplexError):
        WeightedComplex(TRIANGLE, [1, 2, 2], F2)
    with pytest.raises(ComplexError):
        WeightedComplex(TRIANGLE, [1, 1])


def test_balancing_sum_examples():
    wc = alternating_octagon()
    assert balancing_sum(wc, (1,)).is_zero()
    single = WeightedComplex(Complex(5, [(1, 2)]), [7])
    assert balancing_sum(single, ()) == Scalar(7, QQ)
    tri = WeightedComplex(TRIANGLE, [1, 1, 1], F2)
    assert balancing_sum(tri, (1,)).is_zero()
    assert balancing_sum(tri, ()) == Scalar(1, F2)


def test_is_balanced_examples():
    assert is_balanced(alternating_octagon())
    sq = square()
    assert is_balanced(WeightedComplex(sq, {(1, 2): 1, (2, 3): -1, (3, 4): 1, (1, 4): -1}))
    assert not is_balanced(WeightedComplex(TRIANGLE, [1, 1, 1], F2))
    loops = Complex(5, [(1, 1), (1, 2), (2, 2)])
    assert is_balanced(WeightedComplex(loops, [1, -2, 1]))  # (u1 - u2)^2
    assert not is_balanced(WeightedComplex(loops, [1, -1, 1]))


def test_product_examples():
    a = Complex(5, [(1,), (2,)])
    b = Complex(5, [(3,), (4,)])
    assert product(a, b) == Complex(5, [(1, 3), (1, 4), (2, 3), (2, 4)])
    assert len(product(a, a)) == 3
    pairs = [Complex(9, [(2 * k - 1,), (2 * k,)]) for k in range(1, 5)]
    out = pairs[0]
    for p in pairs[1:]:
        out = product(out, p)
    assert len(out) == 16 and out.cardinality == 4
    with pytest.raises(ComplexError):
        product(a, Complex(7, [(5,)]))


def test_restrict_examples():
    big = WeightedComplex(octagon().with_n(12), alternating_octagon().weights)
    r = restrict_to_support(big)
    assert r.weighted.complex == octagon()
    spread = Complex(9, [(2, 4), (4, 6), (6, 8), (2, 8)])
    r = restrict_to_support(WeightedComplex(spread, {(2, 4): 1, (4, 6): -1, (6, 8): 1, (2, 8): -1}))
    assert r.weighted.complex == square()
    assert r.relabeling == {2: 1, 4: 2, 6: 3, 8: 4}
    with pytest.raises(ComplexError):
        restrict_to_support(WeightedComplex(TRIANGLE, [1, 1, 1]))


def test_json_round_trip():
    wc = alternating_octagon()
    assert WeightedComplex.from_json(wc.to_json()) == wc
    assert Complex.from_json(octagon().to_json()) == octagon()
    # weights follow the order the simplices were given in
    doc = {"n": 5, "simplices": [[3, 4], [1, 2]], "weights": ["5", "-1/2"]}
    wc = WeightedComplex.from_json(doc)
    assert wc.weight_of((1, 2)) == Scalar.parse("-1/2")


@given(weighted_complexes())
def test_is_balanced_matches_definition(wc):
    assert is_balanced(wc) == balanced_by_definition(wc)


@given(weighted_complexes(), st.integers(1, 6))
def test_balance_is_scale_invariant(wc, r):
    p = wc.field.characteristic
    assume(not p or r % p)
    assert is_balanced(wc) == is_balanced(wc.scaled(r))


@given(complexes(singular=False), st.data())
def test_nonsingular_multiplicities_are_zero_or_one(cx, data):
    sigma = data.draw(st.sampled_from(cx.simplices))
    S = data.draw(st.lists(st.integers(1, 5), unique=True, max_size=3))
    assert embedding_multiplicity(S, sigma) in (0, 1)


@given(complexes(max_simplices=3), complexes(max_simplices=3), complexes(max_simplices=3))
def test_product_commutative_and_associative(a, b, c):
    assert product(a, b) == product(b, a)
    assert product(product(a, b), c) == product(a, product(b, c))


def _degree_rows(cx: Complex, ell: int):
    faces = sorted({S for s in cx.simplices for S in sub_multisets(s, ell)})
    return [[embedding_multiplicity(S, s) for s in cx.simplices] for S in faces]


@given(complexes(cardinalities=(2, 3), max_simplices=7), fields, st.integers(0, 10**6))
def test_degree_zero_follows_from_higher_degree(cx, f, seed):
    """If binom(c, l) is nonzero in the field, degree-l balance forces degree-0 balance."""
    c = cx.cardinality
    rng = random.Random(seed)
    p = f.characteristic
    for ell in range(1, c):
        if lift_integer(sympy.binomial(c, ell), f).is_zero():
            continue
        M = sympy.Matrix(_degree_rows(cx, ell))
        basis = M.nullspace() if p == 0 else _nullspace_mod(M, p)
        if not basis:
            continue
        v = sum((rng.randint(-3, 3) * b for b in basis), sympy.zeros(len(cx), 1))
        keep = [i for i in range(len(cx)) if (v[i] % p if p else v[i]) != 0]
        if not keep:
            continue
        sub = cx.subcomplex(keep)
        wc = WeightedComplex(sub, {cx.simplices[i]: _to_field(v[i], f) for i in keep}, f)
        assert is_balanced_in_degree(wc, ell)
        assert is_balanced_in_degree(wc, 0)


def _to_field(x, f):
    q = sympy.Rational(x)
    return f.coerce(q.p) if q.q == 1 else f.mul(f.coerce(q.p), f.inv(f.coerce(q.q)))


def _nullspace_mod(M, p):
    from balanced_complexes.balance_solver import matrix_nullspace

    rows = [[int(x) % p for x in M.row(i)] for i in range(M.rows)]
    return [sympy.Matrix(v) for v in matrix_nullspace(rows, M.cols, FieldSpec(p))]


@st.composite
def balanced_complexes(draw):
    """Random rational point of the solution space, restricted to its support."""
    from balanced_complexes.balance_solver import constraint_system

    cx = draw(complexes(max_simplices=8))
    cx = cx.with_n(10)
    shift = draw(st.integers(0, 4))
    cx = Complex(10, [[v + shift for v in s.entries] for s in cx.simplices])
    M = sympy.Matrix([[int(x) for x in row] for row in constraint_system(cx, QQ).matrix])
    basis = M.nullspace()
    assume(basis)
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(basis), max_size=len(basis)))
    v = sum((c * b for c, b in zip(coeffs, basis)), sympy.zeros(len(cx), 1))
    keep = [i for i in range(len(cx)) if v[i] != 0]
    assume(keep)
    return WeightedComplex(cx.subcomplex(keep), {cx.simplices[i]: _to_field(v[i], QQ) for i in keep})


@given(balanced_complexes())
def test_restriction_stays_balanced(wc):
    assert is_balanced(wc)
    r = restrict_to_support(wc)
    assert is_balanced(r.weighted)
    assert sorted(r.weighted.complex.support()) == list(range(1, len(wc.complex.support()) + 1))
