from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from balanced_complexes.complex_core import Complex, ComplexError
from balanced_complexes.fixtures import (
    curve_f7,
    curve_f9,
    k4,
    octagon,
    square,
    two_triangles_disjoint,
    two_triangles_shared_vertex,
)
from balanced_complexes.picard import (
    CurveClass,
    DivisorClass,
    PicardError,
    boundary_binomial_class,
    divisor_class_of,
    index_sets,
    is_effective_sum_of_exceptionals,
    pair,
    parse_index_set,
    repeated_label,
    unique_complex_for_class,
)
from oracles import class_coefficients_by_definition, random_nonsingular_complex
from strategies import complexes


def E(*labels_list):
    return {",".join(map(str, sorted(I))): -1 for I in labels_list}


def test_octagon_class():
    d = divisor_class_of(octagon())
    assert d.h == 2
    adjacent = [{i, i % 8 + 1} for i in range(1, 9)]
    for I in index_sets(9):
        expected = 0 if any(a <= I for a in adjacent) else -1
        assert d.coefficient(I) == expected


def test_square_class():
    assert divisor_class_of(square()) == DivisorClass(5, 2, E((1,), (2,), (3,), (4,)))


def test_two_triangles_at_a_vertex_class():
    expected = DivisorClass(6, 2, E((1,), (2,), (3,), (4,), (5,), (2, 3), (2, 5), (3, 4), (4, 5)))
    assert divisor_class_of(two_triangles_shared_vertex()) == expected


def test_class_rejects_small_n_and_stray_labels():
    with pytest.raises(PicardError):
        divisor_class_of(Complex(4, [(1, 2)]))
    with pytest.raises(ComplexError):
        divisor_class_of(octagon(), n=8)


@pytest.mark.parametrize(
    "i, j, n, expected",
    [(1, 2, 5, E((3,), (4,))), (1, 2, 6, E((3,), (4,), (5,), (3, 4), (3, 5), (4, 5)))],
)
def test_boundary_binomial_class(i, j, n, expected):
    assert boundary_binomial_class(i, j, n) == DivisorClass(n, 1, expected)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_boundary_binomial_matches_zero_complex(n):
    for i, j in combinations(range(1, n), 2):
        assert boundary_binomial_class(i, j, n) == divisor_class_of(Complex(n, [(i,), (j,)]))


def test_boundary_binomial_errors():
    with pytest.raises(PicardError):
        boundary_binomial_class(1, 1, 6)
    with pytest.raises(PicardError):
        boundary_binomial_class(1, 6, 6)


def test_intersection_numbers():
    assert pair(curve_f9(), divisor_class_of(octagon())) == -1
    assert pair(curve_f7(), divisor_class_of(two_triangles_disjoint())) == -1
    assert pair(curve_f9(), DivisorClass.zero(9)) == 0
    with pytest.raises(PicardError):
        pair(curve_f7(), divisor_class_of(octagon()))


def test_class_arithmetic():
    d = divisor_class_of(two_triangles_disjoint())
    assert d + DivisorClass.zero(7) == d
    assert (2 * d).h == 4 and all(v == 2 * d.e[I] for I, v in (2 * d).e.items())
    assert d - d == DivisorClass.zero(7)
    with pytest.raises(PicardError):
        d + DivisorClass.zero(8)


def test_effective_sums_of_exceptionals():
    assert is_effective_sum_of_exceptionals(DivisorClass.exceptional(6, (1, 2)))
    assert not is_effective_sum_of_exceptionals(DivisorClass.hyperplane(6))
    diff = divisor_class_of(k4()) - divisor_class_of(square())
    assert diff == DivisorClass.zero(5) and is_effective_sum_of_exceptionals(diff)
    assert not is_effective_sum_of_exceptionals(-DivisorClass.exceptional(6, (1,)))


def test_unique_complex_examples():
    assert unique_complex_for_class(divisor_class_of(octagon()), 2) == octagon()
    with pytest.raises(PicardError):
        unique_complex_for_class(divisor_class_of(square()), 2)
    d = divisor_class_of(octagon())
    bumped = DivisorClass(9, 2, {**d.e, frozenset({1, 2}): -1})
    assert unique_complex_for_class(bumped, 2) is None


def test_index_set_validation_and_format():
    with pytest.raises(PicardError):
        DivisorClass(6, 0, {"1,2,3": 1})
    with pytest.raises(PicardError):
        DivisorClass(6, 0, {"6": 1})
    assert parse_index_set("3,1,2") == frozenset({1, 2, 3})
    d = divisor_class_of(square())
    assert str(d) == "2H - E_{1} - E_{2} - E_{3} - E_{4}"
    assert DivisorClass.from_json(d.to_json()) == d
    assert CurveClass.from_json(curve_f9().to_json()) == curve_f9()


@given(complexes(cardinalities=(1, 2, 3)))
def test_class_matches_formula_and_range(cx):
    n = 6
    d = divisor_class_of(cx)
    assert d.h == cx.cardinality
    for I, v in class_coefficients_by_definition(cx, n).items():
        assert d.coefficient(I) == v
        assert -cx.cardinality <= v <= 0


@given(complexes(max_simplices=6), st.data())
def test_subcomplex_difference_is_exceptional(cx, data):
    keep = data.draw(st.lists(st.integers(0, len(cx) - 1), min_size=1, unique=True))
    sub = cx.subcomplex(keep)
    assert is_effective_sum_of_exceptionals(divisor_class_of(cx) - divisor_class_of(sub))


@given(complexes(), complexes(), st.data())
def test_pairing_is_bilinear(a, b, data):
    n = 6
    vals = data.draw(st.lists(st.integers(-3, 3), min_size=10, max_size=10))
    curve = CurveClass(n, vals[0], {I: v for I, v in zip(index_sets(n), vals[1:])})
    d1, d2 = divisor_class_of(a), divisor_class_of(b)
    assert pair(curve, d1 + d2) == pair(curve, d1) + pair(curve, d2)
    assert pair(curve, 3 * d1) == 3 * pair(curve, d1)


def test_round_trip_on_random_nonsingular_complexes():
    rng = random.Random(20240601)
    for _ in range(100):
        cx = random_nonsingular_complex(rng)
        assert unique_complex_for_class(divisor_class_of(cx), cx.cardinality) == cx


@given(complexes(cardinalities=(2, 3), singular=False), complexes(cardinalities=(2, 3)))
def test_singular_class_is_never_reached_from_nonsingular(a, b):
    if a.cardinality != b.cardinality or not b.is_singular():
        return
    i = repeated_label(b)
    diff = divisor_class_of(a) - divisor_class_of(b)
    assert diff.coefficient({i}) < 0
    assert not is_effective_sum_of_exceptionals(diff)
