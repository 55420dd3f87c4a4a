from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from balanced_complexes.balance_solver import BudgetExceeded
from balanced_complexes.fixtures import hypertree_6, hypertree_7
from balanced_complexes.hypertree import (
    OUTSIDE,
    Hypertree,
    HypertreeError,
    check_axioms,
    enumerate_hypertrees,
    hypertree_degree,
    min_degree,
)
from oracles import hypertree_classes_brute


def test_axiom_examples():
    assert check_axioms(hypertree_6()).ok
    single = check_axioms(Hypertree(3, [[1, 2, 3]]))
    assert not single.ok and single.first_violation == 2
    disjoint = check_axioms(Hypertree(6, [[1, 2, 3], [4, 5, 6]]))
    assert not disjoint.ok and 4 in disjoint.violated
    small = check_axioms(Hypertree(4, [[1, 2], [2, 3, 4]]))
    assert small.first_violation == 1


def test_convexity_violation():
    # two parts sharing two vertices inside a larger collection
    gamma = Hypertree(6, [[1, 2, 3], [1, 2, 4], [3, 5, 6], [4, 5, 6]])
    assert 3 in check_axioms(gamma).violated


def test_degrees():
    h6 = hypertree_6()
    assert all(hypertree_degree(h6, v) == 2 for v in range(1, 7))
    assert hypertree_degree(h6, OUTSIDE) == 3
    h7 = hypertree_7()
    center = max(range(1, 8), key=h7.valence)
    assert hypertree_degree(h7, center) == 2
    assert all(hypertree_degree(h7, v) == 3 for v in range(1, 8) if v != center)
    with pytest.raises(HypertreeError):
        hypertree_degree(Hypertree(6, [[1, 2, 3], [4, 5, 6]]), 1)


@pytest.mark.parametrize("n, expected", [(5, 0), (6, 1), (7, 1)])
def test_enumeration_counts(n, expected):
    assert len(enumerate_hypertrees(n)) == expected


def test_enumeration_matches_brute_force():
    for n in (5, 6, 7):
        found = {g.canonical_form() for g in enumerate_hypertrees(n)}
        assert found == hypertree_classes_brute(n)


def test_enumeration_with_part_size_limit():
    assert [g.to_json() for g in enumerate_hypertrees(6, max_part_size=3)] == [hypertree_6().to_json()]
    assert len(enumerate_hypertrees(7, max_part_size=4)) == 1


def test_enumeration_fixtures_agree():
    assert enumerate_hypertrees(6)[0].canonical_form() == hypertree_6().canonical_form()
    assert enumerate_hypertrees(7)[0].canonical_form() == hypertree_7().canonical_form()


def test_budget(monkeypatch):
    with pytest.raises(BudgetExceeded):
        enumerate_hypertrees(9)
    with pytest.raises(BudgetExceeded):
        enumerate_hypertrees(8, budget=100)


def test_eight_vertices_have_degree_at_least_three():
    found = enumerate_hypertrees(8)
    assert found
    for g in found:
        assert check_axioms(g).ok
        assert min_degree(g) >= 3
        for a in g.parts:
            for b in g.parts:
                if a != b:
                    assert len(a & b) <= 1


def test_parallel_enumeration_is_deterministic():
    assert enumerate_hypertrees(7, jobs=2) == enumerate_hypertrees(7)


@given(st.sampled_from([6, 7]), st.permutations(range(1, 8)))
def test_relabeled_hypertrees_keep_axioms_and_degrees(n, perm):
    base = hypertree_6() if n == 6 else hypertree_7()
    perm = [p for p in perm if p <= n]
    moved = Hypertree(n, [[perm[v - 1] for v in part] for part in base.parts])
    assert check_axioms(moved).ok
    assert moved.canonical_form() == base.canonical_form()
    assert min_degree(moved) == 2


def test_json_round_trip():
    h = hypertree_7()
    assert Hypertree.from_json(h.to_json()) == h
