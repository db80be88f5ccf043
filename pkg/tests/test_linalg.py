from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arcweb.linalg import Echelon, Field, coordinates, kernel, parse_field, rank, set_default_field

import _oracles as O

matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=6))


def sparse(row):
    return {i: x for i, x in enumerate(row) if x}


@settings(max_examples=200)
@given(matrices)
def test_rank_matches_dense_elimination(rows):
    assert rank([sparse(r) for r in rows]) == O.rank_fraction(rows)


@settings(max_examples=200)
@given(matrices)
def test_kernel_vectors_are_relations(rows):
    ker = kernel([sparse(r) for r in rows])
    assert len(ker) == len(rows) - O.rank_fraction(rows)
    for v in ker:
        combo = [sum(Fraction(c) * rows[i][j] for i, c in v.items()) for j in range(len(rows[0]))]
        assert all(x == 0 for x in combo)


@given(matrices)
def test_coordinates_recover_combinations(rows):
    ech = Echelon()
    basis = [sparse(r) for r in rows if ech.add(sparse(r))]
    if not basis:
        return
    coords = coordinates(basis)
    target = {}
    for n, b in enumerate(basis):
        for k, x in b.items():
            target[k] = target.get(k, 0) + (n + 1) * x
    target = {k: x for k, x in target.items() if x}
    assert coords(target) == {n: n + 1 for n in range(len(basis))}


def test_prime_field():
    f = Field(3)
    assert rank([{0: 1, 1: 1}, {0: 2, 1: 2}, {0: 1, 1: 2}], f) == 2
    assert rank([{0: 3}], f) == 0
    assert f.coerce(Fraction(1, 2)) == 2


def test_field_selection():
    assert parse_field("q").p is None
    assert parse_field("p5").p == 5
    with pytest.raises(ValueError):
        parse_field("p4")
    try:
        assert set_default_field("p7").p == 7
    finally:
        set_default_field(None)


def test_contains():
    ech = Echelon()
    ech.add({0: 1, 2: 1})
    assert ech.contains({0: 2, 2: 2}) and not ech.contains({2: 1})
