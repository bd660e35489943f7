"""Graded spaces, graded maps, composition, transpose and basis changes."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedgroups import (basis_change, change_basis, compose, degree_shift,
                          double_dual_iso, dual_space, graded_map,
                          identity_map, inverse_map, make_space,
                          map_from_json, map_to_json, matrix_unit,
                          space_from_json, space_to_json, transpose, zero_map)
from gradedgroups.samples import random_graded_map, sample_rng

SPACES = [
    make_space([0]),
    make_space([1, -1]),
    make_space([0, 1]),
    make_space([1, 1, 0, 0]),
    make_space([2, 0, -1]),
]


def test_space_basics():
    V = make_space([("a", 2), ("b", -1), ("c", -1)])
    assert V.dim == 3
    assert V.gdim() == {2: 1, -1: 2}
    assert V.indices_of_degree(-1) == [1, 2]
    assert dual_space(V).degrees == (-2, 1, 1)


def test_matrix_unit_composition_rule():
    V = make_space([1, -1, 0])
    for lam in range(3):
        for kap in range(3):
            for rho in range(3):
                for sig in range(3):
                    left = matrix_unit(V, lam, kap)     # t_kap -> t_lam
                    right = matrix_unit(V, rho, sig)    # t_sig -> t_rho
                    prod = compose(left, right)
                    if kap == rho:
                        assert prod == matrix_unit(V, lam, sig)
                    else:
                        assert prod.is_zero()


@given(seed=st.integers(0, 1000), idx=st.integers(0, len(SPACES) - 1),
       d1=st.integers(-2, 2), d2=st.integers(-2, 2))
@settings(max_examples=60, deadline=None)
def test_compose_is_associative_and_degree_additive(seed, idx, d1, d2):
    V = SPACES[idx]
    rng = sample_rng(seed, 0)
    A = random_graded_map(rng, V, V, d1)
    B = random_graded_map(rng, V, V, d2)
    C = random_graded_map(rng, V, V, 0)
    assert compose(A, compose(B, C)) == compose(compose(A, B), C)
    assert compose(A, B).degree == d1 + d2


@given(seed=st.integers(0, 1000), idx=st.integers(0, len(SPACES) - 1),
       d1=st.integers(-2, 2), d2=st.integers(-2, 2))
@settings(max_examples=60, deadline=None)
def test_transpose_reverses_composition_with_koszul_sign(seed, idx, d1, d2):
    V = SPACES[idx]
    rng = sample_rng(seed, 1)
    A = random_graded_map(rng, V, V, d1)
    B = random_graded_map(rng, V, V, d2)
    lhs = transpose(compose(A, B))
    rhs = compose(transpose(B), transpose(A))
    if (d1 * d2) % 2:
        rhs = -rhs
    assert lhs == rhs


def test_transpose_of_transpose_via_double_dual():
    V = make_space([1, 0, -1])
    rng = sample_rng(3, 0)
    for d in (-1, 0, 1):
        A = random_graded_map(rng, V, V, d)
        # chi o A = A** o chi, where chi is the double-dual identification
        lhs = compose(double_dual_iso(V), A)
        rhs = compose(transpose(transpose(A)), double_dual_iso(V))
        assert lhs == rhs


def test_inverse_map_round_trip():
    V = make_space([1, -1])
    A = graded_map(V, V, 0, [[Fraction(3), 0], [0, Fraction(1, 2)]])
    assert compose(A, inverse_map(A)) == identity_map(V)
    assert compose(inverse_map(A), A) == identity_map(V)


def test_degree_shift_properties():
    V = make_space([("a", 2), ("b", 0)])
    shifted, delta = degree_shift(V, 1)
    assert shifted.degrees == (1, -1)
    assert delta.degree == 1
    assert delta.domain == shifted and delta.codomain == V
    back, delta_back = degree_shift(shifted, -1)
    assert back.degrees == V.degrees


def test_zero_map_and_scaling():
    V = make_space([0, 1])
    Z = zero_map(V, V, 1)
    assert Z.is_zero()
    A = identity_map(V)
    assert (A + A).scale(Fraction(1, 2)) == A
    assert (A - A).is_zero()


def test_change_basis_round_trip():
    from gradedgroups import linalg
    V = make_space([0, 0, 1])
    B = basis_change(V, [[1, 2, 0], [0, 1, 0], [0, 0, 3]])
    new_space, fwd, bwd = change_basis(V, B)
    assert new_space.degrees == V.degrees
    assert linalg.mat_mul(fwd, bwd) == linalg.identity(V.dim)
    assert linalg.mat_mul(bwd, fwd) == linalg.identity(V.dim)


def test_basis_change_requires_degree_preservation():
    V = make_space([0, 1])
    with pytest.raises(ValueError):
        basis_change(V, [[1, 1], [0, 1]])  # mixes degrees 0 and 1


def test_degree_block_validation():
    V = make_space([0, 1])
    with pytest.raises(ValueError):
        graded_map(V, V, 0, [[1, 1], [0, 1]])  # off-degree entry


def test_json_round_trip():
    V = make_space([("a", 1), ("b", -1)])
    assert space_from_json(space_to_json(V)) == V
    A = graded_map(V, V, 2, [[0, 0], [Fraction(5, 3), 0]])
    assert map_from_json(map_to_json(A)) == A
