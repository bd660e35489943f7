"""Standard form of a graded bilinear form and the underlying-group blocks."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedgroups import (SKEW, SYMMETRIC, compose, decompose,
                          factor_underlying, form_from_pairings, identity_map,
                          linalg, make_space, multiply_factorizations,
                          reconstruct_underlying, shape, standardize,
                          underlying_group_dim)
from gradedgroups.core import GradedMap
from gradedgroups.samples import (random_form, random_orthogonal_map,
                                  sample_rng)

KINDS = (SYMMETRIC, SKEW)


def test_shape_examples(e1_space):
    sh = shape(e1_space, 0)
    assert (sh.k, sh.epsilon, sh.i_bullet, sh.ok) == (0, 0, 1, True)
    sh = shape(make_space([0, 1]), -1)
    assert (sh.k, sh.epsilon, sh.ok) == (1, 1, True)
    assert sh.r_at(1) == sh.r_at(0) == 1
    sh = shape(make_space([1, 1, -1]), 0)
    assert not sh.ok
    assert "mismatch" in sh.problem


def test_already_standard_form_returns_identity(e1_form):
    report = standardize(e1_form)
    assert report.matrix == ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    assert report.pairs == ((0, 1),)
    assert report.middle == ()


def test_rescaled_pair(e1_space):
    beta = form_from_pairings(e1_space, 0, SYMMETRIC, {(0, 1): Fraction(3)})
    report = standardize(beta)
    assert len(report.pairs) == 1
    assert report.standardized_form() == report.expected_form()
    # one valid choice keeps t and rescales the partner by 1/3
    assert report.matrix[1][1] == Fraction(1, 3)


def test_sylvester_signature_on_a_classical_metric():
    V = make_space([0, 0, 0])
    beta = form_from_pairings(V, 0, SYMMETRIC,
                              {(0, 0): 1, (1, 1): 1, (2, 2): -4})
    report = standardize(beta)
    assert report.signature == (2, 1)
    assert sorted(d for _, d in report.middle) == [Fraction(-4), 1, 1]


def test_classical_symplectic_form_is_one_pair(r2_skew):
    report = standardize(r2_skew)
    assert len(report.pairs) == 1
    assert report.middle == ()
    assert report.signature is None


@given(seed=st.integers(0, 400), ell=st.integers(-4, 4),
       kind=st.sampled_from(KINDS))
@settings(max_examples=40, deadline=None)
def test_standardize_matches_the_predicted_pattern(seed, ell, kind):
    beta = random_form(sample_rng(seed, 0), ell, kind)
    report = standardize(beta)
    assert report.standardized_form() == report.expected_form()
    n = beta.space.dim
    assert 2 * len(report.pairs) + len(report.middle) == n


def test_signature_matches_a_float_eigenvalue_oracle():
    import numpy as np
    for i in range(10):
        rng = sample_rng(55, i)
        beta = random_form(rng, 0, SYMMETRIC, 6)
        V = beta.space
        mid = V.indices_of_degree(0)
        if not mid:
            continue
        report = standardize(beta)
        raw = np.array([[float(beta.value(a, b)) for b in mid] for a in mid])
        eig = np.linalg.eigvalsh(raw)
        p = int((eig > 1e-9).sum())
        q = int((eig < -1e-9).sum())
        assert report.signature == (p, q)


def test_factor_single_gl_block(e1_form, e1_space):
    A = GradedMap(e1_space, e1_space, 0,
                  ((Fraction(5, 3), Fraction(0)), (Fraction(0), Fraction(3, 5))))
    fact = factor_underlying(e1_form, A)
    assert dict(fact.blocks)[1] == ((Fraction(5, 3),),)
    assert reconstruct_underlying(e1_form, fact) == A


def test_identity_factors_to_identity_blocks(mixed_form):
    fact = factor_underlying(mixed_form, identity_map(mixed_form.space))
    for _, block in fact.blocks:
        assert [list(r) for r in block] == linalg.identity(len(block))


def test_classical_orthogonal_is_its_own_middle_block():
    V = make_space([0, 0])
    beta = form_from_pairings(V, 0, SYMMETRIC, {(0, 0): 1, (1, 1): 1})
    rng = sample_rng(56, 0)
    A = random_orthogonal_map(beta, rng)
    fact = factor_underlying(beta, A)
    assert fact.middle_kind == "O"
    assert len(fact.blocks) == 1


@given(seed=st.integers(0, 300), ell=st.integers(-3, 3),
       kind=st.sampled_from(KINDS))
@settings(max_examples=25, deadline=None)
def test_factor_reconstruct_round_trip_and_homomorphism(seed, ell, kind):
    rng = sample_rng(seed, 1)
    beta = random_form(rng, ell, kind, 6)
    report = standardize(beta)
    A = random_orthogonal_map(beta, rng)
    B = random_orthogonal_map(beta, rng)
    fa = factor_underlying(beta, A, report)
    fb = factor_underlying(beta, B, report)
    assert reconstruct_underlying(beta, fa, report) == A
    fab = factor_underlying(beta, compose(A, B), report)
    assert fab.blocks == multiply_factorizations(fa, fb).blocks


@given(seed=st.integers(0, 300), ell=st.integers(-3, 3),
       kind=st.sampled_from(KINDS))
@settings(max_examples=25, deadline=None)
def test_underlying_group_dimension_matches_the_linearized_kernel(seed, ell, kind):
    beta = random_form(sample_rng(seed, 2), ell, kind, 5)
    assert decompose(beta)[1].degree_zero_dim() == underlying_group_dim(beta)


def test_factor_rejects_non_orthogonal_input(e1_form, e1_space):
    A = GradedMap(e1_space, e1_space, 0,
                  ((Fraction(2), Fraction(0)), (Fraction(0), Fraction(2))))
    with pytest.raises(ValueError, match="not orthogonal"):
        factor_underlying(e1_form, A)


def test_standardize_rejects_degenerate_forms():
    from gradedgroups import BilinearForm
    V = make_space([1, -1])
    beta = BilinearForm(V, 0, SYMMETRIC,
                        ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0))))
    with pytest.raises(ValueError, match="degenerate"):
        standardize(beta)
