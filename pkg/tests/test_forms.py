"""Graded bilinear forms: validity, musical maps, shifts, duals, JSON."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedgroups import (SKEW, SYMMETRIC, BilinearForm,
                          DegreeConstraintError, compose, degree_shift,
                          dual_form, dual_space, flat, flip_kind,
                          form_from_json, form_from_pairings, form_to_json,
                          identity_map, inverse_form, is_valid_form,
                          kind_sign, make_space, relates, sharp, shift_form)
from gradedgroups import linalg
from gradedgroups.samples import random_form, sample_rng

KINDS = (SYMMETRIC, SKEW)


@given(seed=st.integers(0, 500), ell=st.integers(-4, 4),
       kind=st.sampled_from(KINDS))
@settings(max_examples=50, deadline=None)
def test_random_forms_are_valid(seed, ell, kind):
    beta = random_form(sample_rng(seed, 0), ell, kind)
    assert is_valid_form(beta).ok


@given(seed=st.integers(0, 500), ell=st.integers(-3, 3),
       kind=st.sampled_from(KINDS))
@settings(max_examples=40, deadline=None)
def test_graded_symmetry_of_raw_values(seed, ell, kind):
    beta = random_form(sample_rng(seed, 1), ell, kind)
    degs = beta.space.degrees
    eps = kind_sign(kind)
    for lam in range(beta.space.dim):
        for kap in range(beta.space.dim):
            sign = eps * (-1 if ((degs[lam] + ell) * (degs[kap] + ell)) % 2 else 1)
            assert beta.value(kap, lam) == sign * beta.value(lam, kap)


@given(seed=st.integers(0, 500), ell=st.integers(-3, 3),
       kind=st.sampled_from(KINDS))
@settings(max_examples=40, deadline=None)
def test_sharp_inverts_flat(seed, ell, kind):
    beta = random_form(sample_rng(seed, 2), ell, kind)
    V = beta.space
    assert compose(sharp(beta), flat(beta)) == identity_map(V)
    assert compose(flat(beta), sharp(beta)) == identity_map(dual_space(V))


def test_degenerate_form_detected():
    V = make_space([1, -1])
    beta = BilinearForm(V, 0, SYMMETRIC,
                        ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0))))
    report = is_valid_form(beta)
    assert not report.ok
    assert report.failed_block is not None
    with pytest.raises(ValueError):
        inverse_form(beta)


def test_block_dim_mismatch_detected():
    V = make_space([1, 1, -1])
    beta = BilinearForm(V, 0, SYMMETRIC, tuple(
        tuple(Fraction(0) for _ in range(3)) for _ in range(3)))
    report = is_valid_form(beta)
    assert not report.ok
    assert "mismatch" in report.problems[0]


def test_constructor_rejects_bad_symmetry_and_support():
    V = make_space([1, -1])
    with pytest.raises(ValueError):
        BilinearForm(V, 0, SYMMETRIC,
                     ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0))))
    with pytest.raises(ValueError):
        form_from_pairings(V, 0, "sideways", {(0, 1): Fraction(1)})


@given(seed=st.integers(0, 300), ell=st.integers(-3, 3),
       kind=st.sampled_from(KINDS), m=st.sampled_from([-2, -1, 1, 2]))
@settings(max_examples=40, deadline=None)
def test_shift_form_kind_degree_and_isometry(seed, ell, kind, m):
    beta = random_form(sample_rng(seed, 3), ell, kind, 5)
    shifted = shift_form(beta, m)
    assert shifted.ell == ell + 2 * m
    assert shifted.kind == (flip_kind(kind) if m % 2 else kind)
    assert is_valid_form(shifted).ok
    _, delta = degree_shift(beta.space, m)
    assert relates(delta, shifted, beta)


@given(seed=st.integers(0, 300), ell=st.integers(-3, 3),
       kind=st.sampled_from(KINDS))
@settings(max_examples=40, deadline=None)
def test_dual_form_kind_and_degree(seed, ell, kind):
    beta = random_form(sample_rng(seed, 4), ell, kind, 5)
    dual = dual_form(beta)
    assert dual.ell == -ell
    assert dual.kind == (flip_kind(kind) if ell % 2 else kind)
    assert is_valid_form(dual).ok


def test_relates_degree_precondition(e1_form, e1_space):
    # A degree-0 map cannot relate forms of different degrees: this is a
    # bookkeeping error, not a failed identity.
    other = shift_form(e1_form, 1)
    shifted_space, delta = degree_shift(e1_space, 1)
    # A degree-0 form on the shifted space cannot be related to e1_form by the
    # degree-1 map delta: 0 + 2*1 != 0.
    bad = form_from_pairings(shifted_space, 0, SYMMETRIC, {(0, 0): Fraction(1)})
    with pytest.raises(DegreeConstraintError):
        relates(delta, bad, e1_form)
    assert relates(delta, other, e1_form)


def test_inverse_gram_signed_identity():
    beta = random_form(sample_rng(9, 0), -2, SYMMETRIC, 6)
    V = beta.space
    n = V.dim
    inv = inverse_form(beta).matrix
    for lam in range(n):
        for alpha in range(n):
            total = Fraction(0)
            for rho in range(n):
                s = -1 if (beta.ell * (V.degrees[lam] + V.degrees[rho] + 1)) % 2 else 1
                total += s * beta.gram[lam][rho] * inv[rho][alpha]
            assert total == (1 if lam == alpha else 0)


def test_form_json_round_trip():
    beta = random_form(sample_rng(21, 0), 1, SKEW, 6)
    again = form_from_json(beta.space, form_to_json(beta))
    assert again == beta


def test_form_json_rejects_inconsistent_entries():
    V = make_space([1, -1])
    with pytest.raises(ValueError):
        form_from_json(V, {"ell": 0, "kind": "symmetric",
                           "entries": [[0, 1, "1"], [1, 0, "2"]]})
