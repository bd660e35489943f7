"""Points over truncated coefficient algebras: group laws and form preservation."""

from fractions import Fraction

import pytest

from gradedgroups import (PointModule, auto_multiply, auto_exp, body,
                          compose, const_auto, group_suite, identity_auto,
                          invert, is_invertible, is_orthogonal_point,
                          make_algebra, mu_composite, pairing, psi,
                          psi_inverse, pullback_mu, substitute_auto,
                          tau_point)
from gradedgroups.samples import (random_invertible_auto,
                                  random_orthogonal_auto, random_soul_auto,
                                  random_substitution, sample_rng)


def module_for(space, algebra4):
    return PointModule(algebra4, space)


def test_invert_is_exact_on_random_points(r2_space, algebra4):
    module = module_for(r2_space, algebra4)
    ident = identity_auto(module)
    for i in range(12):
        rng = sample_rng(100, i)
        F = random_invertible_auto(module, rng)
        assert is_invertible(F)
        G = invert(F)
        assert auto_multiply(F, G).entries == ident.entries
        assert auto_multiply(G, F).entries == ident.entries
        assert invert(G).entries == F.entries


def test_invert_handles_nondiagonal_bodies(mixed_space, algebra4):
    module = module_for(mixed_space, algebra4)
    ident = identity_auto(module)
    for i in range(8):
        rng = sample_rng(101, i)
        F = random_invertible_auto(module, rng)
        G = invert(F)
        assert auto_multiply(F, G).entries == ident.entries


def test_exp_of_soul_is_invertible(e1_space, algebra4):
    module = module_for(e1_space, algebra4)
    rng = sample_rng(102, 0)
    N = random_soul_auto(module, rng)
    ident = identity_auto(module)
    F = auto_exp(N)
    assert auto_multiply(F, invert(F)).entries == ident.entries


def test_psi_round_trip(e1_space, algebra4):
    module = module_for(e1_space, algebra4)
    rng = sample_rng(103, 0)
    F = random_invertible_auto(module, rng)
    assert psi(module, psi_inverse(F)).entries == F.entries


def test_mu_composite_agrees_with_matrix_product(mixed_space, algebra4):
    module = module_for(mixed_space, algebra4)
    rng = sample_rng(104, 0)
    F = random_invertible_auto(module, rng)
    G = random_invertible_auto(module, rng)
    assert mu_composite(F, G).entries == auto_multiply(F, G).entries


def test_tau_point_antihomomorphism_and_fixed_points(r2_skew, algebra4):
    module = module_for(r2_skew.space, algebra4)
    for i in range(6):
        rng = sample_rng(105, i)
        F = random_invertible_auto(module, rng)
        G = random_invertible_auto(module, rng)
        lhs = tau_point(r2_skew, auto_multiply(F, G))
        rhs = auto_multiply(tau_point(r2_skew, G), tau_point(r2_skew, F))
        assert lhs.entries == rhs.entries
        assert tau_point(r2_skew, tau_point(r2_skew, F)).entries == F.entries
        X = auto_multiply(tau_point(r2_skew, F), F)
        assert tau_point(r2_skew, X).entries == X.entries


def test_orthogonal_points_two_routes_agree(e1_form, algebra4):
    module = module_for(e1_form.space, algebra4)
    for i in range(8):
        rng = sample_rng(106, i)
        F = random_orthogonal_auto(e1_form, module, rng)
        assert is_orthogonal_point(e1_form, F, route="matrix")
        assert is_orthogonal_point(e1_form, F, route="pairing")
        G = random_invertible_auto(module, rng)
        both = (is_orthogonal_point(e1_form, G, route="matrix"),
                is_orthogonal_point(e1_form, G, route="pairing"))
        assert both[0] == both[1]


def test_orthogonal_closure_under_product_and_inverse(mixed_form, algebra4):
    module = module_for(mixed_form.space, algebra4)
    for i in range(5):
        rng = sample_rng(107, i)
        F = random_orthogonal_auto(mixed_form, module, rng)
        G = random_orthogonal_auto(mixed_form, module, rng)
        assert is_orthogonal_point(mixed_form, auto_multiply(F, G))
        assert is_orthogonal_point(mixed_form, invert(F))


def test_functoriality_under_coefficient_substitution(r2_space, algebra4):
    module = module_for(r2_space, algebra4)
    for i in range(6):
        rng = sample_rng(108, i)
        F = random_invertible_auto(module, rng)
        G = random_invertible_auto(module, rng)
        phi = random_substitution(algebra4, rng)
        lhs = substitute_auto(auto_multiply(F, G), phi)
        rhs = auto_multiply(substitute_auto(F, phi), substitute_auto(G, phi))
        assert lhs.entries == rhs.entries
        assert substitute_auto(invert(F), phi).entries == invert(substitute_auto(F, phi)).entries


def test_group_suite_passes_on_all_example_forms(e1_form, odd_form, r2_sym,
                                                 r2_skew, mixed_form, algebra4):
    for beta in (e1_form, odd_form, r2_sym, r2_skew, mixed_form):
        report = group_suite(beta.space, beta, algebra4, samples=8, seed=3)
        assert report["ok"], report["failures"]


def test_truncation_controls_nilpotency():
    algebra = make_algebra([("c", 1), ("d", -1)], 2)
    ring = algebra.ring
    cd = algebra.mul(ring.gen(0), ring.gen(1))
    assert not cd.is_zero()               # word length 2 survives at W = 2
    assert algebra.mul(cd, ring.gen(0)).is_zero()  # word length 3 truncates


def test_pairing_is_preserved_by_orthogonal_frame_columns(e1_form, algebra4):
    module = module_for(e1_form.space, algebra4)
    rng = sample_rng(109, 0)
    F = random_orthogonal_auto(e1_form, module, rng)
    ident = identity_auto(module)
    n = e1_form.space.dim
    for lam in range(n):
        for kap in range(n):
            transformed = pairing(e1_form, F.column(lam), F.column(kap))
            original = pairing(e1_form, ident.column(lam), ident.column(kap))
            assert transformed == original
