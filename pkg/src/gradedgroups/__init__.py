"""Exact-arithmetic graded linear algebra over the rationals and the graded
matrix groups attached to a graded vector space: the general linear group,
and the orthogonal/symplectic groups of a graded bilinear form, realized
through their coordinate rings, their points over nilpotent coefficient
algebras, and the standard-form/underlying-group factorizations."""

from .core import (BasisChange, GradedMap, GradedSpace, basis_change,
                   change_basis, compose, degree_shift, double_dual_iso,
                   dual_space, graded_map, identity_map, inverse_map,
                   make_space, map_from_json, map_to_json, matrix_unit,
                   space_from_json, space_to_json, transpose, zero_map)
from .endo import (EndoSubspace, L_map, L_matrix, commutator,
                   conjugation_eta, decompose, is_in_skew, is_in_sym,
                   orthogonality_check, skew_closed_under_bracket,
                   standard_basis, tau, tau_antihom_check, tau_compositional)
from .forms import (SKEW, SYMMETRIC, BilinearForm, DegreeConstraintError,
                    FormValidity, dual_form, flat, flip_kind, form_from_gram,
                    form_from_json, form_from_pairings, form_to_json,
                    inverse_form, is_valid_form, kind_sign, negate_form,
                    relates, sharp, shift_form, transform_form)
from .points import (CoefficientAlgebra, PointAuto, PointModule, PointVector,
                     auto_add, auto_exp, auto_multiply, auto_scale, body,
                     const_auto, group_suite, identity_auto, invert,
                     is_invertible, is_orthogonal_point, make_algebra,
                     mu_composite, pairing, psi, psi_inverse, substitute_auto,
                     tau_point, xi_points)
from .ring import (Derivation, GradedBilinearMap, GradedPoly, GradedRing,
                   GradedVariable, RingMorphism, composition_bilinear,
                   compose_morphisms, derivation_apply, derivation_bracket,
                   dia_ring, evaluation_bilinear, extract_representation,
                   gl_gen_index, gl_point, gl_ring, identity_morphism,
                   jacobian_at_point, left_invariant_field, make_ring,
                   morphism_to_text, partial, poly_to_text, product_ring,
                   pullback_chi0, pullback_chi0_explicit, pullback_counit,
                   pullback_dia_bilinear, pullback_dia_map, pullback_mu,
                   pullback_projector, pullback_tau, pullback_theta,
                   tangent_matrix, tau_tensor)
from .standard import (FormShape, StandardBasisReport, UnderlyingFactorization,
                       factor_underlying, multiply_factorizations,
                       reconstruct_underlying, shape, standardize,
                       underlying_group_dim)

__version__ = "0.1.0"
