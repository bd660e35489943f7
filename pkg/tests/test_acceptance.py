"""Acceptance gate: every top-level guarantee of the library, checked at
tolerance zero over exact rationals.  Each criterion prints a single PASS/FAIL
line (run with -s to see them live) and fails its test on any discrepancy."""

import itertools
import json
import pathlib
import time
from fractions import Fraction

from gradedgroups import (SKEW, SYMMETRIC, commutator, compose,
                          compose_morphisms, conjugation_eta, decompose,
                          degree_shift, derivation_bracket, dual_form,
                          extract_representation, factor_underlying,
                          flip_kind, form_from_pairings, gl_ring, group_suite,
                          identity_map, identity_morphism, is_in_skew,
                          is_in_sym, is_valid_form, L_matrix,
                          left_invariant_field, linalg, make_algebra,
                          make_space, matrix_unit, multiply_factorizations,
                          pullback_chi0, pullback_projector, pullback_theta,
                          reconstruct_underlying, relates, shift_form,
                          standard_basis, standardize, tangent_matrix, tau,
                          tau_antihom_check, tau_compositional,
                          underlying_group_dim)
from gradedgroups.cli import main as cli_main
from gradedgroups.samples import (random_form, random_orthogonal_map,
                                  sample_rng)

ROOT = pathlib.Path(__file__).resolve().parent.parent
GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"

KINDS = (SYMMETRIC, SKEW)


def report(name: str, ok: bool, started: float) -> None:
    elapsed = time.time() - started
    print(f"[{'PASS' if ok else 'FAIL'}] {name} ({elapsed:.1f}s)")
    assert ok, name


def random_forms(seed: int, count: int):
    """count random valid forms covering both kinds and degrees in [-4, 4]."""
    combos = list(itertools.product(range(-4, 5), KINDS))
    out = []
    i = 0
    while len(out) < count:
        ell, kind = combos[i % len(combos)]
        out.append(random_form(sample_rng(seed, i), ell, kind))
        i += 1
    return out


def example_forms():
    e1 = form_from_pairings(make_space([("t1", 1), ("tm1", -1)]), 0, SYMMETRIC,
                            {(0, 1): Fraction(1)})
    odd = form_from_pairings(make_space([("t0", 0), ("t1", 1)]), -1, SYMMETRIC,
                             {(0, 1): Fraction(1)})
    r2 = make_space([0, 0])
    r2_sym = form_from_pairings(r2, 0, SYMMETRIC,
                                {(0, 0): Fraction(1), (1, 1): Fraction(1)})
    r2_skew = form_from_pairings(r2, 0, SKEW, {(0, 1): Fraction(1)})
    mixed = form_from_pairings(make_space([1, 1, 0, 0]), -1, SYMMETRIC,
                               {(0, 2): Fraction(1), (1, 3): Fraction(2),
                                (0, 3): Fraction(1)})
    return e1, odd, r2_sym, r2_skew, mixed


def units_of(V):
    return [matrix_unit(V, lam, kap) for lam, kap in standard_basis(V)]


def test_criterion_1_involution_suite():
    started = time.time()
    ok = True
    for beta in random_forms(seed=1, count=22):
        us = units_of(beta.space)
        for u in us:
            if tau(beta, tau(beta, u)) != u or tau(beta, u) != tau_compositional(beta, u):
                ok = False
        rng = sample_rng(1, 999)
        pairs = [(rng.choice(us), rng.choice(us)) for _ in range(12)]
        if not all(tau_antihom_check(beta, a, b) for a, b in pairs):
            ok = False
    report("tau involution suite: 22 random forms, both kinds, "
           "degree in [-4,4], dim <= 6, exact", ok, started)


def test_criterion_2_decomposition_suite():
    started = time.time()
    ok = True
    for beta in random_forms(seed=2, count=20):
        sym, skew = decompose(beta)
        n = beta.space.dim
        if sym.dim + skew.dim != n * n:
            ok = False
        if not all(is_in_sym(beta, A) for A in sym.basis):
            ok = False
        if not all(is_in_skew(beta, A) for A in skew.basis):
            ok = False
        rng = sample_rng(2, 999)
        sk = list(skew.basis)
        for _ in range(10):
            a, b = rng.choice(sk), rng.choice(sk)
            if not is_in_skew(beta, commutator(a, b)):
                ok = False
        us = units_of(beta.space)
        for _ in range(6):
            A, B, C = (rng.choice(us) for _ in range(3))
            lhs = commutator(A, commutator(B, C))
            cross = commutator(B, commutator(A, C))
            if (A.degree * B.degree) % 2:
                cross = -cross
            if lhs != commutator(commutator(A, B), C) + cross:
                ok = False
    report("decomposition suite: complementary dimensions, membership, "
           "bracket closure and graded Jacobi, exact", ok, started)


def test_criterion_3_symbolic_group_condition_certificate():
    started = time.time()
    ok = True
    for beta in example_forms():
        comp = compose_morphisms(pullback_chi0(beta), pullback_projector(beta))
        if not all(img.is_zero() for img in comp.images):
            ok = False
    report("symbolic certificate: group-condition pullback composed with the "
           "skew projector vanishes on 5 example spaces", ok, started)


def test_criterion_4_left_invariant_bracket_certificate():
    started = time.time()
    ok = True
    for V in (make_space([0]), make_space([0, 1]), make_space([1, 0, -1])):
        us = units_of(V)
        for A in us:
            for B in us:
                lhs = derivation_bracket(left_invariant_field(V, A),
                                         left_invariant_field(V, B))
                rhs = left_invariant_field(V, commutator(A, B))
                if lhs.images != rhs.images:
                    ok = False
    report("Lie-algebra certificate: left-invariant-field bracket equals the "
           "graded commutator on all matrix-unit pairs, dim <= 3", ok, started)


def test_criterion_5_tangent_certificate():
    started = time.time()
    ok = True
    for beta in example_forms():
        chi0 = pullback_chi0(beta)
        for i in range(10):
            rng = sample_rng(5, i)
            A = random_orthogonal_map(beta, rng)
            if tangent_matrix(chi0, beta.space, A) != L_matrix(beta, A):
                ok = False
        null_dim = len(linalg.nullspace(L_matrix(beta, identity_map(beta.space))))
        if null_dim != decompose(beta)[1].dim:
            ok = False
    report("tangent certificate: jacobian at 10 orthogonal points per example "
           "equals the linearized condition; ker L_id has the skew dimension",
           ok, started)


def test_criterion_6_points_group_suite():
    started = time.time()
    algebra = make_algebra([("a", 2), ("b", -2), ("c", 1), ("d", -1)], 4)
    e1, _, _, r2_skew, _ = example_forms()
    ok = True
    for beta in (e1, r2_skew):
        suite = group_suite(beta.space, beta, algebra, samples=100, seed=0)
        if not suite["ok"] or suite["failures"]:
            ok = False
    report("points group suite: 100 seeded samples over a 4-generator algebra "
           "truncated at word length 4, zero failures", ok, started)


def test_criterion_7_standard_form_round_trip():
    started = time.time()
    ok = True
    count = 0
    for beta in random_forms(seed=7, count=22):
        rep = standardize(beta)
        if rep.standardized_form() != rep.expected_form():
            ok = False
        rng = sample_rng(7, 500 + count)
        A = random_orthogonal_map(beta, rng)
        B = random_orthogonal_map(beta, rng)
        fa = factor_underlying(beta, A, rep)
        fb = factor_underlying(beta, B, rep)
        if reconstruct_underlying(beta, fa, rep) != A:
            ok = False
        if factor_underlying(beta, compose(A, B), rep).blocks != \
                multiply_factorizations(fa, fb).blocks:
            ok = False
        if decompose(beta)[1].degree_zero_dim() != underlying_group_dim(beta):
            ok = False
        count += 1
    # classical Sylvester check against an independent float eigenvalue oracle
    import numpy as np
    for i in range(5):
        beta = random_form(sample_rng(7, 900 + i), 0, SYMMETRIC, 6)
        mid = beta.space.indices_of_degree(0)
        if not mid:
            continue
        rep = standardize(beta)
        eig = np.linalg.eigvalsh(np.array(
            [[float(beta.value(a, b)) for b in mid] for a in mid]))
        if rep.signature != (int((eig > 1e-9).sum()), int((eig < -1e-9).sum())):
            ok = False
    report("standard form round-trip: 22 random forms standardized exactly; "
           "signature matches a float oracle; factor/reconstruct and "
           "blockwise multiplicativity exact", ok, started)


def test_criterion_8_isomorphism_and_kind_flip_suite():
    started = time.time()
    ok = True
    for i, (ell, kind) in enumerate(itertools.product(range(-2, 3), KINDS)):
        beta = random_form(sample_rng(8, i), ell, kind, 5)
        for m in (-1, 1, 2):
            shifted = shift_form(beta, m)
            if shifted.kind != (flip_kind(kind) if m % 2 else kind):
                ok = False
            if not is_valid_form(shifted).ok:
                ok = False
            _, delta = degree_shift(beta.space, m)
            if not relates(delta, shifted, beta):
                ok = False
        dual = dual_form(beta)
        if dual.kind != (flip_kind(kind) if ell % 2 else kind):
            ok = False
    # conjugation: even case preserves the skew algebra, odd case crosses kinds
    e1 = example_forms()[0]
    rng = sample_rng(8, 999)
    M = random_orthogonal_map(e1, rng)
    for A in decompose(e1)[1].basis:
        if not is_in_skew(e1, conjugation_eta(M, A)):
            ok = False
    shifted = shift_form(e1, 1)
    if shifted.kind != SKEW:
        ok = False
    _, delta = degree_shift(e1.space, 1)
    for A in decompose(shifted)[1].basis:
        if not is_in_skew(e1, conjugation_eta(delta, A)):
            ok = False
    report("isomorphism suite: shift and dual land in the predicted kind with "
           "isometry witnesses; odd conjugation crosses metric and skew types",
           ok, started)


def test_criterion_9_representation_extraction():
    started = time.time()
    ok = True
    for V in (make_space([("t1", 1), ("tm1", -1)]), make_space([0, 0])):
        theta = pullback_theta(V)
        split = gl_ring(V, "y").ngens
        rho = extract_representation(theta, V, split)
        ident = identity_morphism(rho.source)
        if [p.terms for p in rho.images] != [p.terms for p in ident.images]:
            ok = False
    # non-linear rejection, on a space whose coordinates admit squares
    V = make_space([0, 0])
    theta = pullback_theta(V)
    split = gl_ring(V, "y").ngens
    try:
        from gradedgroups.ring import RingMorphism, multiply
        x0 = theta.target.gen(split)
        bad0 = theta.images[0] + multiply(x0, x0)
        bad = RingMorphism(theta.source, theta.target, (bad0,) + theta.images[1:])
        extract_representation(bad, V, split)
        rejected = False
    except ValueError:
        rejected = True
    if not rejected:
        ok = False
    report("representation extraction: the tautological action extracts to the "
           "identity morphism and non-linear actions are rejected", ok, started)


def test_criterion_10_cli_golden_files(capsys):
    started = time.time()
    ok = True
    config = str(ROOT / "configs" / "e1.json")
    for which in ("mu", "tau", "chi0", "theta"):
        code = cli_main(["pullback", config, "--which", which])
        out = capsys.readouterr().out
        if code != 0 or out != (GOLDEN / f"pullback_{which}.txt").read_text():
            ok = False
    if cli_main(["verify", config, "--samples", "3"]) != 0:
        ok = False
    if cli_main(["verify", str(ROOT / "configs" / "degenerate.json"),
                 "--samples", "2"]) != 1:
        ok = False
    capsys.readouterr()
    with capsys.disabled():
        report("CLI: pullback outputs byte-stable against golden files; "
               "verify exit codes honor the pass/fail/input-error contract",
               ok, started)
