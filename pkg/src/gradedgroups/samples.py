"""Seeded random generators for spaces, forms, maps and point automorphisms.

Everything produced here is re-verified by the callers (validity checks,
orthogonality tests), so the generators only need to hit the right strata,
not to be trusted."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement

from . import linalg
from .core import GradedMap, GradedSpace, identity_map, make_space
from .endo import decompose, orthogonality_check
from .forms import SKEW, SYMMETRIC, BilinearForm, is_valid_form, kind_sign
from .points import (CoefficientAlgebra, PointAuto, PointModule, auto_add,
                     auto_exp, auto_multiply, auto_scale, const_auto,
                     is_orthogonal_point, tau_point)
from .ring import GradedPoly, GradedRing, Monomial, RingMorphism


def sample_rng(seed: int, index: int) -> random.Random:
    """Per-sample stream so sharding the suite cannot change outcomes."""
    return random.Random(f"{seed}:{index}")


def random_fraction(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        f = Fraction(rng.randint(-3, 3), rng.choice([1, 1, 1, 2, 3]))
        if f != 0 or not nonzero:
            return f


def random_invertible_matrix(rng: random.Random, n: int) -> linalg.Matrix:
    while True:
        m = [[random_fraction(rng) for _ in range(n)] for _ in range(n)]
        if linalg.det(m) != 0:
            return m


def _random_symmetric_invertible(rng: random.Random, n: int) -> linalg.Matrix:
    while True:
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = random_fraction(rng)
            for j in range(i + 1, n):
                m[i][j] = m[j][i] = random_fraction(rng)
        if linalg.det(m) != 0:
            return m


def _random_antisymmetric_invertible(rng: random.Random, n: int) -> linalg.Matrix:
    if n % 2:
        raise ValueError("invertible antisymmetric blocks need even size")
    while True:
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = random_fraction(rng)
                m[i][j], m[j][i] = v, -v
        if linalg.det(m) != 0:
            return m


def random_form(rng: random.Random, ell: int, kind: str,
                max_dim: int = 6) -> BilinearForm:
    """Random valid nondegenerate form of the given degree and kind on a
    randomly chosen admissible space of total dimension <= max_dim."""
    k = -(ell // 2)
    eps = ell % 2
    # middle-block symmetry sign in the ungraded sense
    middle_sign = kind_sign(kind) * (-1 if (k * k + ell) % 2 else 1)
    while True:
        r_mid = 0 if eps else rng.randint(0, 2)
        if eps == 0 and middle_sign == -1:
            r_mid = 2 * rng.randint(0, 1)
        pair_levels = []
        for i in (0, 1) if eps else (1, 2):
            r = rng.randint(0, 2)
            if r:
                pair_levels.append((k + i, k - (i + eps), r))
        total = r_mid + 2 * sum(r for _, _, r in pair_levels)
        if 0 < total <= max_dim:
            break
    degrees: list[int] = []
    for hi, lo, r in pair_levels:
        degrees += [hi] * r + [lo] * r
    degrees += [k] * r_mid
    degrees.sort(reverse=True)
    space = make_space(degrees)
    n = space.dim
    eps_kind = kind_sign(kind)
    gram = [[Fraction(0)] * n for _ in range(n)]
    done = set()
    for j in sorted(set(degrees), reverse=True):
        if j in done:
            continue
        partner = -(j + ell)
        rows = space.indices_of_degree(j)
        cols = space.indices_of_degree(partner)
        if j == partner:
            block = (_random_symmetric_invertible(rng, len(rows)) if middle_sign == 1
                     else _random_antisymmetric_invertible(rng, len(rows)))
            for a, r in enumerate(rows):
                for b, c in enumerate(cols):
                    gram[r][c] = block[a][b]
        else:
            block = random_invertible_matrix(rng, len(rows))
            for a, r in enumerate(rows):
                for b, c in enumerate(cols):
                    gram[r][c] = block[a][b]
                    sign = eps_kind * (-1 if (j * partner + ell) % 2 else 1)
                    gram[c][r] = sign * block[a][b]
            done.add(partner)
        done.add(j)
    beta = BilinearForm(space, ell, kind, tuple(tuple(row) for row in gram))
    assert is_valid_form(beta).ok
    return beta


def random_graded_map(rng: random.Random, V: GradedSpace, W: GradedSpace,
                      degree: int) -> GradedMap:
    rows = []
    for lam in range(V.dim):
        rows.append(tuple(random_fraction(rng)
                          if V.degrees[lam] - W.degrees[sig] + degree == 0 else Fraction(0)
                          for sig in range(W.dim)))
    return GradedMap(V, W, degree, tuple(rows))


def random_orthogonal_map(beta: BilinearForm, rng: random.Random) -> GradedMap:
    """Rational orthogonal point via the Cayley transform of a random degree-0
    skew element: A = (1 - S)(1 + S)^{-1}."""
    V = beta.space
    skew0 = [A for A in decompose(beta)[1].basis if A.degree == 0]
    ident = identity_map(V)
    while True:
        S = None
        for B in skew0:
            piece = B.scale(random_fraction(rng))
            S = piece if S is None else S + piece
        if S is None:
            return ident
        plus = (ident + S).matrix()
        if linalg.det(plus) == 0:
            continue
        A_mat = linalg.mat_mul(linalg.inverse(plus), (ident - S).matrix())
        A = GradedMap(V, V, 0, tuple(tuple(row) for row in A_mat))
        assert orthogonality_check(beta, A)
        return A


def monomials_of_degree(ring: GradedRing, degree: int, min_len: int,
                        max_len: int) -> list[Monomial]:
    out = []
    for length in range(min_len, max_len + 1):
        for combo in combinations_with_replacement(range(ring.ngens), length):
            if any(ring.degree(i) % 2 and combo.count(i) > 1 for i in combo):
                continue
            if sum(ring.degree(i) for i in combo) != degree:
                continue
            mono = tuple((i, combo.count(i)) for i in sorted(set(combo)))
            out.append(mono)
    return out


def random_element(algebra: CoefficientAlgebra, rng: random.Random, degree: int,
                   min_len: int = 0, max_len: int = 3) -> GradedPoly:
    """Random homogeneous algebra element; empty when no monomial fits."""
    max_len = min(max_len, algebra.truncation)
    pool = monomials_of_degree(algebra.ring, degree, min_len, max_len)
    if not pool:
        return algebra.zero()
    terms = {}
    for _ in range(rng.randint(1, 2)):
        terms[rng.choice(pool)] = random_fraction(rng, nonzero=True)
    return GradedPoly(algebra.ring, terms)


def random_invertible_auto(module: PointModule, rng: random.Random) -> PointAuto:
    """Random invertible point: block-invertible rational body plus sparse
    homogeneous soul entries."""
    V = module.space
    n = V.dim
    body = [[Fraction(0)] * n for _ in range(n)]
    for d in sorted(set(V.degrees)):
        idx = V.indices_of_degree(d)
        block = random_invertible_matrix(rng, len(idx))
        for a, r in enumerate(idx):
            for b, c in enumerate(idx):
                body[r][c] = block[a][b]
    alg = module.algebra
    entries = []
    for kap in range(n):
        row = []
        for lam in range(n):
            e = alg.constant(body[kap][lam])
            if rng.random() < 0.4:
                e = e + random_element(alg, rng, V.degrees[lam] - V.degrees[kap],
                                       min_len=1, max_len=2)
            row.append(e)
        entries.append(tuple(row))
    return PointAuto(module, tuple(entries))


def random_soul_auto(module: PointModule, rng: random.Random) -> PointAuto:
    """Matrix with all entries in the augmentation ideal."""
    V = module.space
    alg = module.algebra
    entries = []
    for kap in range(V.dim):
        row = []
        for lam in range(V.dim):
            if rng.random() < 0.5:
                row.append(random_element(alg, rng, V.degrees[lam] - V.degrees[kap],
                                          min_len=1, max_len=2))
            else:
                row.append(alg.zero())
        entries.append(tuple(row))
    return PointAuto(module, tuple(entries))


def random_orthogonal_auto(beta: BilinearForm, module: PointModule,
                           rng: random.Random) -> PointAuto:
    """Orthogonal point: Cayley body times exp of a soul-only element that is
    skew under the point-level tau.  Verified before being returned."""
    B = const_auto(module, random_orthogonal_map(beta, rng))
    X = random_soul_auto(module, rng)
    N = auto_scale(Fraction(1, 2), auto_add(X, auto_scale(-1, tau_point(beta, X))))
    F = auto_multiply(B, auto_exp(N))
    assert is_orthogonal_point(beta, F), "orthogonal sample failed verification"
    return F


def random_substitution(algebra: CoefficientAlgebra, rng: random.Random) -> RingMorphism:
    """Degree-preserving generator substitution of the coefficient algebra."""
    ring = algebra.ring
    images = []
    for i in range(ring.ngens):
        img = ring.gen(i).scale(random_fraction(rng, nonzero=True))
        same_degree = [j for j in range(ring.ngens) if ring.degree(j) == ring.degree(i) and j != i]
        if same_degree and rng.random() < 0.5:
            img = img + ring.gen(rng.choice(same_degree)).scale(random_fraction(rng))
        images.append(img)
    return RingMorphism(ring, ring, tuple(images))
