"""Functor of points: free modules over truncated graded-commutative
coefficient algebras, automorphism matrices, the induced pairing, and the
orthogonal/symplectic membership conditions.

Truncation at word length W makes the augmentation ideal nilpotent, so the
Neumann series for the inverse terminates; every identity under test is
polynomial of bounded degree, so nothing is lost."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import linalg
from .core import GradedMap, GradedSpace, as_fraction
from .forms import BilinearForm
from .ring import (GradedPoly, GradedRing, GradedVariable, RingMorphism,
                   compose_morphisms, gl_gen_index, gl_ring, multiply,
                   pullback_mu, pullback_tau)


@dataclass(frozen=True)
class CoefficientAlgebra:
    ring: GradedRing
    truncation: int

    def __post_init__(self):
        if self.truncation < 1:
            raise ValueError("truncation must be positive")

    def mul(self, f: GradedPoly, g: GradedPoly) -> GradedPoly:
        return multiply(f, g).truncate(self.truncation)

    def zero(self) -> GradedPoly:
        return self.ring.zero()

    def one(self) -> GradedPoly:
        return self.ring.one()

    def constant(self, c) -> GradedPoly:
        return self.ring.constant(c)


def make_algebra(gens: list[tuple[str, int]], truncation: int = 4) -> CoefficientAlgebra:
    return CoefficientAlgebra(GradedRing(tuple(GradedVariable(n, d) for n, d in gens)), truncation)


@dataclass(frozen=True)
class PointModule:
    """Free module over the coefficient algebra with frame Phi_lam; the frame
    sign Phi_lam = (-1)^{|t_lam|} 1 (x) t_lam is baked into the pairing."""

    algebra: CoefficientAlgebra
    space: GradedSpace


@dataclass(frozen=True)
class PointVector:
    module: PointModule
    coords: tuple[GradedPoly, ...]  # coefficients with respect to the frame

    def __post_init__(self):
        if len(self.coords) != self.module.space.dim:
            raise ValueError("coordinate count mismatch")
        for c in self.coords:
            if c.ring != self.module.algebra.ring:
                raise ValueError("coordinate in the wrong algebra")
            if not c.is_homogeneous():
                raise ValueError("coordinates must be homogeneous")


@dataclass(frozen=True)
class PointAuto:
    """F(Phi_lam) = entries[kap][lam] . Phi_kap; entry (kap, lam) must be
    homogeneous of degree |t_lam| - |t_kap| (inhomogeneous input is an error,
    not silently projected)."""

    module: PointModule
    entries: tuple[tuple[GradedPoly, ...], ...]

    def __post_init__(self):
        V = self.module.space
        n = V.dim
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError("entry matrix shape mismatch")
        for kap in range(n):
            for lam in range(n):
                e = self.entries[kap][lam]
                if e.ring != self.module.algebra.ring:
                    raise ValueError("entry in the wrong algebra")
                if not e.is_zero() and e.degree() != V.degrees[lam] - V.degrees[kap]:
                    raise ValueError(f"entry ({kap},{lam}) not homogeneous of its degree")

    def column(self, lam: int) -> PointVector:
        return PointVector(self.module, tuple(self.entries[kap][lam]
                                              for kap in range(self.module.space.dim)))


def const_auto(module: PointModule, A: GradedMap) -> PointAuto:
    """Constant-coefficient automorphism from a degree-0 rational map."""
    if A.degree != 0 or A.domain != module.space:
        raise ValueError("constant autos come from degree-0 endomorphisms")
    n = module.space.dim
    rows = tuple(tuple(module.algebra.constant(A.entries[lam][kap]) for lam in range(n))
                 for kap in range(n))
    return PointAuto(module, rows)


def identity_auto(module: PointModule) -> PointAuto:
    n = module.space.dim
    one, zero = module.algebra.one(), module.algebra.zero()
    return PointAuto(module, tuple(tuple(one if i == j else zero for j in range(n))
                                   for i in range(n)))


def body(F: PointAuto) -> linalg.Matrix:
    return [[e.body() for e in row] for row in F.entries]


def is_invertible(F: PointAuto) -> bool:
    return linalg.det(body(F)) != 0


def auto_multiply(F: PointAuto, G: PointAuto) -> PointAuto:
    """(FG)^kap_lam = sum_nu G^nu_lam F^kap_nu (note the order of the algebra
    product: F is a module morphism, so G's coefficient passes to the left)."""
    if F.module != G.module:
        raise ValueError("module mismatch")
    alg = F.module.algebra
    n = F.module.space.dim
    rows = []
    for kap in range(n):
        row = []
        for lam in range(n):
            acc = alg.zero()
            for nu in range(n):
                acc = acc + alg.mul(G.entries[nu][lam], F.entries[kap][nu])
            row.append(acc)
        rows.append(tuple(row))
    return PointAuto(F.module, tuple(rows))


def auto_add(F: PointAuto, G: PointAuto) -> PointAuto:
    rows = tuple(tuple(a + b for a, b in zip(ra, rb))
                 for ra, rb in zip(F.entries, G.entries))
    return PointAuto(F.module, rows)


def auto_scale(c, F: PointAuto) -> PointAuto:
    c = as_fraction(c)
    return PointAuto(F.module, tuple(tuple(e.scale(c) for e in row) for row in F.entries))


def invert(F: PointAuto) -> PointAuto:
    """F = Fbar (I + N) with N in the augmentation ideal; the Neumann series
    sum_{k<=W} (-N)^k terminates by nilpotency of the truncated ideal."""
    if not is_invertible(F):
        raise ValueError("singular body")
    module = F.module
    binv = linalg.inverse(body(F))  # already in PointAuto (row = kap) orientation
    fbar_inv = PointAuto(module, tuple(tuple(module.algebra.constant(v) for v in row)
                                       for row in binv))
    one_plus_n = auto_multiply(fbar_inv, F)
    ident = identity_auto(module)
    N = auto_add(one_plus_n, auto_scale(-1, ident))
    series = ident
    power = ident
    for k in range(1, module.algebra.truncation + 1):
        power = auto_multiply(power, auto_scale(-1, N))
        series = auto_add(series, power)
        if all(e.is_zero() for row in power.entries for e in row):
            break
    return auto_multiply(series, fbar_inv)


def auto_exp(N: PointAuto) -> PointAuto:
    """exp of a nilpotent (soul-only) matrix; terminates by truncation."""
    module = N.module
    out = identity_auto(module)
    power = identity_auto(module)
    for k in range(1, module.algebra.truncation + 1):
        power = auto_multiply(power, N)
        if all(e.is_zero() for row in power.entries for e in row):
            break
        out = auto_add(out, auto_scale(Fraction(1, factorial(k)), power))
    return out


def psi(module: PointModule, phi: RingMorphism) -> PointAuto:
    """Psi(phi)(Phi_lam) = phi*(y^kap_lam) . Phi_kap."""
    V = module.space
    if phi.target != module.algebra.ring or phi.source != gl_ring(V, "y"):
        raise ValueError("pullback does not match the module")
    W = module.algebra.truncation
    rows = tuple(tuple(phi.images[gl_gen_index(V, kap, lam)].truncate(W)
                       for lam in range(V.dim)) for kap in range(V.dim))
    return PointAuto(module, rows)


def psi_inverse(F: PointAuto) -> RingMorphism:
    V = F.module.space
    yring = gl_ring(V, "y")
    images = tuple(F.entries[kap][lam]
                   for kap in range(V.dim) for lam in range(V.dim))
    return RingMorphism(yring, F.module.algebra.ring, images)


def xi_points(module: PointModule, phi: RingMorphism) -> PointVector:
    """Xi(phi) = phi*(z^lam) . Phi_lam, a degree-0 element of the module."""
    if phi.target != module.algebra.ring or phi.source.ngens != module.space.dim:
        raise ValueError("pullback does not match the module")
    W = module.algebra.truncation
    return PointVector(module, tuple(img.truncate(W) for img in phi.images))


def frame_pairing_matrix(beta: BilinearForm) -> linalg.Matrix:
    """<Phi_lam, Phi_kap> = (-1)^{|t_lam| + |t_kap| + (|t_lam| + ell) ell} g_{lam kap}."""
    V = beta.space
    n = V.dim
    out = linalg.zeros(n, n)
    for lam in range(n):
        for kap in range(n):
            exp = V.degrees[lam] + V.degrees[kap] + (V.degrees[lam] + beta.ell) * beta.ell
            s = -1 if exp % 2 else 1
            out[lam][kap] = s * beta.gram[lam][kap]
    return out


def pairing(beta: BilinearForm, v: PointVector, w: PointVector) -> GradedPoly:
    """<v^lam Phi_lam, w^kap Phi_kap> = v^lam (-1)^{|w^kap|(|t_lam|+ell)} w^kap <Phi_lam,Phi_kap>."""
    if v.module != w.module or v.module.space != beta.space:
        raise ValueError("pairing arguments do not match the form")
    alg = v.module.algebra
    V = beta.space
    P = frame_pairing_matrix(beta)
    acc = alg.zero()
    for lam in range(V.dim):
        if v.coords[lam].is_zero():
            continue
        for kap in range(V.dim):
            wk = w.coords[kap]
            if wk.is_zero() or P[lam][kap] == 0:
                continue
            s = -1 if (wk.degree() * (V.degrees[lam] + beta.ell)) % 2 else 1
            acc = acc + alg.mul(v.coords[lam], wk).scale(Fraction(s) * P[lam][kap])
    return acc


def tau_point(beta: BilinearForm, F: PointAuto) -> PointAuto:
    """Point-level tau: entries of F pushed through the tau pullback, i.e.
    psi(psi_inverse(F) o dia-tau*)."""
    V = beta.space
    if F.module.space != V:
        raise ValueError("form and automorphism live on different spaces")
    taustar = pullback_tau(beta)
    alg = F.module.algebra
    n = V.dim
    rows = [[alg.zero() for _ in range(n)] for _ in range(n)]
    for kap in range(n):
        for lam in range(n):
            img = taustar.images[gl_gen_index(V, kap, lam)]
            acc = alg.zero()
            for mono, c in img.terms.items():
                (idx, _), = mono  # tau* is linear in the generators
                rho, sig = divmod(idx, n)
                acc = acc + F.entries[rho][sig].scale(c)
            rows[kap][lam] = acc
    return PointAuto(F.module, tuple(tuple(r) for r in rows))


def is_orthogonal_point(beta: BilinearForm, F: PointAuto, route: str = "matrix") -> bool:
    """Membership in O/Sp at points.  route="matrix" checks the signed gram
    equation; route="pairing" checks preservation of the frame pairing; the
    two are equivalent and the suite asserts their agreement."""
    V = beta.space
    if F.module.space != V:
        raise ValueError("form and automorphism live on different spaces")
    alg = F.module.algebra
    n = V.dim
    degs = V.degrees
    if route == "matrix":
        for lam in range(n):
            for kap in range(n):
                acc = alg.zero()
                for rho in range(n):
                    for sig in range(n):
                        if beta.gram[rho][sig] == 0:
                            continue
                        exp = degs[kap] * (degs[sig] - 1) + degs[rho] * (1 + beta.ell)
                        s = -1 if exp % 2 else 1
                        acc = acc + alg.mul(F.entries[rho][lam], F.entries[sig][kap]) \
                                       .scale(Fraction(s) * beta.gram[rho][sig])
                s = -1 if (degs[lam] * (1 + beta.ell)) % 2 else 1
                if acc != alg.constant(Fraction(s) * beta.gram[lam][kap]):
                    return False
        return True
    if route == "pairing":
        P = frame_pairing_matrix(beta)
        for lam in range(n):
            for kap in range(n):
                got = pairing(beta, F.column(lam), F.column(kap))
                if got != alg.constant(P[lam][kap]):
                    return False
        return True
    raise ValueError(f"unknown route {route!r}")


def substitute_auto(F: PointAuto, varphi: RingMorphism) -> PointAuto:
    """Functor action on points: apply a generator-substitution morphism of
    the coefficient algebra entrywise, G^kap_lam = varphi*(F^kap_lam)."""
    if varphi.source != F.module.algebra.ring:
        raise ValueError("substitution must act on the coefficient algebra")
    target_alg = CoefficientAlgebra(varphi.target, F.module.algebra.truncation)
    module = PointModule(target_alg, F.module.space)
    W = target_alg.truncation
    rows = tuple(tuple(varphi.apply(e).truncate(W) for e in row) for row in F.entries)
    return PointAuto(module, rows)


def mu_composite(F: PointAuto, G: PointAuto) -> PointAuto:
    """The group product computed through the coordinate route: pull back mu*
    along (psi^{-1}F, psi^{-1}G) and re-assemble; equals auto_multiply(F, G)
    by the equivariance of Psi (tested, not assumed)."""
    V = F.module.space
    mu = pullback_mu(V)
    phi, phi2 = psi_inverse(F), psi_inverse(G)
    pair = RingMorphism(mu.target, F.module.algebra.ring, tuple(phi.images) + tuple(phi2.images))
    return psi(F.module, compose_morphisms(pair, mu))


def group_suite(V: GradedSpace, beta: BilinearForm | None, algebra: CoefficientAlgebra,
                samples: int = 50, seed: int = 0) -> dict:
    """Randomized group-axiom and subgroup-closure report.  Every sample is
    verified before use, so the generators need not be trusted.  Sample
    streams are derived per index from the seed, so sharding cannot change
    the outcome."""
    from . import samples as sampling
    module = PointModule(algebra, V)
    report = {"seed": seed, "samples": samples, "failures": []}

    def fail(check: str, i: int, extra: str = ""):
        report["failures"].append({"check": check, "sample": i, "detail": extra})

    ident = identity_auto(module)
    for i in range(samples):
        rng = sampling.sample_rng(seed, i)
        F = sampling.random_invertible_auto(module, rng)
        G = sampling.random_invertible_auto(module, rng)
        H = sampling.random_invertible_auto(module, rng)
        if auto_multiply(auto_multiply(F, G), H) != auto_multiply(F, auto_multiply(G, H)):
            fail("associativity", i)
        if auto_multiply(F, ident) != F or auto_multiply(ident, F) != F:
            fail("unit", i)
        Finv = invert(F)
        if auto_multiply(F, Finv) != ident or auto_multiply(Finv, F) != ident:
            fail("two-sided inverse", i)
        if invert(Finv) != F:
            fail("double inverse", i)
        if mu_composite(F, G) != auto_multiply(F, G):
            fail("psi equivariance", i)
        varphi = sampling.random_substitution(algebra, rng)
        if substitute_auto(auto_multiply(F, G), varphi) != \
                auto_multiply(substitute_auto(F, varphi), substitute_auto(G, varphi)):
            fail("functoriality multiply", i)
        if substitute_auto(Finv, varphi) != invert(substitute_auto(F, varphi)):
            fail("functoriality invert", i)
        if beta is not None:
            OF = sampling.random_orthogonal_auto(beta, module, rng)
            OG = sampling.random_orthogonal_auto(beta, module, rng)
            for tag, X in (("F", OF), ("G", OG), ("FG", auto_multiply(OF, OG)),
                           ("Finv", invert(OF))):
                m = is_orthogonal_point(beta, X, route="matrix")
                p = is_orthogonal_point(beta, X, route="pairing")
                if m != p:
                    fail("two-route agreement", i, tag)
                if not m:
                    fail("orthogonal closure", i, tag)
            if tau_point(beta, auto_multiply(OF, OG)) != \
                    auto_multiply(tau_point(beta, OG), tau_point(beta, OF)):
                fail("tau anti-homomorphism", i)
            fix = auto_multiply(tau_point(beta, OF), OF)
            if tau_point(beta, fix) != fix:
                fail("tau fixed point", i)
    report["ok"] = not report["failures"]
    return report
