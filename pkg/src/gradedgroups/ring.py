"""Free graded-commutative polynomial rings over exact rationals.

Monomials are kept in a normal form: generators sorted by registration index,
odd generators at most once, with the Koszul sign accumulated while sorting.
Ring morphisms play the role of pullbacks of maps between the underlying
graded manifolds; derivations play the role of vector fields.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .core import GradedMap, GradedSpace, as_fraction, check_degree, frac_str
from .forms import BilinearForm, inverse_form

Monomial = tuple[tuple[int, int], ...]  # ((generator index, exponent), ...) sorted


@dataclass(frozen=True)
class GradedVariable:
    name: str
    degree: int

    def __post_init__(self):
        check_degree(self.degree)


@dataclass(frozen=True)
class GradedRing:
    generators: tuple[GradedVariable, ...]

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names in ring")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def degree(self, idx: int) -> int:
        return self.generators[idx].degree

    def index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise KeyError(name)

    def zero(self) -> "GradedPoly":
        return GradedPoly(self, {})

    def one(self) -> "GradedPoly":
        return GradedPoly(self, {(): Fraction(1)})

    def constant(self, c) -> "GradedPoly":
        c = as_fraction(c)
        return GradedPoly(self, {(): c} if c != 0 else {})

    def gen(self, idx: int) -> "GradedPoly":
        return GradedPoly(self, {((idx, 1),): Fraction(1)})

    def var(self, name: str) -> "GradedPoly":
        return self.gen(self.index(name))


def make_ring(gens: list[tuple[str, int]]) -> GradedRing:
    return GradedRing(tuple(GradedVariable(n, d) for n, d in gens))


def product_ring(first: GradedRing, second: GradedRing) -> GradedRing:
    """Coordinate ring of a product; first factor's generators come first."""
    return GradedRing(first.generators + second.generators)


def _mono_mul(ring: GradedRing, m1: Monomial, m2: Monomial) -> tuple[int, Monomial | None]:
    """Normal-ordered product of monomials: (sign, monomial), sign 0 for a
    vanishing product (odd generator squared)."""
    odd1 = [idx for idx, _ in m1 if ring.degree(idx) % 2]
    sign_exp = 0
    merged = dict(m1)
    for idx, e in m2:
        if ring.degree(idx) % 2:
            if idx in merged:
                return 0, None
            # this factor passes every odd m1-factor of strictly larger index
            sign_exp += len(odd1) - bisect_right(odd1, idx)
        merged[idx] = merged.get(idx, 0) + e
    mono = tuple(sorted(merged.items()))
    return (-1 if sign_exp % 2 else 1), mono


def mono_degree(ring: GradedRing, m: Monomial) -> int:
    return sum(e * ring.degree(idx) for idx, e in m)


def mono_length(m: Monomial) -> int:
    return sum(e for _, e in m)


class GradedPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedRing, terms: dict[Monomial, Fraction]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedPoly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        degs = {mono_degree(self.ring, m) for m in self.terms}
        return len(degs) <= 1

    def degree(self) -> int | None:
        """Common degree of a homogeneous polynomial; None for zero."""
        degs = {mono_degree(self.ring, m) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return GradedPoly(self.ring, terms)

    def __neg__(self) -> "GradedPoly":
        return GradedPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        return self + (-other)

    def scale(self, c) -> "GradedPoly":
        c = as_fraction(c)
        return GradedPoly(self.ring, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        return multiply(self, other)

    __rmul__ = __mul__

    def truncate(self, max_length: int) -> "GradedPoly":
        return GradedPoly(self.ring, {m: c for m, c in self.terms.items()
                                      if mono_length(m) <= max_length})

    def body(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __repr__(self):
        return f"GradedPoly({poly_to_text(self)})"


def multiply(f: GradedPoly, g: GradedPoly) -> GradedPoly:
    terms: dict[Monomial, Fraction] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            sign, mono = _mono_mul(f.ring, m1, m2)
            if sign == 0:
                continue
            terms[mono] = terms.get(mono, Fraction(0)) + sign * c1 * c2
    return GradedPoly(f.ring, terms)


def poly_power(f: GradedPoly, e: int) -> GradedPoly:
    out = f.ring.one()
    for _ in range(e):
        out = multiply(out, f)
    return out


def evaluate_at_point(f: GradedPoly, point: dict[int, Fraction]) -> Fraction:
    """Evaluate at a rational point: generators of nonzero degree are zero."""
    total = Fraction(0)
    for m, c in f.terms.items():
        val = c
        for idx, e in m:
            if f.ring.degree(idx) != 0:
                val = Fraction(0)
                break
            val *= point.get(idx, Fraction(0)) ** e
        total += val
    return total


# Canonical text form, stable for golden files: terms sorted by monomial key.

def mono_to_text(ring: GradedRing, m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(ring.generators[idx].name + (f"^{e}" if e > 1 else "") for idx, e in m)


def poly_to_text(f: GradedPoly) -> str:
    if not f.terms:
        return "0"
    pieces = []
    for m, c in sorted(f.terms.items()):
        mono = mono_to_text(f.ring, m)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mag == 1 and m:
            body = mono
        elif not m:
            body = frac_str(mag)
        else:
            body = f"{frac_str(mag)}*{mono}"
        pieces.append(f"{sign} {body}")
    text = " ".join(pieces)
    return text[2:] if text.startswith("+ ") else text


@dataclass(frozen=True)
class RingMorphism:
    """Degree-preserving algebra morphism fixed by generator images."""

    source: GradedRing
    target: GradedRing
    images: tuple[GradedPoly, ...]

    def __post_init__(self):
        if len(self.images) != self.source.ngens:
            raise ValueError("one image per source generator required")
        for i, img in enumerate(self.images):
            if img.ring != self.target:
                raise ValueError(f"image of generator {i} lives in the wrong ring")
            if not img.is_zero() and img.degree() != self.source.degree(i):
                raise ValueError(f"image of generator {i} has the wrong degree")

    def apply(self, f: GradedPoly) -> GradedPoly:
        if f.ring != self.source:
            raise ValueError("argument not in the source ring")
        out = self.target.zero()
        for m, c in f.terms.items():
            piece = self.target.constant(c)
            for idx, e in m:
                piece = multiply(piece, poly_power(self.images[idx], e))
            out = out + piece
        return out


def identity_morphism(ring: GradedRing) -> RingMorphism:
    return RingMorphism(ring, ring, tuple(ring.gen(i) for i in range(ring.ngens)))


def compose_morphisms(second: RingMorphism, first: RingMorphism) -> RingMorphism:
    """second o first (apply first, then second)."""
    if first.target != second.source:
        raise ValueError("morphisms not composable")
    return RingMorphism(first.source, second.target,
                        tuple(second.apply(img) for img in first.images))


def morphism_to_text(m: RingMorphism) -> str:
    lines = []
    for i, img in enumerate(m.images):
        lines.append(f"{m.source.generators[i].name} -> {poly_to_text(img)}")
    return "\n".join(lines)


@dataclass(frozen=True)
class Derivation:
    """Degree-d derivation fixed by generator images, extended by the graded
    Leibniz rule X(fg) = X(f) g + (-1)^{|X||f|} f X(g)."""

    ring: GradedRing
    degree: int
    images: tuple[GradedPoly, ...]

    def __post_init__(self):
        check_degree(self.degree)
        if len(self.images) != self.ring.ngens:
            raise ValueError("one image per generator required")
        for i, img in enumerate(self.images):
            if img.ring != self.ring:
                raise ValueError("derivation image in the wrong ring")
            if not img.is_zero() and img.degree() != self.ring.degree(i) + self.degree:
                raise ValueError(f"image of generator {i} has the wrong degree")

    def apply(self, f: GradedPoly) -> GradedPoly:
        out = self.ring.zero()
        for m, c in f.terms.items():
            factors = list(m)
            prefix_deg = 0
            for pos, (idx, e) in enumerate(factors):
                img = self.images[idx]
                if not img.is_zero():
                    sign = -1 if (self.degree * prefix_deg) % 2 else 1
                    left: Monomial = tuple(factors[:pos]) + (((idx, e - 1),) if e > 1 else ())
                    right: Monomial = tuple(factors[pos + 1:])
                    piece = GradedPoly(self.ring, {left: Fraction(sign * e) * c})
                    piece = multiply(multiply(piece, img), GradedPoly(self.ring, {right: Fraction(1)}))
                    out = out + piece
                prefix_deg += e * self.ring.degree(idx)
        return out


def derivation_apply(X: Derivation, f: GradedPoly) -> GradedPoly:
    return X.apply(f)


def partial(ring: GradedRing, idx: int) -> Derivation:
    """Left partial derivative with respect to generator idx."""
    images = tuple(ring.one() if j == idx else ring.zero() for j in range(ring.ngens))
    return Derivation(ring, -ring.degree(idx), images)


def derivation_bracket(X: Derivation, Y: Derivation) -> Derivation:
    """[X,Y] = X Y - (-1)^{|X||Y|} Y X, again a derivation."""
    if X.ring != Y.ring:
        raise ValueError("ring mismatch")
    sign = -1 if (X.degree * Y.degree) % 2 else 1
    images = tuple(X.apply(Y.images[i]) - Y.apply(X.images[i]).scale(sign)
                   for i in range(X.ring.ngens))
    return Derivation(X.ring, X.degree + Y.degree, images)


# --- coordinate rings of diamond-V and GL(V) -------------------------------

def dia_ring(V: GradedSpace, prefix: str = "z") -> GradedRing:
    """Coordinates z^lam on the graded domain of V: degree -|t_lam|."""
    return GradedRing(tuple(GradedVariable(f"{prefix}^{lab}", -d)
                            for lab, d in zip(V.labels, V.degrees)))


def gl_ring(V: GradedSpace, prefix: str = "y") -> GradedRing:
    """Coordinates y^lam_kap, degree |t_kap| - |t_lam|, registered row-major
    (lam outer, kap inner)."""
    gens = []
    for lam in range(V.dim):
        for kap in range(V.dim):
            gens.append(GradedVariable(f"{prefix}^{V.labels[lam]}_{V.labels[kap]}",
                                       V.degrees[kap] - V.degrees[lam]))
    return GradedRing(tuple(gens))


def gl_gen_index(V: GradedSpace, lam: int, kap: int) -> int:
    return lam * V.dim + kap


def endo_space(V: GradedSpace) -> GradedSpace:
    """gl(V) as a graded space with the standard basis Delta_lam^kap in
    row-major order; Delta_lam^kap has degree |t_lam| - |t_kap|."""
    labels, degrees = [], []
    for lam in range(V.dim):
        for kap in range(V.dim):
            labels.append(f"D[{V.labels[lam]},{V.labels[kap]}]")
            degrees.append(V.degrees[lam] - V.degrees[kap])
    return GradedSpace(tuple(labels), tuple(degrees))


def gl_point(ring: GradedRing, V: GradedSpace, A: GradedMap) -> dict[int, Fraction]:
    """Rational point of GL(V) from a degree-0 map: y^nu_lam(A) = A[lam][nu]
    on the degree-0 generators (the sign (-1)^{|t_lam|-|t_nu|} is +1 there)."""
    if A.degree != 0 or not A.is_endo() or A.domain != V:
        raise ValueError("points come from degree-0 endomorphisms")
    point = {}
    for nu in range(V.dim):
        for lam in range(V.dim):
            idx = gl_gen_index(V, nu, lam)
            if ring.degree(idx) == 0:
                point[idx] = A.entries[lam][nu]
    return point


# --- pullbacks --------------------------------------------------------------

def pullback_mu(V: GradedSpace) -> RingMorphism:
    """mu*(y^lam_kap) = u^nu_kap z^lam_nu, from the y-ring into the product of
    a z-copy (first group factor) and a u-copy (second group factor)."""
    yring = gl_ring(V, "y")
    zring = gl_ring(V, "z")
    uring = gl_ring(V, "u")
    target = product_ring(zring, uring)
    off = zring.ngens
    images = []
    for lam in range(V.dim):
        for kap in range(V.dim):
            img = target.zero()
            for nu in range(V.dim):
                u = target.gen(off + gl_gen_index(V, nu, kap))
                z = target.gen(gl_gen_index(V, lam, nu))
                img = img + multiply(u, z)
            images.append(img)
    return RingMorphism(yring, target, tuple(images))


def pullback_counit(V: GradedSpace) -> RingMorphism:
    """e*(y^lam_kap) = delta^lam_kap into the trivial ring."""
    yring = gl_ring(V, "y")
    trivial = GradedRing(())
    images = tuple(trivial.one() if lam == kap else trivial.zero()
                   for lam in range(V.dim) for kap in range(V.dim))
    return RingMorphism(yring, trivial, images)


def pullback_dia_map(A: GradedMap, domain_ring: GradedRing | None = None,
                     codomain_ring: GradedRing | None = None) -> RingMorphism:
    """Pullback of the promoted map: u^sig -> (-1)^{|s_sig|(|t_lam|-|s_sig|)}
    A[lam][sig] z^lam, a morphism from codomain coordinates to domain ones."""
    zring = domain_ring if domain_ring is not None else dia_ring(A.domain, "z")
    uring = codomain_ring if codomain_ring is not None else dia_ring(A.codomain, "u")
    if zring.ngens != A.domain.dim or uring.ngens != A.codomain.dim:
        raise ValueError("coordinate ring does not match the map's spaces")
    images = []
    for sig in range(A.codomain.dim):
        terms: dict[Monomial, Fraction] = {}
        for lam in range(A.domain.dim):
            v = A.entries[lam][sig]
            if v == 0:
                continue
            exp = A.codomain.degrees[sig] * (A.domain.degrees[lam] - A.codomain.degrees[sig])
            terms[((lam, 1),)] = (Fraction(-1) if exp % 2 else Fraction(1)) * v
        images.append(GradedPoly(zring, terms))
    return RingMorphism(uring, zring, tuple(images))


@dataclass(frozen=True)
class GradedBilinearMap:
    """beta(t_lam, s_sig) = coeffs[(lam, sig, rho)] x_rho, of a fixed degree."""

    left: GradedSpace
    right: GradedSpace
    target: GradedSpace
    degree: int
    coeffs: tuple[tuple[int, int, int, Fraction], ...]

    def __post_init__(self):
        check_degree(self.degree)
        for lam, sig, rho, v in self.coeffs:
            if v != 0 and (self.left.degrees[lam] + self.right.degrees[sig] + self.degree
                           != self.target.degrees[rho]):
                raise ValueError(f"bilinear coefficient ({lam},{sig},{rho}) off its degree block")


def composition_bilinear(V: GradedSpace) -> GradedBilinearMap:
    """The composition map gl(V) x gl(V) -> gl(V): Delta_rho^sig Delta_nu^mu =
    delta^sig_nu Delta_rho^mu."""
    E = endo_space(V)
    n = V.dim
    coeffs = []
    for rho in range(n):
        for sig in range(n):
            for mu in range(n):
                coeffs.append((gl_gen_index(V, rho, sig), gl_gen_index(V, sig, mu),
                               gl_gen_index(V, rho, mu), Fraction(1)))
    return GradedBilinearMap(E, E, E, 0, tuple(coeffs))


def evaluation_bilinear(V: GradedSpace) -> GradedBilinearMap:
    """The evaluation map gl(V) x V -> V: (Delta_lam^kap, t_nu) -> delta^kap_nu t_lam."""
    E = endo_space(V)
    coeffs = []
    for lam in range(V.dim):
        for kap in range(V.dim):
            coeffs.append((gl_gen_index(V, lam, kap), kap, lam, Fraction(1)))
    return GradedBilinearMap(E, V, V, 0, tuple(coeffs))


def pullback_dia_bilinear(b: GradedBilinearMap,
                          x_ring: GradedRing | None = None,
                          z_ring: GradedRing | None = None,
                          u_ring: GradedRing | None = None) -> RingMorphism:
    """x^rho -> (-1)^{|x_rho|(|t_lam|+|s_sig|-|x_rho|)} beta_{lam sig}^rho u^sig z^lam."""
    xring = x_ring if x_ring is not None else dia_ring(b.target, "x")
    zring = z_ring if z_ring is not None else dia_ring(b.left, "z")
    uring = u_ring if u_ring is not None else dia_ring(b.right, "u")
    target = product_ring(zring, uring)
    off = zring.ngens
    images = [target.zero() for _ in range(b.target.dim)]
    for lam, sig, rho, v in b.coeffs:
        if v == 0:
            continue
        xdeg = b.target.degrees[rho]
        exp = xdeg * (b.left.degrees[lam] + b.right.degrees[sig] - xdeg)
        sign = Fraction(-1) if exp % 2 else Fraction(1)
        u = target.gen(off + sig)
        z = target.gen(lam)
        images[rho] = images[rho] + multiply(u, z).scale(sign * v)
    return RingMorphism(xring, target, tuple(images))


def tau_tensor(beta: BilinearForm) -> dict[tuple[int, int, int, int], Fraction]:
    """T_{sig rho}^{lam kap} with tau(Delta_rho^sig) = T_{sig rho}^{lam kap} Delta_kap^lam."""
    V = beta.space
    degs = V.degrees
    gram = beta.gram
    ginv = inverse_form(beta).matrix
    out: dict[tuple[int, int, int, int], Fraction] = {}
    for sig in range(V.dim):
        for rho in range(V.dim):
            for lam in range(V.dim):
                if gram[lam][rho] == 0:
                    continue
                for kap in range(V.dim):
                    if ginv[sig][kap] == 0:
                        continue
                    exp = beta.ell * (degs[rho] - degs[lam] + 1) + degs[lam] * (degs[rho] - degs[sig])
                    s = Fraction(-1) if exp % 2 else Fraction(1)
                    out[(sig, rho, lam, kap)] = s * gram[lam][rho] * ginv[sig][kap]
    return out


def pullback_tau(beta: BilinearForm) -> RingMorphism:
    """tau*(y^kap_lam) = (-1)^{|t_lam| + |t_kap|(|t_rho|-|t_sig|-1) + ell(|t_rho|-|t_lam|+1)}
    g_{lam rho} g^{sig kap} y^rho_sig."""
    V = beta.space
    degs = V.degrees
    gram = beta.gram
    ginv = inverse_form(beta).matrix
    yring = gl_ring(V, "y")
    images = [yring.zero() for _ in range(yring.ngens)]
    for kap in range(V.dim):
        for lam in range(V.dim):
            img = yring.zero()
            for rho in range(V.dim):
                if gram[lam][rho] == 0:
                    continue
                for sig in range(V.dim):
                    if ginv[sig][kap] == 0:
                        continue
                    exp = (degs[lam] + degs[kap] * (degs[rho] - degs[sig] - 1)
                           + beta.ell * (degs[rho] - degs[lam] + 1))
                    s = Fraction(-1) if exp % 2 else Fraction(1)
                    img = img + yring.gen(gl_gen_index(V, rho, sig)).scale(s * gram[lam][rho] * ginv[sig][kap])
            images[gl_gen_index(V, kap, lam)] = img
    return RingMorphism(yring, yring, tuple(images))


def pullback_projector(beta: BilinearForm) -> RingMorphism:
    """p* = (id - tau*)/2, the pullback of the skew projector."""
    t = pullback_tau(beta)
    yring = t.source
    half = Fraction(1, 2)
    images = tuple((yring.gen(i) - t.images[i]).scale(half) for i in range(yring.ngens))
    return RingMorphism(yring, yring, images)


def pullback_chi0(beta: BilinearForm) -> RingMorphism:
    """chi0*(A -> tau(A) A), built as (tau, 1)* o mu*."""
    V = beta.space
    mu = pullback_mu(V)
    t = pullback_tau(beta)
    yring = t.source
    # (tau,1)*: first-factor coordinates z pull back to tau* images, u's to y's
    images = tuple(t.images) + tuple(yring.gen(i) for i in range(yring.ngens))
    tau_one = RingMorphism(mu.target, yring, images)
    return compose_morphisms(tau_one, mu)


def pullback_chi0_explicit(beta: BilinearForm) -> RingMorphism:
    """The closed formula for chi0*, kept as an independent oracle:
    chi0*(y^kap_lam) = (-1)^{|t_rho|-|t_sig|+|t_kap|+|t_alp|(|t_kap|-|t_lam|)+|t_kap||t_lam|}
    y^rho_sig T_{sig rho}^{alp kap} y^alp_lam."""
    V = beta.space
    degs = V.degrees
    T = tau_tensor(beta)
    yring = gl_ring(V, "y")
    images = [yring.zero() for _ in range(yring.ngens)]
    for kap in range(V.dim):
        for lam in range(V.dim):
            img = yring.zero()
            for (sig, rho, alp, kap2), tval in T.items():
                if kap2 != kap:
                    continue
                exp = (degs[rho] - degs[sig] + degs[kap] + degs[alp] * (degs[kap] - degs[lam])
                       + degs[kap] * degs[lam])
                s = Fraction(-1) if exp % 2 else Fraction(1)
                prod = multiply(yring.gen(gl_gen_index(V, rho, sig)),
                                yring.gen(gl_gen_index(V, alp, lam)))
                img = img + prod.scale(s * tval)
            images[gl_gen_index(V, kap, lam)] = img
    return RingMorphism(yring, yring, tuple(images))


def pullback_theta(V: GradedSpace) -> RingMorphism:
    """theta*(x^lam) = x^kap y^lam_kap: the tautological linear action, from
    the x-ring into (y-ring) x (x-ring)."""
    xring = dia_ring(V, "x")
    yring = gl_ring(V, "y")
    target = product_ring(yring, xring)
    off = yring.ngens
    images = []
    for lam in range(V.dim):
        img = target.zero()
        for kap in range(V.dim):
            img = img + multiply(target.gen(off + kap),
                                 target.gen(gl_gen_index(V, lam, kap)))
        images.append(img)
    return RingMorphism(xring, target, tuple(images))


def left_invariant_field(V: GradedSpace, A: GradedMap) -> Derivation:
    """x_A^L = (-1)^{|t_nu|-|t_kap|} A[kap][nu] y^lam_nu d/dy^lam_kap."""
    if not A.is_endo() or A.domain != V:
        raise ValueError("left-invariant field needs an endomorphism of V")
    yring = gl_ring(V, "y")
    images = []
    for lam in range(V.dim):
        for kap in range(V.dim):
            img = yring.zero()
            for nu in range(V.dim):
                v = A.entries[kap][nu]
                if v == 0:
                    continue
                s = Fraction(-1) if (V.degrees[nu] - V.degrees[kap]) % 2 else Fraction(1)
                img = img + yring.gen(gl_gen_index(V, lam, nu)).scale(s * v)
            images.append(img)
    return Derivation(yring, A.degree, tuple(images))


def jacobian_at_point(m: RingMorphism, point: dict[int, Fraction]) -> list[list[Fraction]]:
    """J[i][j] = d(m(gen_i))/d gen_j evaluated at the rational point (variables
    of nonzero degree evaluate to zero)."""
    out = []
    for i in range(m.source.ngens):
        img = m.images[i]
        row = []
        for j in range(m.target.ngens):
            row.append(evaluate_at_point(partial(m.target, j).apply(img), point))
        out.append(row)
    return out


def tangent_matrix(m: RingMorphism, V: GradedSpace, A: GradedMap) -> list[list[Fraction]]:
    """Matrix of the tangent map of the endomorphism-level map with pullback m,
    at the point A, in the frame paired with the standard basis: rows indexed by
    the input unit Delta_mu^nu, columns by the output unit Delta_kap^lam, via
    T[(mu,nu)][(kap,lam)] = (-1)^{|t_mu|-|t_nu|+|t_lam|-|t_kap|} J[(kap,lam)][(mu,nu)]."""
    J = jacobian_at_point(m, gl_point(m.target, V, A))
    n = V.dim
    degs = V.degrees
    out = [[Fraction(0)] * (n * n) for _ in range(n * n)]
    for mu in range(n):
        for nu in range(n):
            for kap in range(n):
                for lam in range(n):
                    exp = degs[mu] - degs[nu] + degs[lam] - degs[kap]
                    s = Fraction(-1) if exp % 2 else Fraction(1)
                    out[gl_gen_index(V, mu, nu)][gl_gen_index(V, kap, lam)] = \
                        s * J[gl_gen_index(V, kap, lam)][gl_gen_index(V, mu, nu)]
    return out


def extract_representation(theta_star: RingMorphism, V: GradedSpace,
                           split: int) -> RingMorphism:
    """Candidate rho* of a linear action: theta_star maps the x-ring of V into
    (group ring) x (x-copy), the x-copy generators starting at index `split`.
    Extraction: rho*(y^lam_kap) = [set x to 0](d/dx^kap theta*(x^lam)).
    Non-linear actions are rejected with the failing generator."""
    target = theta_star.target
    group_ring = GradedRing(target.generators[:split])
    n = V.dim
    if theta_star.source.ngens != n or target.ngens - split != n:
        raise ValueError("ring shapes do not match the space")
    for lam in range(n):
        for mono in theta_star.images[lam].terms:
            xlen = sum(e for idx, e in mono if idx >= split)
            if xlen != 1:
                raise ValueError(f"action is not linear in the coordinates: generator "
                                 f"{theta_star.source.generators[lam].name}")
    yring = gl_ring(V, "y")
    images = []
    for lam in range(n):
        for kap in range(n):
            d = partial(target, split + kap).apply(theta_star.images[lam])
            terms: dict[Monomial, Fraction] = {}
            for mono, c in d.terms.items():
                if any(idx >= split for idx, _ in mono):
                    continue  # 0_M* kills remaining x-dependence
                terms[mono] = c
            images.append(GradedPoly(group_ring, terms))
    return RingMorphism(yring, group_ring, tuple(images))
