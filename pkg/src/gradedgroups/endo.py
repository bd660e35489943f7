"""The graded Lie algebra gl(V): standard basis, graded commutator, the tau
involution of a bilinear form, the Sym/skew eigenspace decomposition, the
L map of the regular-value argument, and conjugation isomorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .core import (GradedMap, GradedSpace, compose, identity_map, inverse_map,
                   matrix_unit, transpose, zero_map)
from .forms import BilinearForm, flat, inverse_form, sharp

SYM_TAG = "Sym"
SKEW_TAG = "Skew"


def standard_basis(V: GradedSpace) -> list[tuple[int, int]]:
    """Index pairs (lam, kap) naming the matrix units Delta_lam^kap, in a
    fixed order (row-major over the basis)."""
    return [(lam, kap) for lam in range(V.dim) for kap in range(V.dim)]


def commutator(A: GradedMap, B: GradedMap) -> GradedMap:
    """[A,B] = AB - (-1)^{|A||B|} BA."""
    if not (A.is_endo() and B.is_endo() and A.domain == B.domain):
        raise ValueError("commutator needs endomorphisms of one space")
    sign = Fraction(-1 if (A.degree * B.degree) % 2 else 1)
    return compose(A, B) - compose(B, A).scale(sign)


def tau(beta: BilinearForm, A: GradedMap) -> GradedMap:
    """tau(A) = (-1)^{ell |A|} g^{-1} A^T g, computed from the gram matrices:
    tau(Delta_rho^sigma) = (-1)^{ell(|t_rho|-|t_lam|+1) + |t_lam|(|t_rho|-|t_sigma|)}
    g_{lam rho} g^{sigma kap} Delta_kap^lam."""
    V = beta.space
    if A.domain != V or A.codomain != V:
        raise ValueError("tau needs an endomorphism of the form's space")
    degs = V.degrees
    gram = beta.gram
    ginv = inverse_form(beta).matrix
    n = V.dim
    out = [[Fraction(0)] * n for _ in range(n)]
    for sig in range(n):
        for rho in range(n):
            coeff = A.entries[sig][rho]  # coefficient of Delta_rho^sigma in A
            if coeff == 0:
                continue
            for lam in range(n):
                if gram[lam][rho] == 0:
                    continue
                for kap in range(n):
                    if ginv[sig][kap] == 0:
                        continue
                    exp = beta.ell * (degs[rho] - degs[lam] + 1) + degs[lam] * (degs[rho] - degs[sig])
                    s = -1 if exp % 2 else 1
                    # Delta_kap^lam sends t_lam to t_kap: entry (lam, kap)
                    out[lam][kap] += s * coeff * gram[lam][rho] * ginv[sig][kap]
    return GradedMap(V, V, A.degree, tuple(tuple(row) for row in out))


def tau_compositional(beta: BilinearForm, A: GradedMap) -> GradedMap:
    """The defining composite (-1)^{ell|A|} sharp o A^T o flat; retained as the
    independent oracle for the coordinate formula."""
    comp = compose(sharp(beta), compose(transpose(A), flat(beta)))
    if (beta.ell * A.degree) % 2:
        comp = -comp
    return comp


def tau_antihom_check(beta: BilinearForm, A: GradedMap, B: GradedMap) -> bool:
    """tau(AB) = (-1)^{|A||B|} tau(B) tau(A), exactly."""
    lhs = tau(beta, compose(A, B))
    rhs = compose(tau(beta, B), tau(beta, A))
    if (A.degree * B.degree) % 2:
        rhs = -rhs
    return lhs == rhs


def is_in_sym(beta: BilinearForm, A: GradedMap) -> bool:
    """gA = (-1)^{ell|A|} A^T g (symmetric with respect to the form)."""
    lhs = compose(flat(beta), A)
    rhs = compose(transpose(A), flat(beta))
    if (beta.ell * A.degree) % 2:
        rhs = -rhs
    return lhs == rhs


def is_in_skew(beta: BilinearForm, A: GradedMap) -> bool:
    """gA = -(-1)^{ell|A|} A^T g (skew-symmetric with respect to the form)."""
    lhs = compose(flat(beta), A)
    rhs = compose(transpose(A), flat(beta))
    if (beta.ell * A.degree) % 2:
        rhs = -rhs
    return lhs == -rhs


@dataclass(frozen=True)
class EndoSubspace:
    tag: str
    basis: tuple[GradedMap, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree_zero_dim(self) -> int:
        return sum(1 for A in self.basis if A.degree == 0)


def _echelon_maps(V: GradedSpace, maps: list[GradedMap]) -> list[GradedMap]:
    """Echelonized basis of the span, working degree by degree so each output
    map stays homogeneous."""
    n = V.dim
    by_degree: dict[int, list[GradedMap]] = {}
    for A in maps:
        if not A.is_zero():
            by_degree.setdefault(A.degree, []).append(A)
    out: list[GradedMap] = []
    for d in sorted(by_degree):
        rows = [[A.entries[i][j] for i in range(n) for j in range(n)] for A in by_degree[d]]
        red, pivots = linalg.rref(rows)
        for r in range(len(pivots)):
            entries = tuple(tuple(red[r][i * n + j] for j in range(n)) for i in range(n))
            out.append(GradedMap(V, V, d, entries))
    return out


def decompose(beta: BilinearForm) -> tuple[EndoSubspace, EndoSubspace]:
    """gl(V) = Sym + skew as the +1/-1 eigenspaces of tau, via the projectors
    p_pm = (id pm tau)/2 applied to the standard basis."""
    V = beta.space
    half = Fraction(1, 2)
    plus, minus = [], []
    for lam, kap in standard_basis(V):
        delta = matrix_unit(V, lam, kap)
        t = tau(beta, delta)
        plus.append((delta + t).scale(half))
        minus.append((delta - t).scale(half))
    sym = EndoSubspace(SYM_TAG, tuple(_echelon_maps(V, plus)))
    skew = EndoSubspace(SKEW_TAG, tuple(_echelon_maps(V, minus)))
    return sym, skew


def skew_closed_under_bracket(beta: BilinearForm, A: GradedMap, B: GradedMap) -> bool:
    if not (is_in_skew(beta, A) and is_in_skew(beta, B)):
        raise ValueError("both arguments must be skew with respect to the form")
    return is_in_skew(beta, commutator(A, B))


def L_map(beta: BilinearForm, A: GradedMap, X: GradedMap) -> GradedMap:
    """L_A(X) = tau(A) X + tau(X) A."""
    return compose(tau(beta, A), X) + compose(tau(beta, X), A)


def L_matrix(beta: BilinearForm, A: GradedMap) -> linalg.Matrix:
    """Matrix of L_A on gl(V) in the standard basis order, rows indexed by the
    input unit Delta_mu^nu, columns by the output unit Delta_kap^lam."""
    V = beta.space
    n = V.dim
    units = standard_basis(V)
    rows = []
    for mu, nu in units:
        img = L_map(beta, A, matrix_unit(V, mu, nu))
        # coefficient of Delta_kap^lam in img is img.entries[lam][kap]
        rows.append([img.entries[lam][kap] for kap, lam in units])
    return rows


def orthogonality_check(beta: BilinearForm, A: GradedMap) -> bool:
    """Exact test A^T g A = g for a degree-0 endomorphism."""
    if A.degree != 0:
        raise ValueError("orthogonality is a degree-0 condition")
    return compose(transpose(A), compose(flat(beta), A)) == flat(beta)


def conjugation_eta(M: GradedMap, A: GradedMap) -> GradedMap:
    """eta(A) = (-1)^{|A||M|} M A M^{-1} for an isomorphism M: V -> W."""
    if A.domain != M.domain or not A.is_endo():
        raise ValueError("eta needs an endomorphism of M's domain")
    out = compose(M, compose(A, inverse_map(M)))
    if (A.degree * M.degree) % 2:
        out = -out
    return out
