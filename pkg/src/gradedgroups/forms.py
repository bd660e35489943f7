"""Degree-ell symmetric and skew bilinear forms on graded spaces.

Storage convention: the gram matrix holds g_{lam kap} = [flat(t_lam)](t_kap),
i.e. the matrix of the musical map flat: V -> V*.  The raw pairing value
g(t_lam, t_kap) differs from it by (-1)^{(|t_lam|+1) ell} (the flat sign).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .core import (BasisChange, GradedMap, GradedSpace, as_fraction, check_degree,
                   compose, degree_shift, double_dual_iso, dual_space, frac_str,
                   inverse_map, transpose)

SYMMETRIC = "symmetric"
SKEW = "skew"


class DegreeConstraintError(ValueError):
    """Raised when a degree bookkeeping precondition fails (distinct from a
    relation simply not holding)."""


def kind_sign(kind: str) -> int:
    if kind == SYMMETRIC:
        return 1
    if kind == SKEW:
        return -1
    raise ValueError(f"unknown form kind {kind!r}")


def flip_kind(kind: str) -> str:
    return SKEW if kind == SYMMETRIC else SYMMETRIC


@dataclass(frozen=True)
class BilinearForm:
    space: GradedSpace
    ell: int
    kind: str
    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        check_degree(self.ell)
        kind_sign(self.kind)
        n = self.space.dim
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise ValueError("gram matrix shape mismatch")
        degs = self.space.degrees
        eps = kind_sign(self.kind)
        for lam in range(n):
            for kap in range(n):
                v = self.gram[lam][kap]
                if v != 0 and degs[lam] + degs[kap] + self.ell != 0:
                    raise ValueError(f"gram entry ({lam},{kap}) outside degree support")
                sign = eps * (-1 if (degs[lam] * degs[kap] + self.ell) % 2 else 1)
                if self.gram[kap][lam] != sign * v:
                    raise ValueError(f"graded {self.kind} symmetry fails at ({lam},{kap})")

    def value(self, lam: int, kap: int) -> Fraction:
        """Raw pairing g(t_lam, t_kap)."""
        sign = -1 if ((self.space.degrees[lam] + 1) * self.ell) % 2 else 1
        return sign * self.gram[lam][kap]

    def evaluate(self, vec1: Sequence[Fraction], vec2: Sequence[Fraction]) -> Fraction:
        """Raw pairing extended R-bilinearly to coordinate vectors."""
        total = Fraction(0)
        for lam, a in enumerate(vec1):
            if a == 0:
                continue
            for kap, b in enumerate(vec2):
                if b != 0:
                    total += a * b * self.value(lam, kap)
        return total


def form_from_gram(space: GradedSpace, ell: int, kind: str, rows: Sequence[Sequence]) -> BilinearForm:
    return BilinearForm(space, ell, kind,
                        tuple(tuple(as_fraction(v) for v in row) for row in rows))


def form_from_pairings(space: GradedSpace, ell: int, kind: str,
                       pairings: dict[tuple[int, int], Fraction] | Sequence) -> BilinearForm:
    """Build a form from raw values g(t_lam, t_kap); symmetric partners are
    filled in automatically and cross-checked when both are given."""
    if not isinstance(pairings, dict):
        pairings = {(int(l), int(k)): as_fraction(v) for l, k, v in pairings}
    n = space.dim
    degs = space.degrees
    eps = kind_sign(kind)
    raw = [[None] * n for _ in range(n)]
    for (lam, kap), v in pairings.items():
        v = as_fraction(v)
        sign = eps * (-1 if ((degs[lam] + ell) * (degs[kap] + ell)) % 2 else 1)
        for (a, b), w in (((lam, kap), v), ((kap, lam), sign * v)):
            if raw[a][b] is not None and raw[a][b] != w:
                raise ValueError(f"inconsistent pairing entries at ({a},{b})")
            raw[a][b] = w
    gram = []
    for lam in range(n):
        fsign = -1 if ((degs[lam] + 1) * ell) % 2 else 1
        gram.append(tuple(fsign * (raw[lam][kap] or Fraction(0)) for kap in range(n)))
    return BilinearForm(space, ell, kind, tuple(gram))


def flat(beta: BilinearForm) -> GradedMap:
    """Musical map V -> V*, degree ell."""
    return GradedMap(beta.space, dual_space(beta.space), beta.ell, beta.gram)


@dataclass(frozen=True)
class InverseGram:
    form: BilinearForm
    matrix: tuple[tuple[Fraction, ...], ...]


@dataclass
class FormValidity:
    ok: bool
    problems: list[str] = field(default_factory=list)
    failed_block: int | None = None


def is_valid_form(beta: BilinearForm) -> FormValidity:
    """Degree support and graded symmetry hold by construction; this check
    additionally requires every degree block g_j to be square and invertible."""
    report = FormValidity(ok=True)
    gd = beta.space.gdim()
    for j in sorted(gd):
        partner = -(j + beta.ell)
        if gd.get(j, 0) != gd.get(partner, 0):
            report.ok = False
            report.failed_block = j
            report.problems.append(f"block dim mismatch: r_{j}={gd.get(j, 0)} vs r_{partner}={gd.get(partner, 0)}")
            return report
    for j in sorted(gd):
        rows = beta.space.indices_of_degree(j)
        cols = beta.space.indices_of_degree(-(j + beta.ell))
        block = [[beta.gram[r][c] for c in cols] for r in rows]
        if linalg.rank(block) != len(rows):
            report.ok = False
            report.failed_block = j
            report.problems.append(f"degenerate block g_{j}")
            return report
    return report


def inverse_form(beta: BilinearForm) -> InverseGram:
    """Matrix g^{rho alpha} fixed by (-1)^{ell(|t_lam|+|t_rho|+1)} g_{lam rho} g^{rho alpha} = delta."""
    n = beta.space.dim
    degs = beta.space.degrees
    signed = linalg.zeros(n, n)
    for lam in range(n):
        for rho in range(n):
            s = -1 if (beta.ell * (degs[lam] + degs[rho] + 1)) % 2 else 1
            signed[lam][rho] = s * beta.gram[lam][rho]
    try:
        inv = linalg.inverse(signed)
    except ValueError as exc:
        raise ValueError("singular form has no inverse gram") from exc
    return InverseGram(beta, tuple(tuple(row) for row in inv))


def sharp(beta: BilinearForm) -> GradedMap:
    """Map V* -> V with matrix g^{lam kap}, degree -ell."""
    inv = inverse_form(beta)
    return GradedMap(dual_space(beta.space), beta.space, -beta.ell, inv.matrix)


def shift_form(beta: BilinearForm, m: int) -> BilinearForm:
    """Degree shift: flat' = (-1)^{m ell} delta[m]^T flat delta[m] on V[m];
    degree ell + 2m, kind flips iff m is odd."""
    shifted, delta = degree_shift(beta.space, m)
    comp = compose(transpose(delta), compose(flat(beta), delta))
    if (m * beta.ell) % 2:
        comp = -comp
    kind = flip_kind(beta.kind) if m % 2 else beta.kind
    return BilinearForm(shifted, beta.ell + 2 * m, kind, comp.entries)


def dual_form(beta: BilinearForm) -> BilinearForm:
    """Inverse form on V*: flat' = chi o flat^{-1}; degree -ell, kind flips iff ell odd."""
    comp = compose(double_dual_iso(beta.space), inverse_map(flat(beta)))
    kind = flip_kind(beta.kind) if beta.ell % 2 else beta.kind
    return BilinearForm(dual_space(beta.space), -beta.ell, kind, comp.entries)


def relates(M: GradedMap, beta: BilinearForm, beta_p: BilinearForm, anti: bool = False) -> bool:
    """Isometry relation beta'(M v, M w) = (-1)^{|M|(|v|+ell+1)} beta(v, w)
    (extra -1 when anti).  Degree bookkeeping ell' + 2|M| = ell is a
    precondition and raises rather than returning False."""
    if M.domain != beta.space or M.codomain != beta_p.space:
        raise ValueError("relates: M must map beta's space to beta'_s space")
    if beta_p.ell + 2 * M.degree != beta.ell:
        raise DegreeConstraintError(
            f"degree constraint fails: ell'={beta_p.ell}, |M|={M.degree}, ell={beta.ell}")
    n = beta.space.dim
    degs = beta.space.degrees
    for lam in range(n):
        for kap in range(n):
            lhs = beta_p.evaluate(M.entries[lam], M.entries[kap])
            sign = -1 if (M.degree * (degs[lam] + beta.ell + 1)) % 2 else 1
            if anti:
                sign = -sign
            if lhs != sign * beta.value(lam, kap):
                return False
    return True


def negate_form(beta: BilinearForm) -> BilinearForm:
    return BilinearForm(beta.space, beta.ell, beta.kind,
                        tuple(tuple(-v for v in row) for row in beta.gram))


def transform_form(beta: BilinearForm, B: BasisChange) -> BilinearForm:
    """Gram matrix in the basis t'_lam = B[lam][kap] t_kap (same degrees)."""
    new = linalg.mat_mul(linalg.mat_mul([list(r) for r in B.matrix],
                                        [list(r) for r in beta.gram]),
                         linalg.transpose([list(r) for r in B.matrix]))
    return BilinearForm(beta.space, beta.ell, beta.kind, tuple(tuple(row) for row in new))


def form_to_json(beta: BilinearForm) -> dict:
    return {
        "ell": beta.ell,
        "kind": beta.kind,
        "entries": [[lam, kap, frac_str(v)]
                    for lam, row in enumerate(beta.gram)
                    for kap, v in enumerate(row) if v != 0],
    }


def form_from_json(space: GradedSpace, data: dict) -> BilinearForm:
    """Loader completes (skew-)symmetric partner entries and verifies consistency."""
    ell = int(data["ell"])
    kind = data.get("kind", SYMMETRIC)
    eps = kind_sign(kind)
    degs = space.degrees
    n = space.dim
    gram = [[None] * n for _ in range(n)]
    for lam, kap, val in data["entries"]:
        v = as_fraction(val)
        sign = eps * (-1 if (degs[lam] * degs[kap] + ell) % 2 else 1)
        for (a, b), w in (((lam, kap), v), ((kap, lam), sign * v)):
            if gram[a][b] is not None and gram[a][b] != w:
                raise ValueError(f"inconsistent form entries at ({a},{b})")
            gram[a][b] = w
    rows = tuple(tuple(gram[lam][kap] or Fraction(0) for kap in range(n)) for lam in range(n))
    return BilinearForm(space, ell, kind, rows)
