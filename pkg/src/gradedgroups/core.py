"""Z-graded vector spaces with ordered total bases, and graded linear maps.

A space is an ordered list of labeled basis vectors with integer degrees.
A map of degree d stores the matrix A[lam][sig] of A(t_lam) = A[lam][sig] s_sig;
the entry is forced to zero unless deg(t_lam) - deg(s_sig) + d = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg

# Degrees are checked against a 64-bit window: overflow is an error, not wrap.
DEGREE_BOUND = 2**63


def check_degree(d: int) -> int:
    if not isinstance(d, int) or isinstance(d, bool):
        raise TypeError(f"degree must be an integer, got {d!r}")
    if not -DEGREE_BOUND <= d < DEGREE_BOUND:
        raise OverflowError(f"degree {d} outside 64-bit window")
    return d


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def frac_str(x: Fraction) -> str:
    """Canonical "p/q" text form, lowest terms, q > 0; integers stay bare."""
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class GradedSpace:
    labels: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.degrees):
            raise ValueError("labels and degrees length mismatch")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate basis labels")
        for d in self.degrees:
            check_degree(d)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def gdim(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for d in self.degrees:
            counts[d] = counts.get(d, 0) + 1
        return counts

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def indices_of_degree(self, d: int) -> list[int]:
        return [i for i, deg in enumerate(self.degrees) if deg == d]


def make_space(degree_list: Iterable, prefix: str = "t") -> GradedSpace:
    """Build a space from a list of degrees or (label, degree) pairs."""
    labels: list[str] = []
    degrees: list[int] = []
    for i, item in enumerate(degree_list):
        if isinstance(item, (tuple, list)):
            lab, deg = item
        else:
            lab, deg = f"{prefix}{i + 1}", item
        labels.append(str(lab))
        degrees.append(check_degree(int(deg)))
    return GradedSpace(tuple(labels), tuple(degrees))


def neg_dim(d: dict[int, int]) -> dict[int, int]:
    """(neg r)_j = r_{-j}."""
    return {-j: r for j, r in d.items() if r != 0}


def dual_space(V: GradedSpace) -> GradedSpace:
    return GradedSpace(tuple(f"{lab}*" for lab in V.labels), tuple(-d for d in V.degrees))


@dataclass(frozen=True)
class GradedMap:
    domain: GradedSpace
    codomain: GradedSpace
    degree: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        check_degree(self.degree)
        if len(self.entries) != self.domain.dim:
            raise ValueError("entry rows do not match domain dimension")
        for lam, row in enumerate(self.entries):
            if len(row) != self.codomain.dim:
                raise ValueError("entry row does not match codomain dimension")
            for sig, val in enumerate(row):
                if not isinstance(val, Fraction):
                    raise TypeError("entries must be Fractions")
                if val != 0 and self.domain.degrees[lam] - self.codomain.degrees[sig] + self.degree != 0:
                    raise ValueError(
                        f"degree-block violation at ({lam},{sig}): "
                        f"|t|={self.domain.degrees[lam]} |s|={self.codomain.degrees[sig]} |A|={self.degree}"
                    )

    def matrix(self) -> linalg.Matrix:
        return [list(row) for row in self.entries]

    def is_endo(self) -> bool:
        return self.domain == self.codomain

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if (self.domain, self.codomain, self.degree) != (other.domain, other.codomain, other.degree):
            raise ValueError("cannot add maps of different type")
        rows = tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries))
        return GradedMap(self.domain, self.codomain, self.degree, rows)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> "GradedMap":
        c = as_fraction(c)
        rows = tuple(tuple(c * a for a in row) for row in self.entries)
        return GradedMap(self.domain, self.codomain, self.degree, rows)

    def __neg__(self) -> "GradedMap":
        return self.scale(Fraction(-1))

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)


def graded_map(domain: GradedSpace, codomain: GradedSpace, degree: int, rows: Sequence[Sequence]) -> GradedMap:
    return GradedMap(domain, codomain, degree,
                     tuple(tuple(as_fraction(v) for v in row) for row in rows))


def zero_map(domain: GradedSpace, codomain: GradedSpace, degree: int) -> GradedMap:
    rows = tuple(tuple(Fraction(0) for _ in range(codomain.dim)) for _ in range(domain.dim))
    return GradedMap(domain, codomain, degree, rows)


def identity_map(V: GradedSpace) -> GradedMap:
    rows = tuple(tuple(Fraction(1 if i == j else 0) for j in range(V.dim)) for i in range(V.dim))
    return GradedMap(V, V, 0, rows)


def matrix_unit(V: GradedSpace, lam: int, kap: int) -> GradedMap:
    """Standard basis endomorphism sending t_kap to t_lam, all else to zero."""
    deg = V.degrees[lam] - V.degrees[kap]
    rows = [[Fraction(0)] * V.dim for _ in range(V.dim)]
    rows[kap][lam] = Fraction(1)
    return GradedMap(V, V, deg, tuple(tuple(r) for r in rows))


def compose(A: GradedMap, B: GradedMap) -> GradedMap:
    """A after B.  Entries (AB)[lam][sig] = sum_nu B[lam][nu] A[nu][sig]."""
    if B.codomain != A.domain:
        raise ValueError("compose: codomain of B must equal domain of A")
    prod = linalg.mat_mul(B.matrix(), A.matrix())
    return GradedMap(B.domain, A.codomain, A.degree + B.degree,
                     tuple(tuple(row) for row in prod))


def transpose(A: GradedMap) -> GradedMap:
    """Transpose between duals: [A^T(xi)](v) = (-1)^{|A||xi|} xi(A(v))."""
    dom = dual_space(A.codomain)
    cod = dual_space(A.domain)
    rows = []
    for sig in range(A.codomain.dim):
        sign = -1 if (A.degree * A.codomain.degrees[sig]) % 2 else 1
        rows.append(tuple(sign * A.entries[lam][sig] for lam in range(A.domain.dim)))
    return GradedMap(dom, cod, A.degree, tuple(rows))


def inverse_map(A: GradedMap) -> GradedMap:
    """Inverse of an isomorphism of any degree; plain matrix inverse, no signs."""
    inv = linalg.inverse(A.matrix())
    return GradedMap(A.codomain, A.domain, -A.degree, tuple(tuple(row) for row in inv))


def double_dual_iso(V: GradedSpace) -> GradedMap:
    """Canonical chi: V -> V**, [chi(v)](xi) = (-1)^{|v||xi|} xi(v)."""
    ddual = dual_space(dual_space(V))
    rows = [[Fraction(0)] * V.dim for _ in range(V.dim)]
    for lam, d in enumerate(V.degrees):
        rows[lam][lam] = Fraction(-1 if d % 2 else 1)
    return GradedMap(V, ddual, 0, tuple(tuple(r) for r in rows))


def degree_shift(V: GradedSpace, m: int) -> tuple[GradedSpace, GradedMap]:
    """Shifted space V[m] with (V[m])_j = V_{j+m} and the canonical iso delta[m]."""
    check_degree(m)
    shifted = GradedSpace(
        tuple(lab if m == 0 else f"{lab}[{m}]" for lab in V.labels),
        tuple(check_degree(d - m) for d in V.degrees),
    )
    rows = tuple(tuple(Fraction(1 if i == j else 0) for j in range(V.dim)) for i in range(V.dim))
    delta = GradedMap(shifted, V, m, rows)
    return shifted, delta


@dataclass(frozen=True)
class BasisChange:
    """t'_lam = B[lam][kap] t_kap; degree-0 block structure, invertible."""

    space: GradedSpace
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = self.space.dim
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError("basis-change matrix shape mismatch")
        for lam in range(n):
            for kap in range(n):
                if self.matrix[lam][kap] != 0 and self.space.degrees[lam] != self.space.degrees[kap]:
                    raise ValueError("basis change must preserve degrees")
        if linalg.det([list(r) for r in self.matrix]) == 0:
            raise ValueError("singular basis change")


def basis_change(space: GradedSpace, rows: Sequence[Sequence]) -> BasisChange:
    return BasisChange(space, tuple(tuple(as_fraction(v) for v in row) for row in rows))


def change_basis(V: GradedSpace, B: BasisChange, new_labels: Sequence[str] | None = None):
    """New space and forward/backward coordinate matrices.

    Old coordinates in terms of new: z^lam = sum_kap fwd[lam][kap] z'^kap, where
    fwd[lam][kap] = (-1)^{d_lam (d_kap - d_lam)} B[kap][lam].  The sign exponent
    vanishes whenever the entry is admissible (equal degrees); asserted here.
    """
    if B.space != V:
        raise ValueError("basis change belongs to a different space")
    labels = tuple(new_labels) if new_labels is not None else tuple(f"{lab}'" for lab in V.labels)
    new_space = GradedSpace(labels, V.degrees)
    n = V.dim
    fwd = linalg.zeros(n, n)
    for lam in range(n):
        for kap in range(n):
            if B.matrix[kap][lam] == 0:
                continue
            sign = -1 if (V.degrees[lam] * (V.degrees[kap] - V.degrees[lam])) % 2 else 1
            assert sign == 1, "coordinate-transform sign must vanish on admissible entries"
            fwd[lam][kap] = sign * B.matrix[kap][lam]
    bwd = linalg.inverse(fwd)
    return new_space, fwd, bwd


# JSON-compatible text forms: degrees as integers, rationals as "p/q".

def space_to_json(V: GradedSpace) -> dict:
    return {"basis": [[lab, d] for lab, d in zip(V.labels, V.degrees)]}


def space_from_json(data: dict) -> GradedSpace:
    return make_space([(lab, d) for lab, d in data["basis"]])


def map_to_json(A: GradedMap) -> dict:
    return {
        "domain": space_to_json(A.domain),
        "codomain": space_to_json(A.codomain),
        "degree": A.degree,
        "entries": [[lam, sig, frac_str(v)]
                    for lam, row in enumerate(A.entries)
                    for sig, v in enumerate(row) if v != 0],
    }


def map_from_json(data: dict) -> GradedMap:
    dom = space_from_json(data["domain"])
    cod = space_from_json(data["codomain"])
    rows = [[Fraction(0)] * cod.dim for _ in range(dom.dim)]
    for lam, sig, val in data["entries"]:
        rows[lam][sig] = as_fraction(val)
    return GradedMap(dom, cod, int(data["degree"]), tuple(tuple(r) for r in rows))
