"""Standard form of a graded bilinear form and the underlying-group
factorization.

A nondegenerate degree-ell form on a graded space admits a basis of hyperbolic
pairs (t, tbar) with g(t, tbar) = 1 plus, when ell is even, a "middle" block in
the single self-paired degree k = -ell//2.  Over exact rationals the middle
block is diagonalized by congruence (no square roots), so diagonal entries d_a
stay rational and only their signs are normalized into a signature.

The degree-0 orthogonal maps of the form then factor into one invertible block
per degree level, with the blocks below the middle determined as inverse
transposes; the middle block lands in a symplectic or an indefinite-orthogonal
group depending on the parity data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .core import GradedMap, GradedSpace, make_space
from .forms import BilinearForm, form_from_pairings, is_valid_form, kind_sign

GL_KIND = "GL"
SP_KIND = "Sp"
ORTHOGONAL_KIND = "O"


@dataclass(frozen=True)
class FormShape:
    """Degree data of a form: ell = -2k + epsilon, block dims r_j, and the
    largest level i_bullet with r_{k + i_bullet} != 0."""

    ell: int
    k: int
    epsilon: int
    r: tuple[tuple[int, int], ...]  # (degree j, r_j), nonzero blocks only
    i_bullet: int
    ok: bool
    problem: str | None = None

    def r_at(self, j: int) -> int:
        return dict(self.r).get(j, 0)


def middle_symmetry_sign(ell: int, kind: str) -> int:
    """Ungraded symmetry sign of the form restricted to the middle degree
    k = -ell//2: +1 means plain symmetric, -1 means antisymmetric."""
    k = -(ell // 2)
    return kind_sign(kind) * (-1 if (k * k + ell) % 2 else 1)


def shape(space: GradedSpace, ell: int) -> FormShape:
    """Check the block-dimension condition r_{k+i} = r_{k-(i+epsilon)} and
    package the degree data; ok=False carries a diagnostic instead of raising."""
    k = -(ell // 2)
    eps = ell % 2
    gd = space.gdim()
    nonzero = tuple(sorted((j, r) for j, r in gd.items() if r))
    i_bullet = max((j - k for j, _ in nonzero), default=0)
    for j in set(gd) | {-(j + ell) for j in gd}:
        partner = -(j + ell)
        if gd.get(j, 0) != gd.get(partner, 0):
            return FormShape(ell, k, eps, nonzero, i_bullet, False,
                             f"block dim mismatch: r_{j}={gd.get(j, 0)} "
                             f"vs r_{partner}={gd.get(partner, 0)}")
    return FormShape(ell, k, eps, nonzero, i_bullet, True)


@dataclass(frozen=True)
class StandardBasisReport:
    """Result of standardize: a new ordered basis (rows of `matrix`, in the
    original coordinates) in which the form has hyperbolic pairing blocks and
    a diagonal or symplectic middle block."""

    form: BilinearForm
    new_space: GradedSpace
    matrix: tuple[tuple[Fraction, ...], ...]
    pairs: tuple[tuple[int, int], ...]          # (t index, tbar index) in new basis
    middle: tuple[tuple[int, Fraction], ...]    # (index in new basis, d_a)
    signature: tuple[int, int] | None           # (p, q) when middle is diagonal

    def standardized_form(self) -> BilinearForm:
        """The form expressed in the new basis (computed from raw values)."""
        raw = _raw_matrix(self.form)
        b = [list(row) for row in self.matrix]
        new_raw = linalg.mat_mul(linalg.mat_mul(b, raw), linalg.transpose(b))
        entries = {(a, c): v for a, row in enumerate(new_raw)
                   for c, v in enumerate(row) if v != 0}
        return form_from_pairings(self.new_space, self.form.ell, self.form.kind, entries)

    def expected_form(self) -> BilinearForm:
        """The predicted standard pattern: unit pairings plus diagonal d_a."""
        entries: dict[tuple[int, int], Fraction] = {}
        for it, ib in self.pairs:
            entries[(it, ib)] = Fraction(1)
        for ie, d in self.middle:
            entries[(ie, ie)] = d
        return form_from_pairings(self.new_space, self.form.ell, self.form.kind, entries)


def _raw_matrix(beta: BilinearForm) -> linalg.Matrix:
    n = beta.space.dim
    return [[beta.value(lam, kap) for kap in range(n)] for lam in range(n)]


def _pair_value(beta: BilinearForm, v, w) -> Fraction:
    return beta.evaluate(v, w)


def _vector_degree(space: GradedSpace, v) -> int:
    degs = {space.degrees[i] for i, c in enumerate(v) if c != 0}
    if len(degs) != 1:
        raise ValueError("expected a homogeneous nonzero vector")
    return degs.pop()


def _independent_homogeneous(space: GradedSpace, vectors) -> list[list[Fraction]]:
    """Extract a homogeneous basis of the span, degree block by degree block
    (echelonized per degree so homogeneity is preserved)."""
    by_degree: dict[int, list[list[Fraction]]] = {}
    for v in vectors:
        if any(c != 0 for c in v):
            by_degree.setdefault(_vector_degree(space, v), []).append(list(v))
    out: list[list[Fraction]] = []
    for d in sorted(by_degree, reverse=True):
        red, pivots = linalg.rref(by_degree[d])
        out.extend(red[: len(pivots)])
    return out


def standardize(beta: BilinearForm) -> StandardBasisReport:
    """Peel hyperbolic pairs (highest remaining degree first) and diagonalize
    or pair up the middle block, entirely over exact rationals.

    Postcondition (asserted): the form in the returned basis equals the
    predicted pattern, i.e. report.standardized_form() == report.expected_form().
    """
    V = beta.space
    sh = shape(V, beta.ell)
    if not sh.ok:
        raise ValueError(f"form shape violates the block-dimension condition: {sh.problem}")
    validity = is_valid_form(beta)
    if not validity.ok:
        raise ValueError(f"degenerate form: {'; '.join(validity.problems)}")
    k = sh.k
    mid_sign = middle_symmetry_sign(beta.ell, beta.kind)
    n = V.dim

    # Remaining basis of the current orthogonal complement, kept homogeneous.
    remaining: list[list[Fraction]] = [
        [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    remaining.sort(key=lambda v: -_vector_degree(V, v) if any(v) else 0)

    pair_vecs: list[tuple[list[Fraction], list[Fraction]]] = []
    middle_vecs: list[tuple[list[Fraction], Fraction]] = []

    while remaining:
        remaining.sort(key=lambda v: (-_vector_degree(V, v),))
        t = remaining[0]
        d = _vector_degree(V, t)
        is_middle = (beta.ell % 2 == 0) and d == k
        if is_middle and mid_sign == 1:
            # Diagonal middle: pick a vector with nonzero self-pairing.
            pool = [v for v in remaining if _vector_degree(V, v) == k]
            pivot = next((v for v in pool if _pair_value(beta, v, v) != 0), None)
            if pivot is None:
                v, w = next((v, w) for v in pool for w in pool
                            if v is not w and _pair_value(beta, v, w) != 0)
                pivot = [a + b for a, b in zip(v, w)]
            dd = _pair_value(beta, pivot, pivot)
            middle_vecs.append((pivot, dd))
            span = [pivot]
            gram = [[dd]]
        else:
            # Hyperbolic (or symplectic-middle) pair: find a partner with
            # g(t, u) != 0, rescale to g(t, tbar) = 1.
            u = next(v for v in remaining if v is not t and _pair_value(beta, t, v) != 0)
            c = _pair_value(beta, t, u)
            tbar = [a / c for a in u]
            pair_vecs.append((t, tbar))
            span = [t, tbar]
            gram = [[_pair_value(beta, a, b) for b in span] for a in span]
        # Project every remaining vector onto the orthogonal complement of span.
        projected = []
        for w in remaining:
            rhs = [[_pair_value(beta, s, w)] for s in span]
            coeffs = linalg.solve(gram, rhs)
            projected.append([wc - sum(coeffs[i][0] * span[i][j] for i in range(len(span)))
                              for j, wc in enumerate(w)])
        remaining = _independent_homogeneous(V, projected)

    # Order: all t's by degree descending, then the matching tbar's, then middle.
    pair_vecs.sort(key=lambda p: -_vector_degree(V, p[0]))
    rows: list[list[Fraction]] = []
    labels: list[tuple[str, int]] = []
    pairs = []
    for a, (t, _) in enumerate(pair_vecs):
        rows.append(t)
        labels.append((f"t{a + 1}", _vector_degree(V, t)))
    for a, (_, tbar) in enumerate(pair_vecs):
        rows.append(tbar)
        labels.append((f"tbar{a + 1}", _vector_degree(V, tbar)))
        pairs.append((a, len(pair_vecs) + a))
    middle = []
    for a, (e, dd) in enumerate(middle_vecs):
        middle.append((len(rows), dd))
        rows.append(e)
        labels.append((f"e{a + 1}", k))
    signature = None
    if beta.ell % 2 == 0 and mid_sign == 1:
        signature = (sum(1 for _, dd in middle if dd > 0),
                     sum(1 for _, dd in middle if dd < 0))

    new_space = make_space(labels)
    report = StandardBasisReport(beta, new_space,
                                 tuple(tuple(r) for r in rows),
                                 tuple(pairs), tuple(middle), signature)
    assert report.standardized_form() == report.expected_form(), \
        "standardized gram does not match the predicted pattern"
    return report


@dataclass(frozen=True)
class UnderlyingFactorization:
    """Blocks of a degree-0 orthogonal map in a standardized basis: one
    invertible matrix per level i (block acting on degree k + i), with the
    middle block (i = 0, even ell) constrained to Sp or O(p,q)."""

    ell: int
    kind: str
    blocks: tuple[tuple[int, tuple[tuple[Fraction, ...], ...]], ...]  # (level i, matrix)
    middle_kind: str
    signature: tuple[int, int] | None

    def block(self, i: int) -> linalg.Matrix:
        return [list(row) for row in dict(self.blocks)[i]]


def _level_indices(report: StandardBasisReport) -> dict[int, dict[str, list[int]]]:
    """New-basis indices per level i: the 'top' slots (degree k+i), the 'bar'
    slots (the paired partners), and the middle slots at i = 0."""
    V = report.form.space
    k = -(report.form.ell // 2)
    out: dict[int, dict[str, list[int]]] = {}
    degs = report.new_space.degrees
    for it, ib in report.pairs:
        i = degs[it] - k
        slot = out.setdefault(i, {"top": [], "bar": [], "mid": []})
        slot["top"].append(it)
        slot["bar"].append(ib)
    for ie, _ in report.middle:
        out.setdefault(0, {"top": [], "bar": [], "mid": []})["mid"].append(ie)
    return out


def _map_in_new_basis(report: StandardBasisReport, A: GradedMap) -> linalg.Matrix:
    b = [list(row) for row in report.matrix]
    return linalg.mat_mul(linalg.mat_mul(b, [list(r) for r in A.entries]),
                          linalg.inverse(b))


def _submatrix_standard(mat: linalg.Matrix, rows_in: list[int]) -> linalg.Matrix:
    """Matrix of the restriction to the listed slots, in the convention
    A(t_alpha) = M[beta][alpha] t_beta (columns index the input)."""
    return [[mat[a][b] for a in rows_in] for b in rows_in]


def _middle_gram(report: StandardBasisReport, slots: dict[str, list[int]]) -> linalg.Matrix:
    std = report.expected_form()
    idx = slots["top"] + slots["bar"] + slots["mid"]
    return [[std.value(a, b) for b in idx] for a in idx]


def factor_underlying(beta: BilinearForm, A: GradedMap,
                      report: StandardBasisReport | None = None) -> UnderlyingFactorization:
    """Factor a degree-0 orthogonal map into its per-level blocks in the
    standardized basis.  Verifies that the 'bar' blocks equal the inverse
    transposes of the 'top' blocks and that the middle block preserves the
    standard middle gram."""
    from .endo import orthogonality_check
    if A.degree != 0:
        raise ValueError("only degree-0 maps factor through the underlying group")
    if not orthogonality_check(beta, A):
        raise ValueError("map is not orthogonal with respect to the form")
    if report is None:
        report = standardize(beta)
    mat = _map_in_new_basis(report, A)
    levels = _level_indices(report)
    mid_sign = middle_symmetry_sign(beta.ell, beta.kind)
    blocks = []
    middle_kind = GL_KIND
    for i in sorted(levels, reverse=True):
        slots = levels[i]
        if i == 0 and beta.ell % 2 == 0:
            idx = slots["top"] + slots["bar"] + slots["mid"]
            block = _submatrix_standard(mat, idx)
            gram = _middle_gram(report, slots)
            check = linalg.mat_mul(linalg.mat_mul(linalg.transpose(block), gram), block)
            if check != gram:
                raise ValueError("middle block fails its orthogonality condition")
            middle_kind = SP_KIND if mid_sign == -1 else ORTHOGONAL_KIND
        else:
            block = _submatrix_standard(mat, slots["top"])
            bar = _submatrix_standard(mat, slots["bar"])
            expected_bar = linalg.transpose(linalg.inverse(block))
            if bar != expected_bar:
                raise ValueError(f"level {i} partner block is not the inverse transpose")
        blocks.append((i, tuple(tuple(row) for row in block)))
    # Off-block entries must vanish for a degree-0 map; degrees enforce this
    # except between same-degree slots, which the level grouping covers by
    # construction (each degree belongs to exactly one level).
    return UnderlyingFactorization(beta.ell, beta.kind, tuple(blocks),
                                   middle_kind, report.signature)


def reconstruct_underlying(beta: BilinearForm, fact: UnderlyingFactorization,
                           report: StandardBasisReport | None = None) -> GradedMap:
    """Inverse of factor_underlying: rebuild the degree-0 orthogonal map from
    its blocks (standardize is deterministic, so the basis is reproducible)."""
    if report is None:
        report = standardize(beta)
    V = beta.space
    n = V.dim
    levels = _level_indices(report)
    mat = [[Fraction(0)] * n for _ in range(n)]  # in the new basis
    for i, block_t in fact.blocks:
        block = [list(row) for row in block_t]
        slots = levels[i]
        if i == 0 and beta.ell % 2 == 0:
            idx = slots["top"] + slots["bar"] + slots["mid"]
            for a, ra in enumerate(idx):
                for b, rb in enumerate(idx):
                    mat[rb][ra] = block[a][b]
        else:
            bar = linalg.transpose(linalg.inverse(block))
            for a, ra in enumerate(slots["top"]):
                for b, rb in enumerate(slots["top"]):
                    mat[rb][ra] = block[a][b]
            for a, ra in enumerate(slots["bar"]):
                for b, rb in enumerate(slots["bar"]):
                    mat[rb][ra] = bar[a][b]
    b = [list(row) for row in report.matrix]
    orig = linalg.mat_mul(linalg.mat_mul(linalg.inverse(b), mat), b)
    return GradedMap(V, V, 0, tuple(tuple(row) for row in orig))


def multiply_factorizations(f1: UnderlyingFactorization,
                            f2: UnderlyingFactorization) -> UnderlyingFactorization:
    """Blockwise product; factor_underlying is a homomorphism onto these."""
    d2 = dict(f2.blocks)
    blocks = []
    for i, b1 in f1.blocks:
        prod = linalg.mat_mul([list(r) for r in b1], [list(r) for r in d2[i]])
        blocks.append((i, tuple(tuple(row) for row in prod)))
    return UnderlyingFactorization(f1.ell, f1.kind, tuple(blocks),
                                   f1.middle_kind, f1.signature)


def underlying_group_dim(beta: BilinearForm) -> int:
    """Dimension of the underlying group: one GL(r_{k+i}) per positive level
    (per level i >= 0 when ell is odd), plus Sp(r_k) or O(p,q) for the middle."""
    sh = shape(beta.space, beta.ell)
    if not sh.ok:
        raise ValueError(sh.problem)
    total = 0
    for j, r in sh.r:
        i = j - sh.k
        if i > 0 or (i == 0 and sh.epsilon == 1):
            total += r * r
        elif i == 0:
            if middle_symmetry_sign(beta.ell, beta.kind) == -1:
                total += r * (r + 1) // 2
            else:
                total += r * (r - 1) // 2
    return total


def factorization_to_json(fact: UnderlyingFactorization) -> dict:
    from .core import frac_str
    return {
        "ell": fact.ell,
        "kind": fact.kind,
        "middleKind": fact.middle_kind,
        "signature": list(fact.signature) if fact.signature is not None else None,
        "blocks": [{"level": i, "matrix": [[frac_str(v) for v in row] for row in block]}
                   for i, block in fact.blocks],
    }


def report_to_json(report: StandardBasisReport) -> dict:
    from .core import frac_str
    return {
        "degrees": list(report.new_space.degrees),
        "labels": list(report.new_space.labels),
        "pairs": [list(p) for p in report.pairs],
        "middle": [[i, frac_str(d)] for i, d in report.middle],
        "signature": list(report.signature) if report.signature is not None else None,
        "changeOfBasis": [[frac_str(v) for v in row] for row in report.matrix],
    }
