#!/usr/bin/env python3
"""Survey the standard forms and underlying groups of random graded forms.

For each form degree in a range and each kind, sample random nondegenerate
forms, standardize them exactly, and print the resulting block structure and
the underlying group (a GL product with an optional symplectic or indefinite
orthogonal middle factor).

Example:
    python scripts/standard_form_survey.py --min-ell -4 --max-ell 4 --per-cell 3
"""

import argparse
import sys

from gradedgroups import (SKEW, SYMMETRIC, decompose, shape, standardize,
                          underlying_group_dim)
from gradedgroups.standard import middle_symmetry_sign
from gradedgroups.samples import random_form, sample_rng


def describe_group(beta) -> str:
    sh = shape(beta.space, beta.ell)
    parts = []
    for j, r in sorted(sh.r, reverse=True):
        i = j - sh.k
        if i > 0 or (i == 0 and sh.epsilon == 1):
            parts.append(f"GL({r})")
        elif i == 0:
            if middle_symmetry_sign(beta.ell, beta.kind) == -1:
                parts.append(f"Sp({r})")
            else:
                rep = standardize(beta)
                p, q = rep.signature
                parts.append(f"O({p},{q})")
    return " x ".join(parts) if parts else "trivial"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--min-ell", type=int, default=-4)
    parser.add_argument("--max-ell", type=int, default=4)
    parser.add_argument("--per-cell", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-dim", type=int, default=6)
    args = parser.parse_args()

    for ell in range(args.min_ell, args.max_ell + 1):
        for kind in (SYMMETRIC, SKEW):
            for i in range(args.per_cell):
                rng = sample_rng(args.seed, 1000 * ell + 10 * i + (kind == SKEW))
                beta = random_form(rng, ell, kind, args.max_dim)
                report = standardize(beta)
                dim0 = decompose(beta)[1].degree_zero_dim()
                assert dim0 == underlying_group_dim(beta)
                degrees = ",".join(str(d) for d in beta.space.degrees)
                print(f"ell={ell:+d} {kind:9s} degrees=({degrees}): "
                      f"{len(report.pairs)} pairs, {len(report.middle)} middle, "
                      f"group {describe_group(beta)} (dim {dim0})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
