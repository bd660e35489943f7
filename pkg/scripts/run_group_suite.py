#!/usr/bin/env python3
"""Run the randomized group-law suite over the bundled example spaces.

Example:
    python scripts/run_group_suite.py --samples 50 --seed 1 --truncation 4
"""

import argparse
import sys
import time
from fractions import Fraction

from gradedgroups import (SKEW, SYMMETRIC, form_from_pairings, group_suite,
                          make_algebra, make_space)


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
    return [("hyperbolic pair (degrees 1,-1)", e1),
            ("odd pair (degrees 0,1, degree -1 form)", odd),
            ("Euclidean plane", r2_sym),
            ("symplectic plane", r2_skew),
            ("mixed dim-4 (degrees 1,1,0,0, degree -1 form)", mixed)]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=25)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--truncation", type=int, default=4)
    args = parser.parse_args()

    algebra = make_algebra([("a", 2), ("b", -2), ("c", 1), ("d", -1)],
                           args.truncation)
    failures = 0
    for name, beta in example_forms():
        started = time.time()
        result = group_suite(beta.space, beta, algebra,
                             samples=args.samples, seed=args.seed)
        status = "ok" if result["ok"] else "FAIL"
        print(f"{name}: {status} ({args.samples} samples, "
              f"{time.time() - started:.1f}s)")
        for f in result["failures"]:
            print(f"    {f['check']} at sample {f['sample']}: {f['detail']}")
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
