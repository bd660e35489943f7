"""Command-line interface.

Subcommands:
  inspect        print degree data, shape, form validity and subalgebra dims
  verify         run the exact verification suites; exit 0 iff all pass
  pullback       print a coordinate pullback (mu, tau, chi0 or theta) as text
  standard-form  compute the standard basis of the configured form
  decompose      factor a degree-0 orthogonal matrix into underlying blocks

Exit codes: 0 = pass, 1 = verification failure, 2 = input error.
All randomized suites take an explicit --seed (default 0); output is
deterministic given (config, seed).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .core import (GradedMap, GradedSpace, as_fraction, compose, identity_map,
                   map_from_json, matrix_unit, space_from_json)
from .endo import (L_matrix, decompose as endo_decompose, standard_basis, tau,
                   tau_antihom_check, tau_compositional)
from .forms import BilinearForm, form_from_json, is_valid_form
from .points import group_suite, make_algebra
from .ring import (compose_morphisms, derivation_bracket, gl_ring,
                   left_invariant_field, morphism_to_text, pullback_chi0,
                   pullback_mu, pullback_projector, pullback_tau,
                   pullback_theta, tangent_matrix)
from .samples import random_orthogonal_map, sample_rng
from .standard import (factor_underlying, factorization_to_json,
                       report_to_json, shape, standardize,
                       underlying_group_dim)


class InputError(Exception):
    """Config or argument problem: maps to exit code 2."""


def load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"config is not valid JSON: {exc}") from exc


def parse_space(config: dict) -> GradedSpace:
    if "space" not in config:
        raise InputError("config field 'space' is required")
    try:
        return space_from_json(config["space"])
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"config field 'space': {exc}") from exc


def parse_form(config: dict, space: GradedSpace) -> BilinearForm | None:
    if "form" not in config or config["form"] is None:
        return None
    try:
        return form_from_json(space, config["form"])
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"config field 'form': {exc}") from exc


def parse_algebra(config: dict, truncation: int):
    data = config.get("algebra") or {}
    gens = [(str(name), int(deg)) for name, deg in
            data.get("generators", [["a", 2], ["b", -2], ["c", 1], ["d", -1]])]
    try:
        return make_algebra(gens, int(data.get("truncation", truncation)))
    except (ValueError, TypeError) as exc:
        raise InputError(f"config field 'algebra': {exc}") from exc


def emit(payload: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_inspect(args) -> int:
    config = load_config(args.config)
    space = parse_space(config)
    beta = parse_form(config, space)
    lines = []
    gd = space.gdim()
    lines.append("gdim: " + (", ".join(f"r_{j}={r}" for j, r in sorted(gd.items()))
                            or "(empty)"))
    payload: dict = {"gdim": {str(j): r for j, r in sorted(gd.items())}, "dim": space.dim}
    ok = True
    if beta is not None:
        sh = shape(space, beta.ell)
        validity = is_valid_form(beta)
        payload["shape"] = {"k": sh.k, "epsilon": sh.epsilon, "iBullet": sh.i_bullet,
                            "ok": sh.ok, "problem": sh.problem}
        payload["formValid"] = validity.ok
        payload["formProblems"] = validity.problems
        lines.append(f"shape: k={sh.k} epsilon={sh.epsilon} i_bullet={sh.i_bullet}"
                     + ("" if sh.ok else f"  FAIL: {sh.problem}"))
        lines.append("form valid: " + ("yes" if validity.ok else
                                       "no (" + "; ".join(validity.problems) + ")"))
        ok = sh.ok and validity.ok
        if ok:
            sym, skew = endo_decompose(beta)
            payload["dimSym"] = sym.dim
            payload["dimSkew"] = skew.dim
            payload["underlyingGroupDim"] = underlying_group_dim(beta)
            lines.append(f"dim Sym = {sym.dim}, dim skew subalgebra = {skew.dim}, "
                         f"underlying group dim = {underlying_group_dim(beta)}")
    payload["ok"] = ok
    emit(payload, args.format, lines)
    return 0 if ok else 1


def _verify_checks(space, beta, algebra, seed, samples):
    """Yield (name, passed, detail) for each suite."""
    validity = is_valid_form(beta)
    yield ("form validity", validity.ok, "; ".join(validity.problems))
    if not validity.ok:
        return

    units = [matrix_unit(space, lam, kap) for lam, kap in standard_basis(space)]
    ok = all(tau(beta, tau(beta, u)) == u for u in units)
    yield ("tau involution on matrix units", ok, "")
    ok = all(tau(beta, u) == tau_compositional(beta, u) for u in units)
    yield ("tau coordinate formula matches the compositional definition", ok, "")
    ok = all(tau_antihom_check(beta, a, b) for a in units for b in units)
    yield ("tau anti-homomorphism on matrix-unit pairs", ok, "")

    chi0_p = compose_morphisms(pullback_chi0(beta), pullback_projector(beta))
    ok = all(img.is_zero() for img in chi0_p.images)
    yield ("projector composed with the group map vanishes symbolically", ok, "")

    ok = True
    detail = ""
    for a in units:
        for b in units:
            lhs = derivation_bracket(left_invariant_field(space, a),
                                     left_invariant_field(space, b))
            from .endo import commutator
            rhs = left_invariant_field(space, commutator(a, b))
            if lhs.images != rhs.images:
                ok = False
                detail = "bracket mismatch"
                break
        if not ok:
            break
    yield ("left-invariant fields form a bracket homomorphism", ok, detail)

    chi0 = pullback_chi0(beta)
    ok = True
    detail = ""
    for i in range(samples):
        rng = sample_rng(seed, i)
        A = random_orthogonal_map(beta, rng)
        if tangent_matrix(chi0, space, A) != L_matrix(beta, A):
            ok = False
            detail = f"sample {i}"
            break
    yield ("tangent map at orthogonal points equals the linearized condition", ok, detail)

    suite = group_suite(space, beta, algebra, samples=samples, seed=seed)
    yield ("point-functor group suite", suite["ok"],
           "; ".join(f"{f['check']} (sample {f['sample']})" for f in suite["failures"][:3]))

    try:
        report = standardize(beta)
        ok = report.standardized_form() == report.expected_form()
        detail = ""
        rng = sample_rng(seed, samples)
        A = random_orthogonal_map(beta, rng)
        fact = factor_underlying(beta, A, report)
        from .standard import reconstruct_underlying
        if reconstruct_underlying(beta, fact, report) != A:
            ok = False
            detail = "factor/reconstruct round-trip failed"
    except ValueError as exc:
        ok, detail = False, str(exc)
    yield ("standard form and underlying factorization round-trip", ok, detail)


def cmd_verify(args) -> int:
    config = load_config(args.config)
    space = parse_space(config)
    beta = parse_form(config, space)
    if beta is None:
        raise InputError("verify requires a 'form' in the config")
    suite_cfg = config.get("suite") or {}
    seed = args.seed if args.seed is not None else int(suite_cfg.get("seed", 0))
    samples = args.samples if args.samples is not None else int(suite_cfg.get("samples", 10))
    algebra = parse_algebra(config, args.truncation)
    results = []
    lines = []
    all_ok = True
    for name, ok, detail in _verify_checks(space, beta, algebra, seed, samples):
        results.append({"check": name, "ok": ok, "detail": detail})
        lines.append(("PASS" if ok else "FAIL") + f"  {name}" + (f"  [{detail}]" if detail and not ok else ""))
        all_ok = all_ok and ok
    payload = {"seed": seed, "samples": samples, "checks": results, "ok": all_ok}
    emit(payload, args.format, lines)
    return 0 if all_ok else 1


def cmd_pullback(args) -> int:
    config = load_config(args.config)
    space = parse_space(config)
    if args.which in ("mu", "theta"):
        morphism = pullback_mu(space) if args.which == "mu" else pullback_theta(space)
    else:
        beta = parse_form(config, space)
        if beta is None:
            raise InputError(f"pullback {args.which} requires a 'form' in the config")
        morphism = pullback_tau(beta) if args.which == "tau" else pullback_chi0(beta)
    text = morphism_to_text(morphism)
    if args.format == "json":
        print(json.dumps({"which": args.which,
                          "images": text.splitlines()}, indent=2, sort_keys=True))
    else:
        print(text)
    return 0


def cmd_standard_form(args) -> int:
    config = load_config(args.config)
    space = parse_space(config)
    beta = parse_form(config, space)
    if beta is None:
        raise InputError("standard-form requires a 'form' in the config")
    try:
        report = standardize(beta)
    except ValueError as exc:
        print(f"standard-form failed: {exc}", file=sys.stderr)
        return 1
    payload = report_to_json(report)
    lines = [f"pairs: {len(report.pairs)}", f"middle: {len(report.middle)}"]
    if report.signature is not None:
        lines.append(f"signature: ({report.signature[0]},{report.signature[1]})")
    for it, ib in report.pairs:
        lines.append(f"pair {report.new_space.labels[it]} (deg {report.new_space.degrees[it]})"
                     f" / {report.new_space.labels[ib]} (deg {report.new_space.degrees[ib]})")
    from .core import frac_str
    for ie, d in report.middle:
        lines.append(f"middle {report.new_space.labels[ie]}: d = {frac_str(d)}")
    emit(payload, args.format, lines)
    return 0


def cmd_decompose(args) -> int:
    config = load_config(args.config)
    space = parse_space(config)
    beta = parse_form(config, space)
    if beta is None:
        raise InputError("decompose requires a 'form' in the config")
    try:
        with open(args.matrix) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read matrix file: {exc}") from exc
    try:
        A = map_from_json(data) if "entries" in data else GradedMap(
            space, space, 0,
            tuple(tuple(as_fraction(v) for v in row) for row in data["matrix"]))
        if A.domain != space:
            A = GradedMap(space, space, A.degree, A.entries)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"matrix file: {exc}") from exc
    try:
        fact = factor_underlying(beta, A)
    except ValueError as exc:
        print(f"decompose failed: {exc}", file=sys.stderr)
        return 1
    payload = factorization_to_json(fact)
    lines = [f"middle kind: {fact.middle_kind}"]
    if fact.signature is not None:
        lines.append(f"signature: ({fact.signature[0]},{fact.signature[1]})")
    from .core import frac_str
    for i, block in fact.blocks:
        lines.append(f"level {i}: " + " ; ".join(
            " ".join(frac_str(v) for v in row) for row in block))
    emit(payload, args.format, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedgroups",
        description="Exact-arithmetic graded linear algebra and graded matrix groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("config", help="path to a JSON config file")
        p.add_argument("--format", choices=["json", "text"], default="text")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for randomized suites (default 0)")
        p.add_argument("--samples", type=int, default=None,
                       help="sample count for randomized suites")
        p.add_argument("--truncation", type=int, default=4,
                       help="nilpotency order of the coefficient algebra")

    p = sub.add_parser("inspect", help="degree data, shape and validity report")
    common(p)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("verify", help="run the exact verification suites")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pullback", help="print a coordinate pullback")
    common(p)
    p.add_argument("--which", choices=["mu", "tau", "chi0", "theta"], required=True)
    p.set_defaults(func=cmd_pullback)

    p = sub.add_parser("standard-form", help="standard basis of the configured form")
    common(p)
    p.set_defaults(func=cmd_standard_form)

    p = sub.add_parser("decompose", help="factor an orthogonal matrix into blocks")
    common(p)
    p.add_argument("matrix", help="path to a JSON file with the degree-0 matrix")
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
