"""Command-line entry point.

Subcommands: monomials, system, integrate, moment, invariants, orbit-check,
verify.  JSON goes to stdout (or --out / --json); a one-line human summary
goes to stderr.  Exit status: 0 success, 1 failed check (decay failure,
failed verification), 2 usage or domain error (including malformed files
and odd degree).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import jsonio, verify
from .errors import DecayError, DomainError, GhyperError, NormalizationError
from .glaction import substitute
from .invariants import invariants_for
from .monomials import basis_document, enumerate_monomials, toric_relations
from .operators import gkz_system
from .quadrature import QuadratureConfig, decay_check, integrate, moment

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _add_quadrature_flags(parser):
    parser.add_argument("--tolerance", type=float, default=None,
                        help="relative tolerance between refinement levels")
    parser.add_argument("--nodes", type=int, default=None,
                        help="nodes per axis at the coarsest level (>= 8)")
    parser.add_argument("--levels", type=int, default=None,
                        help="number of refinement levels (doubling nodes)")
    parser.add_argument("--map", choices=["double-exponential",
                                          "rational-stretch"], default=None,
                        help="per-axis compactifying map")


def _config_from(args, base: QuadratureConfig | None = None
                 ) -> QuadratureConfig:
    base = base or QuadratureConfig()
    return base.with_overrides(relative_tolerance=args.tolerance,
                               nodes_per_axis=args.nodes,
                               refinement_levels=args.levels,
                               map=getattr(args, "map", None))


def _emit(doc, args, summary: str = "") -> None:
    payload = jsonio.dumps_canonical(doc)
    out_path = getattr(args, "out", None) or getattr(args, "json", None)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    if summary:
        print(summary, file=sys.stderr)


def _encode_integral(result) -> dict:
    return {"value": jsonio.encode_number(result.value),
            "error_estimate": float(result.error_estimate),
            "converged": bool(result.converged),
            "levels_used": int(result.levels_used)}


def cmd_monomials(args) -> int:
    basis = enumerate_monomials(args.n, args.d)
    relations = toric_relations(basis) if args.relations else None
    _emit(basis_document(basis, relations), args,
          f"(n={args.n}, d={args.d}): {basis.size} monomials")
    return EXIT_OK


def cmd_system(args) -> int:
    basis = enumerate_monomials(args.n, args.d)
    system = gkz_system(basis)
    _emit(jsonio.system_document(system), args,
          f"(n={args.n}, d={args.d}): {len(system.box_operators)} box + "
          f"{len(system.euler_operators)} euler operators")
    return EXIT_OK


def cmd_integrate(args) -> int:
    basis, a = jsonio.load_coefficient_file(args.file)
    config = _config_from(args)
    report = decay_check(basis, a, config)
    doc = {"schema": jsonio.SCHEMA, "n": basis.n, "d": basis.d,
           "decay": {"valid": report.valid,
                     "worst_direction": list(report.worst_direction),
                     "worst_value": report.worst_value}}
    if not report.valid:
        _emit(doc, args, f"decay check failed: max Re P on the sphere = "
                         f"{report.worst_value:.6g}")
        return EXIT_CHECK_FAILED
    result = integrate(basis, a, config)
    doc["integral"] = _encode_integral(result)
    _emit(doc, args,
          f"J = {result.value} (error estimate {result.error_estimate:.3g})")
    return EXIT_OK if result.converged else EXIT_CHECK_FAILED


def cmd_moment(args) -> int:
    basis, a = jsonio.load_coefficient_file(args.file)
    try:
        exponent = tuple(int(x) for x in args.exponent.split(","))
    except ValueError:
        raise DomainError(f"bad moment exponent {args.exponent!r}") from None
    config = _config_from(args)
    result = moment(basis, a, exponent, config)
    doc = {"schema": jsonio.SCHEMA, "n": basis.n, "d": basis.d,
           "exponent": list(exponent), "moment": _encode_integral(result)}
    _emit(doc, args, f"moment {exponent} = {result.value}")
    return EXIT_OK if result.converged else EXIT_CHECK_FAILED


def cmd_invariants(args) -> int:
    basis, a = jsonio.load_coefficient_file(args.file)
    values = invariants_for(basis, list(a))
    doc = {"schema": jsonio.SCHEMA, "n": basis.n, "d": basis.d,
           "invariants": [{"name": v.name,
                           "value": jsonio.encode_number(complex(v.value)),
                           "weight": v.weight} for v in values]}
    _emit(doc, args, ", ".join(f"{v.name}={complex(v.value):.6g}"
                               for v in values) or "no invariants apply")
    return EXIT_OK


def cmd_orbit_check(args) -> int:
    basis, a = jsonio.load_coefficient_file(args.file)
    with open(args.group_file, "r", encoding="utf-8") as fh:
        g = np.asarray(json.load(fh), dtype=float)
    if g.shape != (basis.n, basis.n):
        raise DomainError(f"group matrix must be {basis.n}x{basis.n}")
    config = _config_from(args)
    a_g = substitute(basis, g, a)
    j_a = integrate(basis, a, config)
    j_g = integrate(basis, a_g, config)
    det_g = float(np.linalg.det(g))
    defect = abs(det_g * j_g.value - j_a.value) / max(abs(j_a.value),
                                                      np.finfo(float).tiny)
    doc = {"schema": jsonio.SCHEMA, "n": basis.n, "d": basis.d,
           "J_a": _encode_integral(j_a), "J_ga": _encode_integral(j_g),
           "det_g": det_g, "covariance_defect": defect}
    _emit(doc, args, f"J(a)={j_a.value}  J(ga)={j_g.value}  det={det_g:.6g}"
                     f"  defect={defect:.3g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    system = None
    if args.system_file:
        with open(args.system_file, "r", encoding="utf-8") as fh:
            loaded = jsonio.system_from_document(json.load(fh))
        rebuilt = gkz_system(loaded.basis)
        if loaded != rebuilt:
            raise DomainError("system file does not reproduce the "
                              "operators built for its (n, d)")
        system = loaded
    config = None
    if args.tolerance or args.nodes or args.levels or args.map:
        config = _config_from(args)
    cases = None
    if args.cases:
        try:
            cases = [tuple(int(x) for x in c.split(",")) for c in args.cases]
            if any(len(c) != 2 for c in cases):
                raise ValueError
        except ValueError:
            raise DomainError(f"bad --cases {args.cases!r}; "
                              "expected pairs like 2,2 3,2") from None
    if args.suite == "all":
        reports = verify.run_all(args.seed, config, samples=args.samples,
                                 cases=cases)
    else:
        reports = verify.run_suite(args.suite, args.seed, config,
                                   samples=args.samples, system=system,
                                   cases=cases)
    doc = verify.reports_document(reports, suite=args.suite, seed=args.seed)
    n_checks = sum(len(r.checks) for r in reports)
    n_failed = sum(1 for r in reports for c in r.checks
                   if c.status == "fail")
    _emit(doc, args, f"{len(reports)} reports, {n_checks} checks, "
                     f"{n_failed} failures")
    return EXIT_OK if doc["passed"] else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghyper",
        description="Annihilator systems and decay-verified quadrature for "
                    "integrals of exp of a homogeneous form.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("monomials", help="enumerate the monomial basis")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--relations", action="store_true",
                   help="include the toric relations")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_monomials)

    p = sub.add_parser("system", help="emit the annihilator system")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_system)

    p = sub.add_parser("integrate", help="evaluate J(a) from a file")
    p.add_argument("-f", "--file", required=True,
                   help="coefficient JSON file")
    p.add_argument("--out", default=None)
    _add_quadrature_flags(p)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("moment", help="evaluate a moment integral")
    p.add_argument("-f", "--file", required=True)
    p.add_argument("-e", "--exponent", required=True,
                   help="comma-separated exponent, e.g. 2,0")
    p.add_argument("--out", default=None)
    _add_quadrature_flags(p)
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("invariants", help="classical invariants of the form")
    p.add_argument("-f", "--file", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("orbit-check",
                       help="covariance defect det(g) J(ga) vs J(a)")
    p.add_argument("-f", "--file", required=True)
    p.add_argument("-g", "--group-file", required=True,
                   help="JSON n x n real matrix")
    p.add_argument("--out", default=None)
    _add_quadrature_flags(p)
    p.set_defaults(func=cmd_orbit_check)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suite", choices=["thm1", "thm2", "thm4", "all"],
                   default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=5,
                   help="random coefficient vectors per (n, d) case")
    p.add_argument("--cases", nargs="*", default=None, metavar="N,D",
                   help="restrict the battery, e.g. --cases 2,2 3,2")
    p.add_argument("--json", default=None, help="write the report here")
    p.add_argument("--system-file", default=None,
                   help="verify against a previously exported system")
    _add_quadrature_flags(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DecayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except NormalizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GhyperError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
