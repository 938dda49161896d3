"""Command-line interface.

Commands operate on JSON curve files (see curvefile) and print a report,
human-readable by default or machine-readable with --json.  Output is
byte-identical for identical inputs, flags and seeds.

Exit codes: 0 success, 1 I/O or parse error, 2 invalid curve, 3 geometric
degeneracy (no generic offset found), 4 infeasible or unrealizable,
5 violated precondition (wrong marks, non-rigid, undecided equality, ...).

The default equality mode comes from the curve file (the form of its
multipliers); the TROPCOUNT_MODE environment variable and the --mode flag
override it, in that order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import selftest as selftest_mod
from .curve import canonical_offset, ensure_valid, validate
from .curvefile import format_rational, load_curve
from .errors import (ConstraintError, DegeneracyError, InfeasibleError,
                     ParseError, TropcountError, ValidationError)
from .moduli import (count_curves, deformation_ranks, dual_flag_space,
                     edge_weight_product)
from .plot import render_svg
from .prelog import assemble_system, solve_monomial, verify_assignment
from .realize import is_realizable, parity_exponent, sigma_cocycle, \
    sigma_geometric
from .valuegroup import (DEFAULT_TOLERANCE, EqualityMode, MulValue)

EXIT_CODES = {
    ParseError: 1,
    ValidationError: 2,
    DegeneracyError: 3,
    InfeasibleError: 4,
    ConstraintError: 5,
}

_MODE_NAMES = {
    "formal": EqualityMode.FORMAL,
    "exact": EqualityMode.EXACT,
    "numeric": EqualityMode.NUMERIC,
}


def _resolve_mode(args, curve) -> EqualityMode:
    if getattr(args, "mode", None):
        return _MODE_NAMES[args.mode]
    env = os.environ.get("TROPCOUNT_MODE", "").strip().lower()
    if env:
        if env not in _MODE_NAMES:
            raise ConstraintError(
                f"TROPCOUNT_MODE={env!r} is not one of formal/exact/numeric")
        return _MODE_NAMES[env]
    return curve.lattice.mode


# --------------------------------------------------------------------------
# report rendering
# --------------------------------------------------------------------------


def _human_lines(obj, indent: str = "") -> list[str]:
    lines: list[str] = []
    for key, value in obj.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_human_lines(value, indent + "  "))
        elif isinstance(value, list) and value \
                and all(isinstance(x, dict) for x in value):
            lines.append(f"{indent}{key}:")
            for item in value:
                sub = _human_lines(item, indent + "    ")
                if sub:
                    first = sub[0]
                    lines.append(f"{indent}  - {first.strip()}")
                    lines.extend(sub[1:])
        elif isinstance(value, list):
            rendered = ", ".join(str(x) for x in value)
            lines.append(f"{indent}{key}: [{rendered}]")
        else:
            lines.append(f"{indent}{key}: {value}")
    return lines


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(_human_lines(report)) + "\n")


def _invariants(curve) -> dict:
    return {
        "genus": curve.genus,
        "delta": curve.delta,
        "vertex_weights": {
            v.id: curve.vertex_weight(v.id) for v in curve.vertices
        },
        "parity": parity_exponent(curve),
        "edge_weights": {e.id: e.weight for e in curve.edges},
    }


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_validate(args) -> int:
    curve, _ = load_curve(args.file)
    result = validate(curve)
    report = {
        "command": "validate",
        "file": args.file,
        "valid": result.ok,
        "problems": list(result.problems),
        "warnings": list(result.warnings),
    }
    _emit(report, args.json)
    return 0 if result.ok else 2


def cmd_analyze(args) -> int:
    curve, marks = load_curve(args.file)
    ensure_valid(curve)
    rank_kernel, rank_cokernel = deformation_ranks(curve)
    dual_dim, _ = dual_flag_space(curve)
    report = {
        "command": "analyze",
        "file": args.file,
        "mode": curve.lattice.mode.value,
        **_invariants(curve),
        "rank_kernel": rank_kernel,
        "rank_cokernel": rank_cokernel,
        "dual_flag_dimension": dual_dim,
        "edge_weight_product": edge_weight_product(curve),
        "marked_points": [
            {"edge": m.edge, "t": format_rational(m.t)} for m in marks
        ],
    }
    _emit(report, args.json)
    return 0


def cmd_realizable(args) -> int:
    curve, _ = load_curve(args.file)
    ensure_valid(curve)
    mode = _resolve_mode(args, curve)
    offset = canonical_offset(curve)
    cocycle = sigma_cocycle(curve)
    geometric = sigma_geometric(curve, offset)
    result = is_realizable(curve, mode, args.tol)
    warnings = []
    if result.verdict is None:
        warnings.append(
            "numeric comparison inside the undecided margin; refine the "
            "tolerance or use exact multipliers")
    report = {
        "command": "realizable",
        "file": args.file,
        "mode": mode.value,
        **_invariants(curve),
        "offset": [format_rational(offset[0]), format_rational(offset[1])],
        "sigma_cocycle": str(cocycle),
        "sigma_geometric": str(geometric),
        "sigma_agreement": cocycle == geometric,
        "target": str(result.target),
        "verdict": result.verdict_text,
        "certificate": result.certificate,
        "warnings": warnings,
    }
    _emit(report, args.json)
    if cocycle != geometric:
        raise ConstraintError(
            "internal disagreement between the two sigma computations")
    return 0


def cmd_count(args) -> int:
    curve, marks = load_curve(args.file)
    ensure_valid(curve)
    mode = _resolve_mode(args, curve)
    result = count_curves(curve, marks, mode, args.tol)
    report = {
        "command": "count",
        "file": args.file,
        "mode": mode.value,
        **_invariants(curve),
        "marked_points": [
            {"edge": m.edge, "t": format_rational(m.t)} for m in marks
        ],
        "sigma": str(result.realizability.sigma),
        "verdict": result.realizability.verdict_text,
        "kernel_order": result.kernel.order,
        "invariant_factors": list(result.kernel.invariant_factors),
        "edge_weight_product": result.edge_weight_product,
        "total": result.total,
    }
    _emit(report, args.json)
    return 0


def _flag_key(flag) -> str:
    return f"{flag[0]}|{flag[1]}"


def _parse_check_value(raw, index: int, numeric_table: dict):
    if isinstance(raw, str):
        return MulValue.rational(Fraction(raw))
    if isinstance(raw, dict):
        if "modulus" in raw:
            return MulValue.polar(Fraction(raw["modulus"]),
                                  Fraction(raw["turns"]))
        if "re" in raw:
            name = f"check{index}"
            numeric_table[name] = complex(raw["re"], raw.get("im", 0.0))
            return MulValue.symbol(name)
        if set(raw) <= {"symbols", "primes", "turns"}:
            return MulValue.from_dict(raw)
    raise ParseError(f"assignment value {raw!r} is not a rational string, "
                     "modulus/turns, re/im, or serialized group element")


def cmd_prelog(args) -> int:
    curve, _ = load_curve(args.file)
    ensure_valid(curve)
    mode = _resolve_mode(args, curve)
    system = assemble_system(curve)

    if args.check:
        try:
            with open(args.check, "r", encoding="utf-8") as handle:
                doc = json.load(handle)
        except OSError as exc:
            raise ParseError(f"cannot read {args.check}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ParseError(f"{args.check}: not valid JSON: {exc}") from exc
        flags_doc = doc.get("flags") if isinstance(doc, dict) else None
        if not isinstance(flags_doc, dict):
            raise ParseError(
                f"{args.check}: expected an object with a \"flags\" map")
        numeric_table = dict(curve.lattice.numeric_values)
        assignment = []
        for i, flag in enumerate(system.flags):
            key = _flag_key(flag)
            if key not in flags_doc:
                raise ParseError(f"{args.check}: missing flag {key!r}")
            assignment.append(
                _parse_check_value(flags_doc[key], i, numeric_table))
        check_mode = mode
        if len(numeric_table) > len(curve.lattice.numeric_values):
            check_mode = EqualityMode.NUMERIC
        failures = verify_assignment(system, assignment, check_mode,
                                     numeric_values=numeric_table,
                                     tolerance=args.tol)
        report = {
            "command": "prelog",
            "file": args.file,
            "mode": check_mode.value,
            "check": args.check,
            "rows_checked": len(system.exponents),
            "failing_rows": [
                {"row": label, "certificate": certificate}
                for label, certificate in failures
            ],
            "result": "pass" if not failures else "fail",
        }
        _emit(report, args.json)
        return 0 if not failures else 4

    solution = solve_monomial(
        system, mode, numeric_values=curve.lattice.numeric_values,
        tolerance=args.tol)
    report = {
        "command": "prelog",
        "file": args.file,
        "mode": mode.value,
        **_invariants(curve),
        "feasible": {True: "yes", False: "no", None: "undecided"}[
            solution.feasible],
        "witnesses": [
            {
                "value": str(w.value),
                "holds": {True: "yes", False: "no", None: "undecided"}[
                    w.verdict],
                "certificate": w.certificate,
            }
            for w in solution.witnesses
        ],
    }
    if solution.feasible is not False and solution.assignment is not None:
        verification = verify_assignment(
            system, solution.assignment, mode,
            numeric_values=curve.lattice.numeric_values, tolerance=args.tol)
        if solution.feasible is True and verification:
            raise ConstraintError(
                f"internal: solved assignment fails rows {verification}")
        report["verification"] = "pass" if not verification else "undecided"
        report["assignment"] = {
            _flag_key(flag): (value.to_dict() if args.json else str(value))
            for flag, value in zip(system.flags, solution.assignment)
        }
        report["kernel_free_generators"] = [
            {_flag_key(flag): exponent
             for flag, exponent in zip(system.flags, generator)}
            for generator in solution.kernel_free
        ]
        report["kernel_torsion_generators"] = [
            {_flag_key(flag): str(value)
             for flag, value in zip(system.flags, generator)}
            for generator in solution.kernel_torsion
        ]
    _emit(report, args.json)
    return 4 if solution.feasible is False else 0


def cmd_plot(args) -> int:
    curve, _ = load_curve(args.file)
    svg = render_svg(curve)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(svg)
        except OSError as exc:
            raise ParseError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(svg)
    return 0


def cmd_selftest(args) -> int:
    results = selftest_mod.run_all(args.seed, args.cases)
    for result in results:
        sys.stdout.write(result.line() + "\n")
        if not result.passed:
            for failure in result.failures[:3]:
                sys.stdout.write(f"    counterexample: {failure}\n")
    failed = [r for r in results if not r.passed]
    sys.stdout.write(
        f"{len(results) - len(failed)}/{len(results)} suites passed\n")
    return 0 if not failed else 1


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


def _add_common(parser, mode: bool = True) -> None:
    parser.add_argument("file", help="curve file (JSON)")
    parser.add_argument("--json", action="store_true",
                        help="machine-readable report")
    if mode:
        parser.add_argument("--mode", choices=sorted(_MODE_NAMES),
                            help="equality mode override")
        parser.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE,
                            help="numeric tolerance (default 1e-9)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropcount",
        description="Realizability and counting for tropical curves on a "
                    "two-dimensional torus quotient.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check curve well-formedness")
    _add_common(p, mode=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="combinatorial invariants and ranks")
    _add_common(p, mode=False)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("realizable", help="decide realizability")
    _add_common(p)
    p.set_defaults(func=cmd_realizable)

    p = sub.add_parser("count", help="count algebraic curves through the "
                                     "marked points")
    _add_common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("prelog", help="solve the multiplicative gluing "
                                      "system")
    _add_common(p)
    p.add_argument("--check", metavar="FILE",
                   help="verify a flag assignment instead of solving")
    p.set_defaults(func=cmd_prelog)

    p = sub.add_parser("plot", help="render the curve as SVG")
    p.add_argument("file", help="curve file (JSON)")
    p.add_argument("--out", metavar="FILE", default="",
                   help="output path (default: stdout)")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("selftest", help="run the property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=None,
                   help="cases per suite (default: per-suite minimum)")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TropcountError as exc:
        sys.stderr.write(f"error: {exc}\n")
        for klass, code in EXIT_CODES.items():
            if isinstance(exc, klass):
                return code
        return 1


if __name__ == "__main__":
    sys.exit(main())
