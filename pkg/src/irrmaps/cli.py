"""Command-line interface.

Subcommands:
  nhat    print a counting polynomial (symmetric basis, monomials, or JSON)
  count   evaluate an exact count, by formula, brute force, or both
  verify  run an identity suite; exit 1 on any failing case
  series  print coefficients of the building-block series

Exit codes: 0 success / all checks pass, 1 verification or comparison
failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .families import series_I, series_J, series_J_inverse
from .oracle import GluingSpec, OracleError, SizeError, brute_count
from .pipeline import DomainError, count_exact, nhat, to_m_basis
from .serialize import count_csv_rows, emit_polynomial_json
from .verify import SUITES, cross_verify_counts, verify_dilaton, verify_string


def _format_bpoly(poly) -> str:
    if poly.is_constant():
        return str(poly.constant_term())
    return f"({poly})"


def format_mlambda(count) -> str:
    basis = to_m_basis(count)
    parts = []
    for lam, coeff in sorted(basis.items(), key=lambda kv: (-sum(kv[0]), kv[0])):
        if lam:
            name = "m_(" + ",".join(str(e) for e in lam) + ")"
            if coeff.is_constant() and coeff.constant_term() == 1:
                parts.append(name)
            else:
                parts.append(f"{_format_bpoly(coeff)} {name}")
        else:
            parts.append(_format_bpoly(coeff))
    if not parts:
        return "0"
    text = " + ".join(parts)
    return text.replace("+ -", "- ")


def _parse_degrees(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise DomainError(f"cannot parse degree list {text!r}") from None


def cmd_nhat(args) -> int:
    count = nhat(args.genus, args.faces)
    if args.format == "mlambda":
        print(format_mlambda(count))
    elif args.format == "monomials":
        print(count.poly)
    else:
        print(emit_polynomial_json(count))
    return 0


def _sweep_tuples(max_sides: int, b_max: int):
    from itertools import combinations_with_replacement
    for genus in (0, 1, 2):
        nmin = 3 if genus == 0 else 1
        for n in range(nmin, max_sides // 2 + 1):
            for b in range(0, b_max + 1):
                for degs in combinations_with_replacement(
                        range(max(b, 1), max_sides // 2 + 1), n):
                    if sum(2 * d for d in degs) <= max_sides:
                        yield genus, n, b, degs


def cmd_sweep(args) -> int:
    rows = []
    mismatched = False
    for genus, n, b, degs in _sweep_tuples(args.max_2e, args.b_max):
        values = {}
        if args.method in ("formula", "both"):
            values["formula"] = count_exact(genus, n, b, degs,
                                            allow_degree_one=args.with_deg_one)
        if args.method in ("brute", "both"):
            spec = GluingSpec(genus, degs, b, allow_degree_one=args.with_deg_one,
                              guard_sides=max(args.max_2e, 18))
            values["brute"] = brute_count(spec)
        if args.method == "both" and values["formula"] != values["brute"]:
            mismatched = True
        for method, value in values.items():
            rows.append((genus, n, b, degs, value, method))
    sys.stdout.write(count_csv_rows(rows))
    return 1 if mismatched else 0


def cmd_count(args) -> int:
    degrees = _parse_degrees(args.degrees)
    n = len(degrees)
    rows = []
    values = {}
    if args.method in ("formula", "both"):
        values["formula"] = count_exact(args.genus, n, args.b, degrees,
                                        allow_degree_one=args.with_deg_one)
    if args.method in ("brute", "both"):
        spec = GluingSpec(args.genus, degrees, args.b,
                          allow_degree_one=args.with_deg_one,
                          guard_sides=args.max_sides)
        values["brute"] = brute_count(spec)
    for method, value in values.items():
        rows.append((args.genus, n, args.b, degrees, value, method))
    if args.format == "csv":
        sys.stdout.write(count_csv_rows(rows))
    else:
        for method, value in values.items():
            print(f"{method}: {value}")
    if args.method == "both":
        match = values["formula"] == values["brute"]
        if args.format != "csv":
            print("match" if match else "MISMATCH")
        return 0 if match else 1
    return 0


def cmd_verify(args) -> int:
    suite = args.suite
    if suite in ("string", "dilaton"):
        fn = verify_string if suite == "string" else verify_dilaton
        report = fn(args.genus, args.faces)
    elif suite == "oracle":
        report = cross_verify_counts(max_sides=args.max_2e)
    else:
        report = SUITES[suite]()
    print(report.render())
    return 0 if report.passed else 1


def cmd_series(args) -> int:
    gens = ("b", "l")
    if args.name == "I":
        ser = series_I(args.order, gens, ell="l")
    elif args.name == "J":
        ser = series_J(max(args.order, 1), gens)
    else:
        ser = series_J_inverse(max(args.order, 1), gens)
    assign = {}
    if args.b is not None:
        assign["b"] = Fraction(args.b)
    if args.ell is not None:
        assign["l"] = Fraction(args.ell)
    var = "z" if args.name == "Jinv" else "r"
    for k, coeff in enumerate(ser.coeffs):
        value = coeff.evaluate(assign) if assign else coeff
        text = str(value.as_fraction()) if value.is_constant() else str(value)
        print(f"[{var}^{k}] {text}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irrmaps",
        description="Exact counts of essentially irreducible maps with even face degrees")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nhat", help="print a counting polynomial")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--faces", type=int, required=True)
    p.add_argument("--format", choices=("mlambda", "monomials", "json"),
                   default="mlambda")
    p.set_defaults(fn=cmd_nhat)

    p = sub.add_parser("count", help="evaluate an exact count")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--degrees", required=True,
                   help="comma-separated face half-degrees, e.g. 2,2,2,2")
    p.add_argument("--with-deg-one", action="store_true",
                   help="allow vertices of degree one")
    p.add_argument("--method", choices=("formula", "brute", "both"),
                   default="formula")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--max-sides", type=int, default=18,
                   help="brute-force guard on the total side count")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("sweep", help="CSV export of counts over all small tuples")
    p.add_argument("--max-2e", type=int, default=8,
                   help="bound on the total number of polygon sides")
    p.add_argument("--b-max", type=int, default=3)
    p.add_argument("--method", choices=("formula", "brute", "both"),
                   default="formula")
    p.add_argument("--with-deg-one", action="store_true")
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--genus", type=int, default=None)
    p.add_argument("--faces", type=int, default=None)
    p.add_argument("--max-2e", type=int, default=8,
                   help="side bound for the oracle sweep")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("series", help="print series coefficients")
    p.add_argument("--name", choices=("I", "J", "Jinv"), required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--ell", type=int, default=None)
    p.set_defaults(fn=cmd_series)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (DomainError, OracleError, SizeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
