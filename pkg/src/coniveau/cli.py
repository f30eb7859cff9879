"""The ``mhc`` command.

Exit codes: 0 success, 2 input error, 3 criterion-fails under ``--strict``.
Output is assembled completely before anything is printed, so a failing run
writes nothing to stdout.
"""

from __future__ import annotations

import argparse
import logging
import sys

from coniveau.dsl import load_table, normalize
from coniveau.errors import InputError
from coniveau.ghc import FAILS, ghc_check, ghc_transfer
from coniveau.hodge import fp, graded_dims
from coniveau.motivic import Registry, mc_equal_mod, mc_truncate, realize_lambda, realize_nu
from coniveau.varieties import validate_table

EXIT_INPUT = 2
EXIT_CRITERION = 3


def _fp_lines(poly, tag: str) -> list[str]:
    lines = [f"{tag} {i} {p} {c}" for i, p, c in poly.terms()]
    return lines or ["0"]


def _cmd_normalize(args, registry):
    x = normalize(args.expr, registry)
    return (x.machine_lines() if args.format == "machine" else [str(x)]), 0


def _cmd_fp(args, registry):
    x = normalize(args.expr, registry)
    realize = realize_nu if args.filtration == "coniveau" else realize_lambda
    y = realize(x, registry)
    if args.graded:
        poly, tag = graded_dims(y), "gr"
    else:
        poly, tag = fp(y), "fp"
    if args.format == "machine":
        return _fp_lines(poly, tag), 0
    lines = [str(poly)]
    lines += [f"caveat: {w}" for w in sorted(y.warnings)]
    return lines, 0


def _cmd_ghc(args, registry):
    x = normalize(args.expr, registry)
    report = ghc_check(x, registry, args.precision)
    code = EXIT_CRITERION if args.strict and report.overall == FAILS else 0
    return (report.machine_lines() if args.format == "machine" else [report.text()]), code


def _cmd_compare(args, registry):
    a, b = normalize(args.expr1, registry), normalize(args.expr2, registry)
    m = args.precision
    equal = mc_equal_mod(a, b, m)
    diff = a - b if m is None else mc_truncate(a - b, m)
    if args.format == "machine":
        return [f"compare {'equal' if equal else 'unequal'}"] + diff.machine_lines(), 0
    scope = "exactly" if m is None else f"modulo F^{m}"
    verdict = "equal" if equal else "not identified"
    return [f"{verdict} {scope}", f"difference: {diff}"], 0


def _cmd_transfer(args, registry):
    a, b = normalize(args.expr1, registry), normalize(args.expr2, registry)
    report = ghc_transfer(a, b, args.precision, registry)
    failing = FAILS in (report.report_a.overall, report.report_b.overall)
    code = EXIT_CRITERION if args.strict and failing else 0
    return (report.machine_lines() if args.format == "machine" else [report.text()]), code


def _cmd_load(args, registry):
    lines = []
    for path in args.files:
        table = load_table(path, registry)
        lints = validate_table(table)
        if args.format == "machine":
            lines.append(f"table {table.name} dim {table.dim} {table.soundness}")
            lines += [f"lint {v.i} {v.p} {v.rule}" for v in lints]
        else:
            lines.append(str(table))
            lines += [f"warning: {v}" for v in lints]
    return lines, 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--load", action="append", default=[], metavar="FILE",
                        help="register a variety table file (repeatable)")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--strict", action="store_true", help="exit 3 when the criterion fails")

    parser = argparse.ArgumentParser(prog="mhc",
                                     description="Coniveau and level realizations of motivic classes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="print the normal form of a class")
    p.add_argument("expr")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("fp", parents=[common], help="filtered Poincare polynomial")
    p.add_argument("--filtration", choices=("coniveau", "level"), default="coniveau")
    p.add_argument("--graded", action="store_true", help="dump graded dimensions instead")
    p.add_argument("expr")
    p.set_defaults(func=_cmd_fp)

    p = sub.add_parser("ghc", parents=[common], help="decide the FP criterion")
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("expr")
    p.set_defaults(func=_cmd_ghc)

    for name, func, helptext in (("compare", _cmd_compare, "compare two classes"),
                                 ("transfer", _cmd_transfer, "transfer the criterion between classes")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--precision", type=int, default=None)
        p.add_argument("expr1")
        p.add_argument("expr2")
        p.set_defaults(func=func)

    p = sub.add_parser("load", parents=[common], help="validate and show table files")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=_cmd_load)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(format="warning: %(message)s", level=logging.WARNING)
    args = build_parser().parse_args(argv)
    registry = Registry()
    try:
        for path in args.load:
            load_table(path, registry)
        if args.command != "load":
            registry.freeze()
        lines, code = args.func(args, registry)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write("\n".join(lines) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
