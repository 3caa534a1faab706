"""Command-line interface.

Exit codes: 0 success, 1 parse or usage error, 2 invalid symmetry,
3 resource limit, 4 certificate failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .descent import DescentError, SymmetryError, descend, project_Z, validate_symmetry
from .ideal import Ideal, ResourceLimitError, groebner
from .parser import ParseError, parse_problem, parse_problem_file
from .poly import MonomialOrder
from .problem import default_budget
from .report import render_json, render_projection, render_text

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_SYMMETRY = 2
EXIT_RESOURCE = 3
EXIT_CERTIFICATE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _budget(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("budget must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="realdescent", description="Descend a complex variety with an antiholomorphic involution to a model over the real subfield.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, order=False):
        sp.add_argument("file", help="problem file ('-' for stdin)")
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--budget", type=_budget, default=None, help="S-pair budget (default: $REALDESCENT_BUDGET or 2000000)")
        if order:
            sp.add_argument("--order", choices=("grevlex", "lex"), default=None)

    d = sub.add_parser("descend", help="run the full descent pipeline")
    common(d, order=True)
    d.add_argument("--no-verify", action="store_true", help="skip the verification certificates")
    d.add_argument("--radical", action="store_true", help="compare varieties (radical membership) instead of ideals")
    d.add_argument("--timings", action="store_true", help="include wall-clock timings (output is then not reproducible)")

    c = sub.add_parser("check", help="validate the symmetry only")
    common(c, order=True)
    c.add_argument("--radical", action="store_true")

    g = sub.add_parser("gb", help="reduced Groebner basis of the ideal section")
    common(g, order=True)

    pr = sub.add_parser("project", help="project Z onto a subset of the t variables")
    common(pr, order=True)
    pr.add_argument("--keep", required=True, help="comma-separated variables to keep, e.g. t1,t2,t3,t4")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, output: Optional[str]):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_problem(args):
    problem = parse_problem(_read(args.file))
    opts = problem.options
    if getattr(args, "order", None):
        opts.order = MonomialOrder.from_name(args.order)
    if args.budget is not None:
        opts.budget = args.budget
    if getattr(args, "radical", False):
        opts.radical = True
    if getattr(args, "no_verify", False):
        opts.verify = False
    return problem


def cmd_descend(args) -> int:
    problem = _load_problem(args)
    report = descend(problem)
    render = render_json if args.format == "json" else render_text
    _emit(render(report, timings=args.timings), args.output)
    return EXIT_OK if report.passed else EXIT_CERTIFICATE


def cmd_check(args) -> int:
    problem = _load_problem(args)
    certs = validate_symmetry(problem)
    ok = all(c.passed for c in certs)
    if args.format == "json":
        body = {c.name: ({"pass": c.passed, "detail": c.detail} | ({"witness": c.witness} if c.witness else {})) for c in certs}
        text = json.dumps({"certificates": body, "passed": ok}, indent=2) + "\n"
    else:
        lines = []
        for c in certs:
            lines.append(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
            if c.witness:
                lines.append(f"       witness: {c.witness}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK if ok else EXIT_SYMMETRY


def cmd_gb(args) -> int:
    pf = parse_problem_file(_read(args.file), require_symmetry=False)
    order_name = args.order or pf.options.get("order", "grevlex")
    try:
        order = MonomialOrder.from_name(order_name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    budget = args.budget if args.budget is not None else (
        int(pf.options["budget"]) if "budget" in pf.options else default_budget()
    )
    basis = groebner(Ideal(pf.ideal, pf.context, pf.field), order, budget=budget)
    if args.format == "json":
        text = json.dumps({"order": str(order), "basis": [str(b) for b in basis]}, indent=2) + "\n"
    else:
        text = "".join(f"{b}\n" for b in basis)
    _emit(text, args.output)
    return EXIT_OK


def cmd_project(args) -> int:
    keep = [k.strip() for k in args.keep.split(",") if k.strip()]
    if not keep:
        raise UsageError("--keep needs at least one variable")
    problem = _load_problem(args)
    problem.options.verify = False
    report = descend(problem)
    Z = Ideal(report.z_generators, report.z_context, problem.field)
    unknown = [k for k in keep if k not in report.z_context]
    if unknown:
        raise UsageError(f"unknown variables in --keep: {', '.join(unknown)}")
    proj = project_Z(Z, keep, budget=problem.options.budget, max_bits=problem.options.max_bits)
    _emit(render_projection(proj, args.format), args.output)
    return EXIT_OK


COMMANDS = {"descend": cmd_descend, "check": cmd_check, "gb": cmd_gb, "project": cmd_project}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ParseError, UsageError, OSError, ValueError) as exc:
        print(f"realdescent: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SymmetryError as exc:
        print(f"realdescent: invalid symmetry: {exc}", file=sys.stderr)
        if exc.certificate.witness:
            print(f"realdescent: witness: {exc.certificate.witness}", file=sys.stderr)
        return EXIT_SYMMETRY
    except ResourceLimitError as exc:
        print(
            f"realdescent: resource limit: {exc} (pairs processed: {exc.pairs}, basis size: {exc.basis_size})",
            file=sys.stderr,
        )
        return EXIT_RESOURCE
    except DescentError as exc:
        print(f"realdescent: certificate failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE


if __name__ == "__main__":
    sys.exit(main())
