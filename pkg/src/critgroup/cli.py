"""Command line entry point: ``critgroup <command> ...``.

Exit codes: 0 success, 1 usage or input error, 2 a verdict that differs
from the expectations file.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import closedform, graphs, harness, matforms, polyseq
from .exactlin import IntMatrix, MatrixFormatError, critical_group, dump_matrix, read_matrix, snf

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNEXPECTED = 2

# CLI family name -> graph family; the cone-* spellings are accepted too
GROUP_FAMILIES = {name: name for name in graphs.FAMILIES}
GROUP_FAMILIES.update({f"cone-{name}": name for name in graphs.FAMILIES})


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def _inline_or_file(value: str, label: str) -> IntMatrix:
    """A matrix file path, or rows like ``"3,1;1,3"``."""
    if os.path.exists(value):
        return read_matrix(value)
    try:
        rows = [[int(x) for x in row.split(",")] for row in value.split(";")]
        return IntMatrix.from_rows(rows)
    except ValueError:
        raise UsageError(f"{label}: {value!r} is neither a file nor rows like '3,1;1,3'") from None


# ---------------------------------------------------------------------------
# Commands


def cmd_snf(args) -> int:
    form = snf(read_matrix(args.matrixfile))
    print(" ".join(str(d) for d in form.diagonal))
    return EXIT_OK


def cmd_group(args) -> int:
    fam = GROUP_FAMILIES[args.family]
    closed = oracle = None
    if args.method in ("closed", "both"):
        if fam not in closedform.FORMULAS:
            raise UsageError(f"no closed form for {args.family}; use --method snf")
        try:
            closed = str(closedform.closed_form_group(fam, args.m, args.l, args.cone))
        except closedform.FormulaViolation as exc:
            closed = f"FormulaViolation({exc.expression} = {exc.numerator}/{exc.denominator})"
    if args.method in ("snf", "both"):
        G = graphs.family(fam, args.m, args.l, args.cone)
        oracle = str(critical_group(graphs.reduced_laplacian(G)))
    if args.method == "closed":
        print(closed)
    elif args.method == "snf":
        print(oracle)
    else:
        print(f"{closed} | {oracle} | {'MATCH' if closed == oracle else 'MISMATCH'}")
    return EXIT_OK


def cmd_matrix_build(args) -> int:
    spec = matforms.ParamMatrixSpec(args.kind, args.n, args.a, args.b)
    M = matforms.claimed_diagonal(spec).matrix() if args.claimed else matforms.build(spec)
    _emit(dump_matrix(M), args.out)
    return EXIT_OK


def cmd_matrix_phi(args) -> int:
    A = _inline_or_file(args.A, "--A")
    B = _inline_or_file(args.B, "--B")
    M = (matforms.phi_reduced if args.reduced else matforms.phi)(args.m, A, B)
    _emit(dump_matrix(M), args.out)
    return EXIT_OK


def cmd_graph_build(args) -> int:
    G = graphs.family(GROUP_FAMILIES[args.family], args.m, args.l, args.cone)
    if args.emit == "graph":
        text = graphs.dump_graph(G)
    elif args.emit == "laplacian":
        text = dump_matrix(graphs.laplacian(G))
    else:
        if G.sink is None:
            raise UsageError("--emit reduced needs --cone")
        text = dump_matrix(graphs.reduced_laplacian(G))
    _emit(text, args.out)
    return EXIT_OK


def cmd_poly(args) -> int:
    if args.which == "f":
        value = (polyseq.f_closed if args.closed else polyseq.f)(args.n, args.x, args.y)
    else:
        value = (polyseq.p_closed if args.closed else polyseq.p)(args.m, args.n, args.x, args.y)
    print(value)
    return EXIT_OK


def _write_reports(reports, args):
    if args.format == "csv":
        text = harness.report_csv(reports)
    else:
        text = harness.report_json(reports, include_timing=args.timing)
    _emit(text, args.out)


def _summarize(reports, expectations, *, check: bool, out: str | None) -> int:
    # the summary goes to stderr when the report itself is on stdout
    stream = sys.stderr if out is None else sys.stdout
    expected = expectations if check else {}
    for r in reports:
        want = expected.get(r.claim)
        flag = "" if not check or want == r.verdict else f"  (expected {want})"
        print(f"{r.claim:<18} {r.verdict:<9} {r.points_checked - r.failures}/{r.points_checked}{flag}", file=stream)
    bad = harness.unexpected(reports, expectations) if check else []
    if bad:
        print(f"{len(bad)} unexpected verdict(s): " + ", ".join(c for c, _, _ in bad), file=stream)
        return EXIT_UNEXPECTED
    return EXIT_OK


def cmd_verify(args) -> int:
    sweep = harness.parse_sweep(args.sweep) if args.sweep else None
    report = harness.verify(args.claim, sweep)
    _write_reports([report], args)
    # a custom sweep may legitimately change the verdict, so only default sweeps are checked
    return _summarize([report], harness.load_expectations(args.expectations), check=sweep is None, out=args.out)


def cmd_verify_all(args) -> int:
    expectations = harness.load_expectations(args.expectations)
    reports = harness.verify_all(jobs=args.jobs)
    _write_reports(reports, args)
    return _summarize(reports, expectations, check=True, out=args.out)


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="critgroup", description="Critical groups, Smith normal forms and a formula checker.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("snf", help="invariant factors of a matrix file")
    p.add_argument("matrixfile")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("group", help="critical group of a coned, duplicated family")
    p.add_argument("--family", required=True, choices=sorted(GROUP_FAMILIES))
    p.add_argument("--m", type=int, required=True, help="family size (n for path/cycle/complete)")
    p.add_argument("--l", type=int, default=1, help="duplication factor")
    p.add_argument("--cone", type=int, default=0, help="cone multiplicity")
    p.add_argument("--method", choices=("closed", "snf", "both"), default="both")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("matrix", help="build parametric or block matrices")
    msub = p.add_subparsers(dest="matrix_command", required=True, parser_class=_Parser)
    q = msub.add_parser("build", help="T_n, P_n, C_n or K_n with parameters a, b")
    q.add_argument("--kind", required=True, choices=matforms.KINDS)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--claimed", action="store_true", help="emit the claimed equivalent form instead")
    q.add_argument("--out")
    q.set_defaults(func=cmd_matrix_build)
    q = msub.add_parser("phi", help="block matrix Phi_m(A, B)")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--A", required=True, help="matrix file or rows like '3,1;1,3'")
    q.add_argument("--B", required=True, help="matrix file or rows like '0,1;1,0'")
    q.add_argument("--reduced", action="store_true", help="emit the reduced block form instead")
    q.add_argument("--out")
    q.set_defaults(func=cmd_matrix_phi)

    p = sub.add_parser("graph", help="build family multigraphs")
    gsub = p.add_subparsers(dest="graph_command", required=True, parser_class=_Parser)
    q = gsub.add_parser("build")
    q.add_argument("--family", required=True, choices=sorted(GROUP_FAMILIES))
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--l", type=int, default=1)
    q.add_argument("--cone", type=int, default=None, help="cone multiplicity; omit for no cone")
    q.add_argument("--emit", choices=("graph", "laplacian", "reduced"), default="graph")
    q.add_argument("--out")
    q.set_defaults(func=cmd_graph_build)

    p = sub.add_parser("poly", help="evaluate f_n(x, y) or p_m^n(x, y)")
    psub = p.add_subparsers(dest="which", required=True, parser_class=_Parser)
    q = psub.add_parser("f")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--x", type=int, required=True)
    q.add_argument("--y", type=int, required=True)
    q.add_argument("--closed", action="store_true", help="use the binomial sum")
    q.set_defaults(func=cmd_poly)
    q = psub.add_parser("p")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--n", type=int, required=True, help="ring size")
    q.add_argument("--x", type=int, required=True)
    q.add_argument("--y", type=int, required=True)
    q.add_argument("--closed", action="store_true", help="use the binomial sum")
    q.set_defaults(func=cmd_poly)

    for name, func, helptext in (
        ("verify", cmd_verify, "check one claim over a sweep"),
        ("verify-all", cmd_verify_all, "check every claim at its default sweep"),
    ):
        q = sub.add_parser(name, help=helptext)
        if name == "verify":
            q.add_argument("--claim", required=True, choices=list(harness.CLAIMS), metavar="ID")
            q.add_argument("--sweep", help="e.g. 'm=3:3,l=1:2,samples=50'")
        else:
            q.add_argument("--jobs", type=int, default=1)
        q.add_argument("--out", help="write the report here instead of stdout")
        q.add_argument("--format", choices=("json", "csv"), default="json")
        q.add_argument("--expectations", help="expected verdicts file (defaults to the bundled one)")
        q.add_argument("--timing", action="store_true", help="include per-claim seconds in JSON")
        q.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MatrixFormatError as exc:
        print(f"critgroup: malformed input: {exc}", file=sys.stderr)
    except (OSError, UsageError, ValueError, ArithmeticError) as exc:
        # SweepError and domain errors are ValueErrors, FormulaViolation an ArithmeticError
        print(f"critgroup: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
