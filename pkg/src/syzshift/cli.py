"""Command-line driver: ``syzshift {resolve,betti,check,witness,explore}``.

Exit codes: 0 success, 1 tool failure, 2 mathematical finding or expectation
mismatch, 64 usage error, 65 input parse error, 70 step budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from .algebra import FieldSpec, format_polynomial
from .errors import (BudgetExceededError, ContractError, InternalContradictionError, ParseError,
                     SyzShiftError)
from .explorer import CLASSES, SearchParams, search
from .groebner import DEFAULT_BUDGET
from .ideal_io import SCHEMA_VERSION, analysis_tree, emit_report, parse, print_betti
from .resolution import betti_table, resolve
from .shifts import WitnessBuilder, analyze

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FINDING = 2
EXIT_USAGE = 64
EXIT_PARSE = 65
EXIT_BUDGET = 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    fld = p.add_mutually_exclusive_group()
    fld.add_argument("--char", type=int, metavar="P", help="work over GF(P), overriding the file")
    fld.add_argument("--rationals", action="store_true", help="work over QQ, overriding the file")
    p.add_argument("--order", choices=("grevlex", "lex"), help="monomial order, overriding the file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, metavar="STEPS",
                   help="maximum number of S-pair reductions per Groebner computation")
    p.add_argument("--report", metavar="PATH", help="write a JSON report to PATH")
    p.add_argument("--quiet", action="store_true", help="print nothing on success")
    return p


def _input_args(p: argparse.ArgumentParser):
    p.add_argument("file", nargs="?", help="ideal file, '-' for stdin, or @NAME for a bundled fixture")
    p.add_argument("--inline", metavar="TEXT", help="ideal document given on the command line")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = _Parser(prog="syzshift", description="Minimal free resolutions and shift inequalities.")
    sub = top.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("resolve", parents=[common], help="print the shape of the minimal resolution")
    _input_args(p)
    p.add_argument("--matrices", action="store_true", help="also print the differentials")

    p = sub.add_parser("betti", parents=[common], help="print the graded Betti table")
    _input_args(p)

    p = sub.add_parser("check", parents=[common], help="run every shift check and the expect block")
    _input_args(p)
    p.add_argument("--no-witness", action="store_true", help="skip the witness construction")

    p = sub.add_parser("witness", parents=[common], help="print the syzygy witness at one step")
    _input_args(p)
    p.add_argument("--step", type=int, required=True, metavar="N")

    p = sub.add_parser("explore", parents=[common], help="search random monomial/homogeneous ideals")
    p.add_argument("--class", dest="ideal_class", choices=CLASSES, default="generic-monomial")
    p.add_argument("--vars", type=int, default=4, metavar="D")
    p.add_argument("--max-deg", type=int, default=4, metavar="K")
    p.add_argument("--min-gens", type=int, default=1)
    p.add_argument("--max-gens", type=int, default=5)
    p.add_argument("--samples", type=int, default=100, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    return top


# -- helpers -----------------------------------------------------------------------


def _field(args):
    if args.rationals:
        return FieldSpec.rationals()
    if args.char is not None:
        try:
            return FieldSpec(args.char)
        except ValueError as e:
            raise UsageError(str(e)) from None
    return None


def _read_input(args):
    if (args.file is None) == (args.inline is None):
        raise UsageError("give exactly one of FILE or --inline")
    if args.inline is not None:
        text, name = args.inline, "<inline>"
    elif args.file == "-":
        text, name = sys.stdin.read(), "<stdin>"
    elif args.file.startswith("@"):
        name = args.file[1:]
        res = resources.files("syzshift") / "fixtures" / f"{name}.ideal"
        if not res.is_file():
            raise UsageError(f"no bundled fixture named {name!r}")
        text = res.read_text(encoding="utf-8")
    else:
        path = Path(args.file)
        text, name = path.read_text(encoding="utf-8"), str(path)
    return parse(text, name, field=_field(args), order=args.order)


def _write_report(args, tree: dict):
    if args.report:
        Path(args.report).write_text(emit_report(tree), encoding="utf-8")


def _shift_str(shifts) -> str:
    out = []
    prev, count = None, 0
    for j in list(shifts) + [None]:
        if j == prev:
            count += 1
            continue
        if prev is not None:
            out.append(f"S(-{prev})^{count}" if count > 1 else f"S(-{prev})")
        prev, count = j, 1
    return " + ".join(out) if out else "0"


def _element_str(v) -> str:
    if not v:
        return "0"
    return ", ".join(f"e{i}: {format_polynomial(f)}" for i, f in v.items())


# -- commands ------------------------------------------------------------------------


def cmd_resolve(args, out) -> int:
    doc = _read_input(args)
    F = resolve(doc.ideal, doc.ring, args.budget)
    if args.report:
        _write_report(args, analysis_tree(analyze(doc.ideal, doc.ring, witnesses=False, budget=args.budget), doc))
    if args.quiet:
        return EXIT_OK
    out.write(f"ring {doc.ring.field}[{', '.join(doc.ring.variables)}] order {doc.ring.order}\n")
    out.write(f"ranks {tuple(F.ranks)}\n")
    for n in range(F.length + 1):
        M = F.module(n)
        out.write(f"F_{n}: rank {M.rank}: {_shift_str(sorted(M.shifts)) if n else 'S'}\n")
    if args.matrices:
        for n in range(1, F.length + 1):
            D = F.differential(n)
            out.write(f"d_{n}: F_{n} -> F_{n - 1}\n")
            for i, col in enumerate(D.columns):
                out.write(f"  col {i}: {_element_str(col)}\n")
    return EXIT_OK


def cmd_betti(args, out) -> int:
    doc = _read_input(args)
    B = betti_table(resolve(doc.ideal, doc.ring, args.budget))
    if args.report:
        _write_report(args, analysis_tree(analyze(doc.ideal, doc.ring, witnesses=False, budget=args.budget), doc))
    if not args.quiet:
        out.write(print_betti(B))
    return EXIT_OK


def cmd_check(args, out) -> int:
    doc = _read_input(args)
    A = analyze(doc.ideal, doc.ring, witnesses=not args.no_witness, budget=args.budget)
    B = A.betti
    _write_report(args, analysis_tree(A, doc))
    findings = A.theorem_failures()
    mismatches = doc.check_expectations(B.t, B.T)
    if not args.quiet:
        out.write(print_betti(B))
        g = A.gorenstein
        out.write(f"projdim = {B.projdim}, codim = {g.h}, regularity = {A.regularity}\n")
        if g.is_cm_gorenstein:
            out.write(f"Gorenstein (Cohen-Macaulay, last Betti number 1): h = {g.h}, c = {g.c}, "
                      f"duality {'holds' if g.duality_ok else 'FAILS'}\n")
        else:
            out.write("not Gorenstein by the Cohen-Macaulay criterion\n")
        if A.purity.is_pure:
            out.write(f"pure, shifts {tuple(A.purity.shifts)}\n")
        ineq = A.inequalities
        tight = [r.n for r in ineq.theorem1 if r.tight]
        out.write(f"t_n <= t_1 + T_(n-1): {'holds' if not ineq.failures('theorem1') else 'FAILS'} "
                  f"for n = 1..{B.projdim}; tight at n = {tuple(tight)}\n")
        if ineq.tail:
            out.write(f"T_n <= T_a + T_(n-a) for n >= h-1: "
                      f"{'holds' if not ineq.failures('tail') else 'FAILS'}\n")
        if ineq.herzog_srinivasan:
            out.write(f"T_(a+1) <= T_a + T_1: {'holds' if not ineq.failures('herzog_srinivasan') else 'FAILS'}\n")
        for w in A.witnesses:
            out.write(f"witness n = {w.n}: column {w.t}, degree {w.degree} <= {w.bound}, "
                      f"{'verified' if w.verified else 'NOT VERIFIED'}\n")
        for r in A.informational():
            out.write(f"note: T_{r.a + r.b} = {r.T_sum} > T_{r.a} + T_{r.b} = {r.bound} (subadditivity fails)\n")
        for label, exp, got in mismatches:
            out.write(f"expect mismatch: {label} expected {tuple(exp)}, computed {tuple(got)}\n")
        for f in findings:
            out.write(f"FINDING: {f}\n")
    return EXIT_FINDING if findings or mismatches else EXIT_OK


def cmd_witness(args, out) -> int:
    doc = _read_input(args)
    F = resolve(doc.ideal, doc.ring, args.budget)
    if not 2 <= args.step <= F.length:
        raise UsageError(f"--step must be between 2 and projdim = {F.length}")
    wb = WitnessBuilder(F, budget=args.budget)
    w = wb.certificate(args.step)
    if args.report:
        _write_report(args, {"schema_version": SCHEMA_VERSION, "witness": {
            "n": w.n, "t": w.t, "generator": w.generator, "degree": w.degree, "bound": w.bound,
            "cycle": {str(i): format_polynomial(f) for i, f in w.cycle.items()},
            "lift": {str(i): format_polynomial(f) for i, f in w.lift.items()},
            "cycle_is_closed": w.cycle_is_closed, "lift_ok": w.lift_ok, "cycle_nonzero": w.cycle_nonzero,
            "degree_ok": w.degree_ok, "rank_argument_ok": w.rank_argument_ok, "verified": w.verified}})
    if not args.quiet:
        g = F.differential(1).columns[w.generator][0]
        out.write(f"step n = {w.n}\n")
        out.write(f"f_11 = generator {w.generator}: {format_polynomial(g)}\n")
        out.write(f"column t = {w.t} of F_{w.n - 1}\n")
        out.write(f"cycle Z in F_{w.n - 1}: {_element_str(w.cycle)}\n")
        out.write(f"lift in F_{w.n}: {_element_str(w.lift)}\n")
        out.write(f"degree = {w.degree}, bound t_1 + T_{w.n - 1} = {w.bound}\n")
        out.write(f"d(Z) = 0: {w.cycle_is_closed}\n")
        out.write(f"d(lift) = Z: {w.lift_ok}\n")
        out.write(f"Z != 0: {w.cycle_nonzero}\n")
        out.write(f"degree ok: {w.degree_ok}\n")
        out.write(f"ranks at a generic point: rank d_{w.n} = {w.rank_n}, rank d_{w.n - 1} = {w.rank_prev}, "
                  f"rank F_{w.n - 1} = {w.beta_prev}: {w.rank_argument_ok}\n")
        out.write(f"verified: {w.verified}\n")
    return EXIT_OK if w.verified else EXIT_FINDING


def cmd_explore(args, out) -> int:
    fld = _field(args)
    char = fld.characteristic if fld is not None else 32003
    try:
        params = SearchParams(nvars=args.vars, max_degree=args.max_deg, min_gens=args.min_gens,
                              max_gens=args.max_gens, ideal_class=args.ideal_class,
                              samples=args.samples, seed=args.seed, characteristic=char)
    except ContractError as e:
        raise UsageError(str(e)) from None
    rep = search(params, budget=args.budget)
    _write_report(args, {"schema_version": SCHEMA_VERSION, "explorer": rep.as_dict()})
    if not args.quiet:
        c = rep.counts()
        out.write(f"class {params.ideal_class}, {params.nvars} variables, degree <= {params.max_degree}, "
                  f"seed {params.seed}\n")
        out.write(f"analyzed {len(rep.samples)} of {params.samples} samples, skipped {len(rep.skipped)}\n")
        out.write(f"violations: t_n <= t_1 + T_(n-1): {c['theorem1']}, "
                  f"T_(a+b) <= T_a + T_b: {c['subadditivity']}, "
                  f"T_(a+1) <= T_a + T_1: {c['herzog_srinivasan']}\n")
        hist = ", ".join(f"n={n}: {k}" for n, k in sorted(rep.theorem1_tight.items()))
        out.write(f"tight t_n = t_1 + T_(n-1): {hist or 'none'}\n")
        for v in rep.violations:
            kind = "FINDING" if v.expected_to_hold else "note"
            out.write(f"{kind}: sample {v.index} {v.category} {v.record}\n")
    return EXIT_FINDING if rep.findings() else EXIT_OK


COMMANDS = {"resolve": cmd_resolve, "betti": cmd_betti, "check": cmd_check,
            "witness": cmd_witness, "explore": cmd_explore}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.budget < 1:
            raise UsageError("--budget must be positive")
        return COMMANDS[args.command](args, out)
    except SystemExit as e:          # --help
        return e.code if isinstance(e.code, int) else EXIT_OK
    except UsageError as e:
        err.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except ParseError as e:
        err.write(f"parse error: {e}\n")
        return EXIT_PARSE
    except BudgetExceededError as e:
        err.write(f"budget exceeded: {e}\n")
        return EXIT_BUDGET
    except InternalContradictionError as e:
        err.write(f"internal error (a bug, not a counterexample): {e}\n")
        return EXIT_ERROR
    except (SyzShiftError, OSError, UnicodeDecodeError) as e:
        err.write(f"error: {e}\n")
        return EXIT_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
