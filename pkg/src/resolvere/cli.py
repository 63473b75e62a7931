"""Command-line front end.

Exit codes: 0 success (refutation found, trace valid, model ok, ...),
1 negative answer, 2 resource or budget exhausted, 64 usage error,
65 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus
from .cnf import clausify_problem
from .engine import (
    REFUTATION,
    RESOURCE_OUT,
    SATURATED,
    InferenceError,
    SaturationConfig,
    check_trace,
    saturate,
    trace_from_dict,
    trace_to_json,
)
from .induction import InductionSchema, check_expansion_equiv, expand
from .oracle import BudgetExceeded, counterexample
from .parser import ParseError, clause_text, parse_problem, parse_term
from .formulas import to_text
from .terms import Factor, Input, Resolvent

EX_OK, EX_NO, EX_BUDGET, EX_USAGE, EX_DATAERR = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _problem(path: str):
    try:
        return parse_problem(_read(path))
    except ParseError as exc:
        raise InputError(f"{path}:{exc}") from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def _count(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {n}")
    return n


# -- subcommands -----------------------------------------------------------------


def cmd_clausify(args, out) -> int:
    prob = _problem(args.file)
    for k, c in enumerate(clausify_problem(prob, negate_conjectures=not args.keep_conjecture)):
        name = c.provenance.name if isinstance(c.provenance, Input) else f"c{k + 1}"
        out.write(f"clause({name}, {clause_text(c)}).\n")
    return EX_OK


def _pretty(trace, out) -> None:
    for c in trace.steps:
        prov = c.provenance
        if isinstance(prov, Resolvent):
            how = f"resolve {prov.parents[0]}.{prov.positions[0]} {prov.parents[1]}.{prov.positions[1]}"
        elif isinstance(prov, Factor):
            how = f"factor {prov.parent}.{prov.positions[0]},{prov.positions[1]}"
        else:
            how = f"input {prov.name}"
        out.write(f"{c.id:>5}  {clause_text(c):<40} {how}\n")


def cmd_prove(args, out) -> int:
    prob = _problem(args.file)
    cfg = SaturationConfig(
        max_clauses=args.max_clauses,
        timeout_ms=args.timeout_ms,
        forward_subsumption=not args.no_subsumption,
    )
    res = saturate(clausify_problem(prob), cfg)
    doc = trace_to_json(res.trace, args.file, res.status)
    if args.trace_out:
        try:
            with open(args.trace_out, "w", encoding="utf-8") as fh:
                fh.write(doc)
        except OSError as exc:
            raise InputError(f"cannot write {args.trace_out}: {exc.strerror}") from None
    if args.pretty:
        out.write(f"% {res.status}" + (f" ({res.reason})" if res.reason else "") + "\n")
        if res.trace is not None:
            _pretty(res.trace, out)
    else:
        out.write(doc)
    sys.stderr.write(f"{res.status}: {res.iterations} iterations, {len(res.derived)} clauses kept\n")
    return {REFUTATION: EX_OK, SATURATED: EX_NO, RESOURCE_OUT: EX_BUDGET}[res.status]


def cmd_verify(args, out) -> int:
    try:
        doc = json.loads(_read(args.trace))
        trace = trace_from_dict(doc)
    except (ValueError, KeyError, TypeError, ParseError) as exc:
        raise InputError(f"{args.trace}: malformed trace: {exc}") from None
    prob = _problem(args.file)
    diag = check_trace(trace, clausify_problem(prob), refutation=doc.get("result", REFUTATION) == REFUTATION)
    if diag is None:
        out.write(f"ok: {len(trace)} steps verified\n")
        return EX_OK
    sys.stderr.write(f"rejected: {diag}\n")
    return EX_NO


def cmd_expand(args, out) -> int:
    try:
        base, step = parse_term(args.base), parse_term(args.step)
    except ParseError as exc:
        raise UsageError(f"bad term: {exc}") from None
    try:
        schema = InductionSchema(args.pred, base, step)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    exp = expand(schema, args.depth, args.wrap)
    out.write("domain: {" + ", ".join(map(str, exp.domain)) + "}\n")
    out.write(f"conjunction: {to_text(exp.conjunction)}\n")
    if args.check:
        ok = check_expansion_equiv(schema, args.depth, args.wrap)
        out.write(f"equivalent: {'true' if ok else 'false'}\n")
        return EX_OK if ok else EX_NO
    return EX_OK


def cmd_check_model(args, out) -> int:
    model = _problem(args.model)
    prob = _problem(args.problem)
    m = model.interpretation()
    if not m.rules:
        raise InputError(f"{args.model}: no model statements")
    try:
        bad = counterexample(m, clausify_problem(prob, negate_conjectures=False), args.depth)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if bad is None:
        out.write(f"model satisfies every ground instance up to depth {args.depth}\n")
        return EX_OK
    out.write(f"counterexample: {clause_text(bad)}\n")
    return EX_NO


def cmd_replay(args, out) -> int:
    try:
        report = corpus.replay(args.variant)
    except InferenceError as exc:
        sys.stderr.write(f"replay mismatch: {exc}\n")
        return EX_NO
    out.write(report.text())
    return EX_OK if report.ok else EX_NO


def cmd_ablate(args, out) -> int:
    res = corpus.ablation(args.variant, args.depth)
    out.write(corpus.ablation_text(res))
    return EX_OK if res.ok else EX_NO


# -- dispatch --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="resolvere", description="First-order resolution prover and replay tools.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("clausify", help="print the clause form of a problem")
    c.add_argument("file")
    c.add_argument("--keep-conjecture", action="store_true", help="clausify conjectures without negating them")
    c.set_defaults(func=cmd_clausify)

    c = sub.add_parser("prove", help="refute axioms plus the negated conjecture")
    c.add_argument("file")
    c.add_argument("--max-clauses", type=_positive, default=SaturationConfig.max_clauses)
    c.add_argument("--timeout-ms", type=_positive, default=SaturationConfig.timeout_ms)
    c.add_argument("--trace-out", metavar="PATH")
    c.add_argument("--no-subsumption", action="store_true")
    c.add_argument("--pretty", action="store_true", help="human-readable trace instead of JSON")
    c.set_defaults(func=cmd_prove)

    c = sub.add_parser("verify", help="re-check a JSON proof trace")
    c.add_argument("trace")
    c.add_argument("file")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("expand-induction", help="unfold an induction schema")
    c.add_argument("--pred", required=True)
    c.add_argument("--base", required=True)
    c.add_argument("--step", required=True, help="term with one variable, e.g. s(X)")
    c.add_argument("--depth", type=_count, required=True)
    c.add_argument("--wrap", help="wrap every atom in this unary predicate, e.g. bew")
    c.add_argument("--check", action="store_true", help="truth-table check of the unfolding")
    c.set_defaults(func=cmd_expand)

    c = sub.add_parser("check-model", help="check a head-symbol model against a problem")
    c.add_argument("model")
    c.add_argument("problem")
    c.add_argument("--depth", type=_count, required=True)
    c.set_defaults(func=cmd_check_model)

    c = sub.add_parser("replay-goedel", help="replay the provability derivation")
    c.add_argument("--variant", choices=corpus.VARIANTS, default=corpus.FAITHFUL)
    c.set_defaults(func=cmd_replay)

    c = sub.add_parser("ablate-goedel", help="saturate S without c33/c34 and check the all-false model")
    c.add_argument("--variant", choices=corpus.VARIANTS, default=corpus.FAITHFUL)
    c.add_argument("--depth", type=_count, default=3)
    c.set_defaults(func=cmd_ablate)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EX_USAGE
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EX_DATAERR
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EX_BUDGET


if __name__ == "__main__":
    sys.exit(main())
