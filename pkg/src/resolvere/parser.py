"""Reader and printer for the problem file format.

::

    % line comment
    formula(step, axiom, ![X]: (p(X) => p(s(X)))).
    clause(c36, ~bew(X) | ~bew(not(X))).
    model(bew, head(0, r)).

Quantifiers bind tighter than every binary connective, as in TPTP; the
binary connectives rank ``&`` > ``|`` > ``=>`` > ``<=>`` with the last two
right-associative.  ``$false`` denotes the empty clause.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .formulas import And, Atom, Exists, ForAll, Formula, Iff, Implies, Not, Or, to_text
from .oracle import Const, HeadIs, Interpretation, RAnd, RNot, ROr, Rule
from .terms import Clause, Fn, Input, Literal, Term, Var


class ParseError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.message = message
        self.line = line
        self.col = col


class ArityError(ParseError):
    pass


class NameCollisionError(ParseError):
    pass


@dataclass(frozen=True)
class NamedFormula:
    name: str
    role: str
    formula: Formula


@dataclass
class Problem:
    formulas: list[NamedFormula] = field(default_factory=list)
    clauses: list[Clause] = field(default_factory=list)
    models: dict[str, Rule] = field(default_factory=dict)

    @property
    def axioms(self) -> list[NamedFormula]:
        return [f for f in self.formulas if f.role == "axiom"]

    @property
    def conjectures(self) -> list[NamedFormula]:
        return [f for f in self.formulas if f.role == "conjecture"]

    def interpretation(self) -> Interpretation:
        return Interpretation(dict(self.models))


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<op><=>|=>|\$false|[()\[\],.|&~!?:])
  | (?P<upper>[A-Z][A-Za-z0-9_]*)
  | (?P<lower>[a-z0-9][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "upper", "lower", "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            out.append(Token(kind, chunk, line, pos - line_start + 1))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.functors: dict[str, int] = {}
        self.predicates: dict[str, int] = {}

    # -- token helpers
    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text == text

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(f"expected {text!r}, got {tok.text or 'end of input'!r}", tok.line, tok.col)
        return tok

    def expect_kind(self, kind: str, what: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, got {tok.text or 'end of input'!r}", tok.line, tok.col)
        return tok

    def _arity(self, table: dict, tok: Token, n: int, what: str) -> None:
        known = table.setdefault(tok.text, n)
        if known != n:
            raise ArityError(f"{what} {tok.text} used with arity {n} and {known}", tok.line, tok.col)

    # -- terms and atoms
    def term(self) -> Term:
        tok = self.next()
        if tok.kind == "upper":
            return Var(tok.text)
        if tok.kind != "lower":
            raise ParseError(f"expected term, got {tok.text or 'end of input'!r}", tok.line, tok.col)
        args = self.arglist()
        self._arity(self.functors, tok, len(args), "functor")
        return Fn(tok.text, args)

    def arglist(self) -> tuple:
        if not self.at("("):
            return ()
        self.next()
        args = [self.term()]
        while self.at(","):
            self.next()
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    def atom(self) -> tuple[str, tuple]:
        tok = self.expect_kind("lower", "predicate")
        args = self.arglist()
        self._arity(self.predicates, tok, len(args), "predicate")
        return tok.text, args

    # -- formulas
    def formula(self) -> Formula:
        left = self.implication()
        if self.at("<=>"):
            self.next()
            return Iff(left, self.formula())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.at("=>"):
            self.next()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        out = self.conjunction()
        while self.at("|"):
            self.next()
            out = Or(out, self.conjunction())
        return out

    def conjunction(self) -> Formula:
        out = self.unary()
        while self.at("&"):
            self.next()
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        if self.at("~"):
            self.next()
            return Not(self.unary())
        if self.at("!") or self.at("?"):
            kind = ForAll if self.next().text == "!" else Exists
            self.expect("[")
            names = [self.expect_kind("upper", "variable").text]
            while self.at(","):
                self.next()
                names.append(self.expect_kind("upper", "variable").text)
            self.expect("]")
            self.expect(":")
            body = self.unary()
            for name in reversed(names):
                body = kind(name, body)
            return body
        if self.at("("):
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        pred, args = self.atom()
        return Atom(pred, args)

    # -- clauses
    def clause_body(self) -> tuple[Literal, ...]:
        if self.at("$false"):
            self.next()
            return ()
        if self.at("("):
            self.next()
            lits = self.clause_body()
            self.expect(")")
            return lits
        lits = [self.literal()]
        while self.at("|"):
            self.next()
            lits.append(self.literal())
        return tuple(lits)

    def literal(self) -> Literal:
        positive = True
        if self.at("~"):
            self.next()
            positive = False
        pred, args = self.atom()
        return Literal(positive, pred, args)

    # -- model rules
    def rule(self) -> Rule:
        out = self.rule_and()
        while self.at("|"):
            self.next()
            out = ROr(out, self.rule_and())
        return out

    def rule_and(self) -> Rule:
        out = self.rule_unary()
        while self.at("&"):
            self.next()
            out = RAnd(out, self.rule_unary())
        return out

    def rule_unary(self) -> Rule:
        if self.at("~"):
            self.next()
            return RNot(self.rule_unary())
        if self.at("("):
            self.next()
            r = self.rule()
            self.expect(")")
            return r
        tok = self.expect_kind("lower", "rule")
        if tok.text in ("true", "false"):
            return Const(tok.text == "true")
        if tok.text == "head":
            self.expect("(")
            idx = self.expect_kind("lower", "argument index")
            if not idx.text.isdigit():
                raise ParseError("argument index must be a non-negative integer", idx.line, idx.col)
            self.expect(",")
            functor = self.expect_kind("lower", "functor").text
            self.expect(")")
            return HeadIs(int(idx.text), functor)
        raise ParseError(f"unknown rule {tok.text!r}", tok.line, tok.col)

    # -- statements
    def problem(self) -> Problem:
        prob = Problem()
        names: set[str] = set()
        while self.peek().kind != "eof":
            head = self.expect_kind("lower", "statement keyword")
            if head.text not in ("formula", "clause", "model"):
                raise ParseError(f"unknown statement {head.text!r}", head.line, head.col)
            self.expect("(")
            name_tok = self.expect_kind("lower", "name")
            name = name_tok.text
            self.expect(",")
            if head.text == "formula":
                role = self.expect_kind("lower", "role")
                if role.text not in ("axiom", "conjecture"):
                    raise ParseError(f"unknown role {role.text!r}", role.line, role.col)
                self.expect(",")
                body = self.formula()
            elif head.text == "clause":
                body = self.clause_body()
            else:
                body = self.rule()
            self.expect(")")
            self.expect(".")
            if head.text == "model":
                if name in prob.models:
                    raise NameCollisionError(f"duplicate model for {name}", name_tok.line, name_tok.col)
                prob.models[name] = body
                continue
            if name in names:
                raise NameCollisionError(f"duplicate statement name {name}", name_tok.line, name_tok.col)
            names.add(name)
            if head.text == "formula":
                prob.formulas.append(NamedFormula(name, role.text, body))
            else:
                prob.clauses.append(Clause(body, None, Input(name)))
        return prob

    def finish(self):
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)


def parse_problem(text: str) -> Problem:
    """Parse a whole problem (formulas, clauses and model statements)."""
    return _Parser(text).problem()


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.finish()
    return t


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.finish()
    return f


def parse_clause(text: str) -> Clause:
    p = _Parser(text)
    if p.peek().kind == "eof":
        return Clause(())
    lits = p.clause_body()
    p.finish()
    return Clause(lits)


def parse_literal(text: str) -> Literal:
    p = _Parser(text)
    lit = p.literal()
    p.finish()
    return lit


def clause_text(c: Clause) -> str:
    return str(c) if c.literals else "$false"


def rule_text(r: Rule) -> str:
    if type(r) is Const:
        return "true" if r.value else "false"
    if type(r) is HeadIs:
        return f"head({r.index}, {r.functor})"
    if type(r) is RNot:
        return "~" + rule_text(r.body)
    op = "&" if type(r) is RAnd else "|"
    return f"({rule_text(r.left)} {op} {rule_text(r.right)})"


def problem_text(prob: Problem) -> str:
    lines = []
    for nf in prob.formulas:
        lines.append(f"formula({nf.name}, {nf.role}, {to_text(nf.formula)}).")
    for k, c in enumerate(prob.clauses):
        name = c.provenance.name if isinstance(c.provenance, Input) else f"c{k + 1}"
        lines.append(f"clause({name}, {clause_text(c)}).")
    for pred, r in prob.models.items():
        lines.append(f"model({pred}, {rule_text(r)}).")
    return "\n".join(lines) + ("\n" if lines else "")
