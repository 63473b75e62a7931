"""Clause normal form.

Pipeline: universal closure, eliminate ``<=>``/``=>``, negation normal form,
standardize bound variables apart, Skolemize, drop universal quantifiers and
distribute ``|`` over ``&``.  No miniscoping and no definitional CNF.
"""

from __future__ import annotations

from typing import Iterable

from .formulas import And, Atom, Exists, ForAll, Formula, Iff, Implies, Not, Or, free_vars
from .terms import Clause, Fn, Input, Literal, Term, Var, apply, normalize_vars


class SkolemNamer:
    """Hands out ``sk1, sk2, ...`` skipping any symbol in ``avoid``."""

    def __init__(self, avoid: Iterable[str] = (), prefix: str = "sk"):
        self.avoid = set(avoid)
        self.prefix = prefix
        self.counter = 0

    def fresh(self) -> str:
        while True:
            self.counter += 1
            name = f"{self.prefix}{self.counter}"
            if name not in self.avoid:
                self.avoid.add(name)
                return name


def symbols(f: Formula, acc: set | None = None) -> set[str]:
    """Predicate and functor names occurring in ``f``."""
    if acc is None:
        acc = set()

    def visit(t: Term):
        if type(t) is Fn:
            acc.add(t.functor)
            for a in t.args:
                visit(a)

    if type(f) is Atom:
        acc.add(f.predicate)
        for a in f.args:
            visit(a)
    elif type(f) in (Not, ForAll, Exists):
        symbols(f.body, acc)
    else:
        symbols(f.left, acc)
        symbols(f.right, acc)
    return acc


def close(f: Formula) -> Formula:
    for v in reversed(free_vars(f)):
        f = ForAll(v, f)
    return f


def eliminate_arrows(f: Formula) -> Formula:
    t = type(f)
    if t is Atom:
        return f
    if t is Not:
        return Not(eliminate_arrows(f.body))
    if t in (ForAll, Exists):
        return t(f.var, eliminate_arrows(f.body))
    left, right = eliminate_arrows(f.left), eliminate_arrows(f.right)
    if t is Implies:
        return Or(Not(left), right)
    if t is Iff:
        return And(Or(Not(left), right), Or(left, Not(right)))
    return t(left, right)


def nnf(f: Formula) -> Formula:
    """Negation normal form of an arrow-free formula."""
    t = type(f)
    if t is Atom:
        return f
    if t in (ForAll, Exists):
        return t(f.var, nnf(f.body))
    if t in (And, Or):
        return t(nnf(f.left), nnf(f.right))
    g = f.body
    tg = type(g)
    if tg is Atom:
        return f
    if tg is Not:
        return nnf(g.body)
    if tg is And:
        return Or(nnf(Not(g.left)), nnf(Not(g.right)))
    if tg is Or:
        return And(nnf(Not(g.left)), nnf(Not(g.right)))
    if tg is ForAll:
        return Exists(g.var, nnf(Not(g.body)))
    if tg is Exists:
        return ForAll(g.var, nnf(Not(g.body)))
    raise ValueError(f"arrows must be eliminated before NNF: {type(g).__name__}")


def standardize_apart(f: Formula) -> Formula:
    """Give every quantifier its own variable name."""
    used: set[str] = set(free_vars(f))

    def walk(g: Formula, ren: dict) -> Formula:
        t = type(g)
        if t is Atom:
            return Atom(g.predicate, tuple(apply(ren, a) for a in g.args)) if ren else g
        if t is Not:
            return Not(walk(g.body, ren))
        if t in (ForAll, Exists):
            name = g.var
            if name in used:
                k = 1
                while f"{name}{k}" in used:
                    k += 1
                name = f"{name}{k}"
            used.add(name)
            inner = dict(ren)
            if name != g.var:
                inner[g.var] = Var(name)
            else:
                inner.pop(g.var, None)
            return t(name, walk(g.body, inner))
        return t(walk(g.left, ren), walk(g.right, ren))

    return walk(f, {})


def skolemize(f: Formula, namer: SkolemNamer) -> Formula:
    """Replace existentials (NNF, standardized) by Skolem terms; drop universals."""

    def walk(g: Formula, universals: tuple, sub: dict) -> Formula:
        t = type(g)
        if t is Atom:
            return Atom(g.predicate, tuple(apply(sub, a) for a in g.args)) if sub else g
        if t is Not:
            return Not(walk(g.body, universals, sub))
        if t is ForAll:
            return walk(g.body, universals + (g.var,), sub)
        if t is Exists:
            sk = Fn(namer.fresh(), tuple(Var(v) for v in universals))
            return walk(g.body, universals, {**sub, g.var: sk})
        return t(walk(g.left, universals, sub), walk(g.right, universals, sub))

    return walk(f, (), {})


def _literal(g: Formula) -> Literal:
    if type(g) is Atom:
        return Literal(True, g.predicate, g.args)
    if type(g) is Not and type(g.body) is Atom:
        return Literal(False, g.body.predicate, g.body.args)
    raise ValueError(f"not a literal: {g}")


def distribute(f: Formula) -> list[list[Literal]]:
    t = type(f)
    if t is And:
        return distribute(f.left) + distribute(f.right)
    if t is Or:
        return [a + b for a in distribute(f.left) for b in distribute(f.right)]
    return [[_literal(f)]]


def clausify(f: Formula, namer: SkolemNamer | None = None, name: str | None = None) -> list[Clause]:
    """Equisatisfiable clause list for ``f``; free variables are universal.

    Skolem symbols come from ``namer``; by default a fresh namer avoiding the
    symbols of ``f`` is used, so numbering restarts at ``sk1``.
    """
    if namer is None:
        namer = SkolemNamer(symbols(f))
    g = standardize_apart(nnf(eliminate_arrows(close(f))))
    matrix = skolemize(g, namer)
    prov = Input(name) if name is not None else None
    return [normalize_vars(Clause(tuple(lits), None, prov)) for lits in distribute(matrix)]


def problem_symbols(problem) -> set[str]:
    out: set[str] = set()
    for nf in problem.formulas:
        symbols(nf.formula, out)
    for c in problem.clauses:
        for lit in c.literals:
            symbols(Atom(lit.predicate, lit.args), out)
    return out


def clausify_problem(problem, namer: SkolemNamer | None = None, negate_conjectures: bool = True) -> list[Clause]:
    """Input clauses for refutation: clauses, clausified axioms, negated conjecture.

    Multiple conjectures are read as their conjunction, so the negation is a
    single disjunction.
    """
    if namer is None:
        namer = SkolemNamer(problem_symbols(problem))
    out = list(problem.clauses)
    conjectures = []
    for nf in problem.formulas:
        if nf.role == "axiom":
            cs = clausify(nf.formula, namer)
            out.extend(_name_parts(cs, nf.name))
        else:
            conjectures.append(nf)
    if conjectures:
        goal = close(conjectures[0].formula)
        for nf in conjectures[1:]:
            goal = And(goal, close(nf.formula))
        if negate_conjectures:
            goal = Not(goal)
        label = "negated_" + "_".join(nf.name for nf in conjectures) if negate_conjectures else conjectures[0].name
        out.extend(_name_parts(clausify(goal, namer), label))
    return out


def _name_parts(cs: list[Clause], base: str) -> list[Clause]:
    if len(cs) == 1:
        return [Clause(cs[0].literals, None, Input(base))]
    return [Clause(c.literals, None, Input(f"{base}_{k + 1}")) for k, c in enumerate(cs)]
