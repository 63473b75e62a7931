"""Brute-force ground reasoning.

Truth tables over ground atoms, Herbrand grounding up to a term height, and
checking of small head-symbol model certificates.  Nothing here depends on
the resolution engine, so it can be used to audit it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from . import kernels
from .formulas import And, Atom, Formula, Iff, Implies, Not, Or, atoms, is_quantifier_free
from .terms import Clause, Fn, Literal, Term, signature

ATOM_BUDGET = 24
INSTANCE_BUDGET = 10**6


class BudgetExceeded(Exception):
    pass


# -- truth tables ------------------------------------------------------------


def _compile(f: Formula, index: dict, out: list) -> None:
    t = type(f)
    if t is Atom:
        out.append(index[f])
    elif t is Not:
        _compile(f.body, index, out)
        out.append(kernels.OP_NOT)
    elif t is And:
        _compile(f.left, index, out)
        _compile(f.right, index, out)
        out.append(kernels.OP_AND)
    elif t is Or:
        _compile(f.left, index, out)
        _compile(f.right, index, out)
        out.append(kernels.OP_OR)
    elif t is Implies:
        _compile(f.left, index, out)
        out.append(kernels.OP_NOT)
        _compile(f.right, index, out)
        out.append(kernels.OP_OR)
    elif t is Iff:
        _compile(f.left, index, out)
        _compile(f.right, index, out)
        out.extend((kernels.OP_XOR, kernels.OP_NOT))
    else:
        raise ValueError("truth tables need quantifier-free formulas")


def _atom_index(formulas: Iterable[Formula]) -> dict:
    index: dict = {}
    for f in formulas:
        if not is_quantifier_free(f):
            raise ValueError("truth tables need quantifier-free formulas")
        for a in atoms(f):
            index.setdefault(a, len(index))
    if len(index) > ATOM_BUDGET:
        raise BudgetExceeded(f"{len(index)} atoms exceed the budget of {ATOM_BUDGET}")
    return index


def _lit_atom(lit: Literal) -> Atom:
    return Atom(lit.predicate, lit.args)


def _compile_clauses(clauses: Iterable[Clause], index: dict, out: list) -> None:
    # conjunction of disjunctions; an empty clause is FALSE, an empty set TRUE
    out.append(kernels.OP_TRUE)
    for c in clauses:
        out.append(kernels.OP_FALSE)
        for lit in c.literals:
            out.append(index[_lit_atom(lit)])
            if not lit.positive:
                out.append(kernels.OP_NOT)
            out.append(kernels.OP_OR)
        out.append(kernels.OP_AND)


def _clause_index(clauses: Iterable[Clause]) -> dict:
    index: dict = {}
    for c in clauses:
        for lit in c.literals:
            index.setdefault(_lit_atom(lit), len(index))
    if len(index) > ATOM_BUDGET:
        raise BudgetExceeded(f"{len(index)} atoms exceed the budget of {ATOM_BUDGET}")
    return index


def propositional_equiv(f1: Formula, f2: Formula) -> bool:
    """True iff ``f1`` and ``f2`` agree on every assignment to their atoms."""
    index = _atom_index([f1, f2])
    prog: list[int] = []
    _compile(f1, index, prog)
    _compile(f2, index, prog)
    prog.append(kernels.OP_XOR)
    return kernels.find_true_row(prog, len(index)) < 0


def satisfying_row(f: Formula) -> dict | None:
    index = _atom_index([f])
    prog: list[int] = []
    _compile(f, index, prog)
    row = kernels.find_true_row(prog, len(index))
    if row < 0:
        return None
    return {a: bool((row >> i) & 1) for a, i in index.items()}


def satisfiable(f: Formula) -> bool:
    return satisfying_row(f) is not None


def valid(f: Formula) -> bool:
    return not satisfiable(Not(f))


def clauses_satisfiable(clauses: list[Clause]) -> bool:
    """Propositional satisfiability; each distinct atom is one variable."""
    index = _clause_index(clauses)
    prog: list[int] = []
    _compile_clauses(clauses, index, prog)
    return kernels.find_true_row(prog, len(index)) >= 0


def entails(premises: list[Clause], conclusion: Clause) -> bool:
    """Every assignment satisfying all ``premises`` satisfies ``conclusion``."""
    index = _clause_index(list(premises) + [conclusion])
    prog: list[int] = []
    _compile_clauses(premises, index, prog)
    # premises & ~conclusion
    prog.append(kernels.OP_FALSE)
    for lit in conclusion.literals:
        prog.append(index[_lit_atom(lit)])
        if not lit.positive:
            prog.append(kernels.OP_NOT)
        prog.append(kernels.OP_OR)
    prog.extend((kernels.OP_NOT, kernels.OP_AND))
    return kernels.find_true_row(prog, len(index)) < 0


# -- Herbrand grounding ------------------------------------------------------


def herbrand_universe(functors: dict[str, int], depth: int, budget: int = INSTANCE_BUDGET) -> list[Term]:
    """Ground terms of height <= ``depth`` ordered by height, then symbol, then args."""
    consts = sorted(f for f, n in functors.items() if n == 0)
    if not consts:
        name = "c"
        while name in functors:
            name += "0"
        consts = [name]
    universe: list[Term] = [Fn(c) for c in consts]
    funcs = sorted((f, n) for f, n in functors.items() if n > 0)
    prev_count = 0
    for _ in range(depth):
        newest = set(range(prev_count, len(universe)))
        base = list(universe)
        prev_count = len(universe)
        for f, n in funcs:
            for idx in itertools.product(range(len(base)), repeat=n):
                if not any(i in newest for i in idx):
                    continue
                universe.append(Fn(f, tuple(base[i] for i in idx)))
                if len(universe) > budget:
                    raise BudgetExceeded(f"Herbrand universe exceeds {budget} terms")
    return universe


def iter_ground_instances(
    clauses: list[Clause], depth: int, budget: int = INSTANCE_BUDGET
) -> Iterator[Clause]:
    if depth < 0:
        raise ValueError("depth must be >= 0")
    functors, _ = signature(clauses)
    universe = herbrand_universe(functors, depth, budget)
    total = 0
    for c in clauses:
        total += len(universe) ** len(c.vars())
        if total > budget:
            raise BudgetExceeded(f"more than {budget} ground instances at depth {depth}")
    for c in clauses:
        names = c.vars()
        for combo in itertools.product(universe, repeat=len(names)):
            yield c.substitute(dict(zip(names, combo)))


def ground_instances(clauses: list[Clause], depth: int, budget: int = INSTANCE_BUDGET) -> list[Clause]:
    """All instances of ``clauses`` by ground terms of height <= ``depth``."""
    return list(iter_ground_instances(clauses, depth, budget))


# -- model certificates ------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: bool

    def holds(self, args: tuple) -> bool:
        return self.value


@dataclass(frozen=True)
class HeadIs:
    """Argument ``index`` (0-based) is headed by ``functor``."""

    index: int
    functor: str

    def holds(self, args: tuple) -> bool:
        if self.index >= len(args):
            raise ValueError(f"head({self.index}, ...) on a {len(args)}-ary predicate")
        t = args[self.index]
        return type(t) is Fn and t.functor == self.functor


@dataclass(frozen=True)
class RNot:
    body: "Rule"

    def holds(self, args: tuple) -> bool:
        return not self.body.holds(args)


@dataclass(frozen=True)
class RAnd:
    left: "Rule"
    right: "Rule"

    def holds(self, args: tuple) -> bool:
        return self.left.holds(args) and self.right.holds(args)


@dataclass(frozen=True)
class ROr:
    left: "Rule"
    right: "Rule"

    def holds(self, args: tuple) -> bool:
        return self.left.holds(args) or self.right.holds(args)


Rule = Union[Const, HeadIs, RNot, RAnd, ROr]


@dataclass(frozen=True)
class Interpretation:
    rules: dict = field(default_factory=dict)

    @classmethod
    def constant(cls, predicates: Iterable[str], value: bool = False) -> "Interpretation":
        return cls({p: Const(value) for p in predicates})

    def holds(self, lit: Literal) -> bool:
        try:
            rule = self.rules[lit.predicate]
        except KeyError:
            raise ValueError(f"no rule for predicate {lit.predicate}") from None
        return rule.holds(lit.args) == lit.positive


def counterexample(m: Interpretation, clauses: list[Clause], depth: int, budget: int = INSTANCE_BUDGET):
    """First ground instance (height <= ``depth``) falsified by ``m``, or None."""
    _, preds = signature(clauses)
    missing = sorted(set(preds) - set(m.rules))
    if missing:
        raise ValueError(f"interpretation has no rule for {', '.join(missing)}")
    for g in iter_ground_instances(clauses, depth, budget):
        if not any(m.holds(lit) for lit in g.literals):
            return g
    return None


def check_model(m: Interpretation, clauses: list[Clause], depth: int, budget: int = INSTANCE_BUDGET) -> bool:
    """True iff every ground instance up to ``depth`` is satisfied by ``m``.

    Rules that only inspect head symbols make the verdict independent of
    ``depth`` as long as every head symbol of the signature appears at that
    depth; deeper inspection would need a larger depth.
    """
    return counterexample(m, clauses, depth, budget) is None

