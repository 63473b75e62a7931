"""First-order formula AST and its textual rendering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .terms import Fn, Literal, Term, Var, apply, term_vars


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Atom, Not, And, Or, Implies, Iff, ForAll, Exists]

_BINARY = {And: "&", Or: "|", Implies: "=>", Iff: "<=>"}


def conj(parts) -> Formula:
    """Left-nested conjunction of a non-empty sequence."""
    parts = list(parts)
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts) -> Formula:
    parts = list(parts)
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def atom_of(lit: Literal) -> Formula:
    a = Atom(lit.predicate, lit.args)
    return a if lit.positive else Not(a)


def free_vars(f: Formula, bound: frozenset = frozenset(), acc: list | None = None) -> list[str]:
    if acc is None:
        acc = []
    if type(f) is Atom:
        for a in f.args:
            for v in term_vars(a):
                if v not in bound and v not in acc:
                    acc.append(v)
    elif type(f) is Not:
        free_vars(f.body, bound, acc)
    elif type(f) in (ForAll, Exists):
        free_vars(f.body, bound | {f.var}, acc)
    else:
        free_vars(f.left, bound, acc)
        free_vars(f.right, bound, acc)
    return acc


def atoms(f: Formula, acc: list | None = None) -> list[Atom]:
    """Distinct atoms in left-to-right order."""
    if acc is None:
        acc = []
    if type(f) is Atom:
        if f not in acc:
            acc.append(f)
    elif type(f) in (Not, ForAll, Exists):
        atoms(f.body, acc)
    else:
        atoms(f.left, acc)
        atoms(f.right, acc)
    return acc


def is_quantifier_free(f: Formula) -> bool:
    if type(f) is Atom:
        return True
    if type(f) in (ForAll, Exists):
        return False
    if type(f) is Not:
        return is_quantifier_free(f.body)
    return is_quantifier_free(f.left) and is_quantifier_free(f.right)


def _term_text(t: Term) -> str:
    return str(t)


def to_text(f: Formula) -> str:
    """Render in the problem grammar; binary nodes are always parenthesized."""
    if type(f) is Atom:
        if not f.args:
            return f.predicate
        return f"{f.predicate}({', '.join(_term_text(a) for a in f.args)})"
    if type(f) is Not:
        return "~" + to_text(f.body)
    if type(f) is ForAll:
        return f"![{f.var}]: {to_text(f.body)}"
    if type(f) is Exists:
        return f"?[{f.var}]: {to_text(f.body)}"
    return f"({to_text(f.left)} {_BINARY[type(f)]} {to_text(f.right)})"


def substitute(f: Formula, sigma: dict) -> Formula:
    """Apply a term substitution to free occurrences (no capture check)."""
    if type(f) is Atom:
        return Atom(f.predicate, tuple(apply(sigma, a) for a in f.args))
    if type(f) is Not:
        return Not(substitute(f.body, sigma))
    if type(f) in (ForAll, Exists):
        inner = {k: v for k, v in sigma.items() if k != f.var}
        return type(f)(f.var, substitute(f.body, inner))
    return type(f)(substitute(f.left, sigma), substitute(f.right, sigma))


__all__ = [
    "And",
    "Atom",
    "Exists",
    "Fn",
    "ForAll",
    "Formula",
    "Iff",
    "Implies",
    "Not",
    "Or",
    "Var",
    "atom_of",
    "atoms",
    "conj",
    "disj",
    "free_vars",
    "is_quantifier_free",
    "substitute",
    "to_text",
]
