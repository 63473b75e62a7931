"""Symbolic first-order syntax: terms, literals, clauses and substitutions.

Variables are uppercase-initial names, functors and predicates are
lowercase-initial.  Everything here is immutable; substitutions are plain
``dict[str, Term]`` mappings treated as read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union


class Var:
    __slots__ = ("name", "_hash")

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("V", name))

    def __eq__(self, other):
        return type(other) is Var and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"

    def __str__(self):
        return self.name


class Fn:
    """Function application; a constant is an ``Fn`` with no arguments."""

    __slots__ = ("functor", "args", "_hash")

    def __init__(self, functor: str, args: Iterable["Term"] = ()):
        self.functor = functor
        self.args = tuple(args)
        self._hash = hash((functor, self.args))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is Fn
            and other._hash == self._hash
            and other.functor == self.functor
            and other.args == self.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Fn({self.functor!r}, {self.args!r})"

    def __str__(self):
        if not self.args:
            return self.functor
        return f"{self.functor}({', '.join(map(str, self.args))})"


Term = Union[Var, Fn]
Substitution = Mapping[str, Term]


def const(name: str) -> Fn:
    return Fn(name, ())


def is_ground(t: Term) -> bool:
    if type(t) is Var:
        return False
    return all(is_ground(a) for a in t.args)


def term_vars(t: Term, acc: list[str] | None = None) -> list[str]:
    """Variable names of ``t`` in order of first occurrence (no duplicates)."""
    if acc is None:
        acc = []
    if type(t) is Var:
        if t.name not in acc:
            acc.append(t.name)
    else:
        for a in t.args:
            term_vars(a, acc)
    return acc


def occurs(name: str, t: Term) -> bool:
    if type(t) is Var:
        return t.name == name
    return any(occurs(name, a) for a in t.args)


def term_size(t: Term) -> int:
    if type(t) is Var:
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def term_height(t: Term) -> int:
    if type(t) is Var or not t.args:
        return 0
    return 1 + max(term_height(a) for a in t.args)


def apply(sigma: Substitution, t: Term) -> Term:
    """Simultaneous (single pass) application of ``sigma`` to ``t``."""
    if not sigma:
        return t
    if type(t) is Var:
        return sigma.get(t.name, t)
    if not t.args:
        return t
    new_args = tuple(apply(sigma, a) for a in t.args)
    if new_args == t.args:
        return t
    return Fn(t.functor, new_args)


def compose(first: Substitution, then: Substitution) -> dict[str, Term]:
    """Substitution equivalent to applying ``first`` and then ``then``."""
    out = {}
    for name, t in first.items():
        t2 = apply(then, t)
        if not (type(t2) is Var and t2.name == name):
            out[name] = t2
    for name, t in then.items():
        if name not in first:
            out[name] = t
    return out


def is_idempotent(sigma: Substitution) -> bool:
    return all(apply(sigma, t) == t for t in sigma.values()) and not any(
        occurs(name, t) for name, t in sigma.items()
    )


@dataclass(frozen=True)
class Literal:
    positive: bool
    predicate: str
    args: tuple = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    @property
    def atom(self) -> Fn:
        return Fn(self.predicate, self.args)

    def negate(self) -> "Literal":
        return Literal(not self.positive, self.predicate, self.args)

    def substitute(self, sigma: Substitution) -> "Literal":
        if not sigma:
            return self
        return Literal(self.positive, self.predicate, tuple(apply(sigma, a) for a in self.args))

    def vars(self, acc: list[str] | None = None) -> list[str]:
        if acc is None:
            acc = []
        for a in self.args:
            term_vars(a, acc)
        return acc

    def __str__(self):
        core = self.predicate
        if self.args:
            core += f"({', '.join(map(str, self.args))})"
        return core if self.positive else "~" + core


@dataclass(frozen=True)
class Input:
    name: str


@dataclass(frozen=True)
class Resolvent:
    parents: tuple[int, int]
    positions: tuple[int, int]
    substitution: tuple  # sorted (name, Term) pairs


@dataclass(frozen=True)
class Factor:
    parent: int
    positions: tuple[int, int]
    substitution: tuple


Provenance = Union[Input, Resolvent, Factor]


def freeze_subst(sigma: Substitution) -> tuple:
    return tuple(sorted(sigma.items()))


@dataclass(frozen=True)
class Clause:
    """A multiset of literals.  Order is kept for stable printing and positions."""

    literals: tuple[Literal, ...] = ()
    id: int | None = field(default=None, compare=False)
    provenance: Provenance | None = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.literals, tuple):
            object.__setattr__(self, "literals", tuple(self.literals))

    def __len__(self):
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __getitem__(self, i: int) -> Literal:
        return self.literals[i]

    @property
    def is_empty(self) -> bool:
        return not self.literals

    def vars(self) -> list[str]:
        acc: list[str] = []
        for lit in self.literals:
            lit.vars(acc)
        return acc

    def substitute(self, sigma: Substitution) -> "Clause":
        return Clause(tuple(lit.substitute(sigma) for lit in self.literals), self.id, self.provenance)

    def weight(self) -> int:
        """Symbol count: predicate symbols plus all term symbols."""
        return sum(1 + sum(term_size(a) for a in lit.args) for lit in self.literals)

    def predicates(self) -> set[str]:
        return {lit.predicate for lit in self.literals}

    def __str__(self):
        return " | ".join(map(str, self.literals))


def clause(*lits: Literal, id: int | None = None, name: str | None = None) -> Clause:
    return Clause(tuple(lits), id, Input(name) if name is not None else None)


def is_tautology(c: Clause) -> bool:
    """True iff ``c`` holds a literal together with its exact negation."""
    seen = set()
    for lit in c.literals:
        if lit.negate() in seen:
            return True
        seen.add(lit)
    return False


def _match_renaming(a: Term, b: Term, fwd: dict, bwd: dict) -> bool:
    if type(a) is Var:
        if type(b) is not Var:
            return False
        x, y = a.name, b.name
        if fwd.get(x, y) != y or bwd.get(y, x) != x:
            return False
        fwd[x] = y
        bwd[y] = x
        return True
    if type(b) is Var or a.functor != b.functor or len(a.args) != len(b.args):
        return False
    return all(_match_renaming(p, q, fwd, bwd) for p, q in zip(a.args, b.args))


def _literal_renaming(l1: Literal, l2: Literal, fwd: dict, bwd: dict) -> bool:
    if l1.positive != l2.positive or l1.predicate != l2.predicate or len(l1.args) != len(l2.args):
        return False
    return all(_match_renaming(p, q, fwd, bwd) for p, q in zip(l1.args, l2.args))


def equal_up_to_renaming(c1: Clause, c2: Clause) -> bool:
    """True iff a bijective variable renaming maps ``c1`` onto ``c2`` as multisets."""
    a, b = c1.literals, c2.literals
    if len(a) != len(b):
        return False
    if sorted((l.positive, l.predicate) for l in a) != sorted((l.positive, l.predicate) for l in b):
        return False
    used = [False] * len(b)

    def search(i: int, fwd: dict, bwd: dict) -> bool:
        if i == len(a):
            return True
        for j, lit in enumerate(b):
            if used[j]:
                continue
            f2, b2 = dict(fwd), dict(bwd)
            if _literal_renaming(a[i], lit, f2, b2):
                used[j] = True
                if search(i + 1, f2, b2):
                    return True
                used[j] = False
        return False

    return search(0, {}, {})


_CANON = ("X", "Y", "Z", "U", "V", "W")


def canonical_var_name(k: int) -> str:
    base = _CANON[k % len(_CANON)]
    return base if k < len(_CANON) else f"{base}{k // len(_CANON)}"


def normalize_vars(c: Clause) -> Clause:
    """Rename variables to X, Y, Z, U, V, W, X1, ... by first occurrence."""
    names = c.vars()
    sigma = {}
    for k, name in enumerate(names):
        new = canonical_var_name(k)
        if new != name:
            sigma[name] = Var(new)
    if not sigma:
        return c
    # simultaneous renaming; targets are fresh w.r.t. the mapping so one pass is enough
    return Clause(tuple(_rename_literal(lit, sigma) for lit in c.literals), c.id, c.provenance)


def _rename_term(t: Term, sigma: dict) -> Term:
    if type(t) is Var:
        return sigma.get(t.name, t)
    if not t.args:
        return t
    return Fn(t.functor, tuple(_rename_term(a, sigma) for a in t.args))


def _rename_literal(lit: Literal, sigma: dict) -> Literal:
    return Literal(lit.positive, lit.predicate, tuple(_rename_term(a, sigma) for a in lit.args))


def rename_clause(c: Clause, mapping: Mapping[str, str]) -> Clause:
    """Simultaneous variable-to-variable renaming."""
    sigma = {old: Var(new) for old, new in mapping.items()}
    return Clause(tuple(_rename_literal(lit, sigma) for lit in c.literals), c.id, c.provenance)


def signature(clauses: Iterable[Clause]) -> tuple[dict[str, int], dict[str, int]]:
    """Return ``(functors, predicates)`` mapping symbol to arity."""
    functors: dict[str, int] = {}
    predicates: dict[str, int] = {}

    def visit(t: Term):
        if type(t) is Fn:
            functors.setdefault(t.functor, len(t.args))
            for a in t.args:
                visit(a)

    for c in clauses:
        for lit in c.literals:
            predicates.setdefault(lit.predicate, len(lit.args))
            for a in lit.args:
                visit(a)
    return functors, predicates
