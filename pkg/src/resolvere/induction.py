"""Finite unfolding of induction schemas and the omega-rule clauses.

An :class:`InductionSchema` ``(P, base, step)`` stands for the premises
``P(base)`` and ``![X]: (P(X) => P(step[X]))``.  Unfolding ``k`` times
instantiates the step along ``base, step[base], step[step[base]], ...`` and
the truth-table oracle confirms that the instantiated premises are
equivalent to the plain conjunction of ``P`` over that generated domain.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cnf import SkolemNamer, clausify
from .formulas import Atom, ForAll, Formula, Iff, Implies, conj
from .oracle import BudgetExceeded, propositional_equiv
from .terms import Clause, Fn, Term, Var, apply, is_ground, term_vars

MAX_EQUIV_DEPTH = 20


@dataclass(frozen=True)
class InductionSchema:
    predicate: str
    base_term: Term
    step_template: Term

    def __post_init__(self):
        if not is_ground(self.base_term):
            raise ValueError(f"base term {self.base_term} is not ground")
        holes = term_vars(self.step_template)
        if len(holes) != 1:
            raise ValueError(f"step template {self.step_template} must contain exactly one variable, found {len(holes)}")

    @property
    def hole(self) -> str:
        return term_vars(self.step_template)[0]

    def step(self, t: Term) -> Term:
        return apply({self.hole: t}, self.step_template)

    def atom(self, t: Term, wrap: str | None = None) -> Atom:
        if wrap is None:
            return Atom(self.predicate, (t,))
        return Atom(wrap, (Fn(self.predicate, (t,)),))


@dataclass(frozen=True)
class Expansion:
    depth: int
    domain: tuple[Term, ...]
    conjunction: Formula


def _domain(schema: InductionSchema, depth: int) -> tuple[Term, ...]:
    if depth < 0:
        raise ValueError("depth must be >= 0")
    out = [schema.base_term]
    for _ in range(depth):
        out.append(schema.step(out[-1]))
    return tuple(out)


def expand(schema: InductionSchema, depth: int, wrap: str | None = None) -> Expansion:
    """Unfold ``schema`` ``depth`` times.

    With ``wrap`` set (say ``"bew"``) every atom ``P(t)`` becomes
    ``wrap(P(t))``, i.e. ``P`` is read as a functor building a code.
    """
    domain = _domain(schema, depth)
    return Expansion(depth, domain, conj([schema.atom(t, wrap) for t in domain]))


def premises(schema: InductionSchema, depth: int, wrap: str | None = None) -> Formula:
    """Base case plus the first ``depth`` instances of the step implication."""
    domain = _domain(schema, depth)
    parts: list[Formula] = [schema.atom(domain[0], wrap)]
    for a, b in zip(domain, domain[1:]):
        parts.append(Implies(schema.atom(a, wrap), schema.atom(b, wrap)))
    return conj(parts)


def check_expansion_equiv(schema: InductionSchema, depth: int, wrap: str | None = None) -> bool:
    """Truth-table check that the unfolded premises equal the expansion."""
    if depth > MAX_EQUIV_DEPTH:
        raise BudgetExceeded(f"depth {depth} exceeds {MAX_EQUIV_DEPTH}")
    return propositional_equiv(premises(schema, depth, wrap), expand(schema, depth, wrap).conjunction)


def schema_formula(schema: InductionSchema) -> Formula:
    """``P(base) & ![X]: (P(X) => P(step)) => ![X]: P(X)`` as a formula."""
    x = schema.hole
    step = ForAll(x, Implies(Atom(schema.predicate, (Var(x),)), Atom(schema.predicate, (schema.step_template,))))
    return Implies(conj([Atom(schema.predicate, (schema.base_term,)), step]), ForAll(x, Atom(schema.predicate, (Var(x),))))


# -- omega rule ----------------------------------------------------------------

# shared by calls that do not bring their own namer, so constants never repeat
_default_namer = SkolemNamer(prefix="sk_omega")


def _code(relation: str) -> Fn:
    return Fn(f"forall_{relation}")


def omega_formula(relation: str, provability: str = "bew") -> Formula:
    """``(![X]: bew(r(X))) => bew(forall_r)``."""
    return Implies(
        ForAll("X", Atom(provability, (Fn(relation, (Var("X"),)),))),
        Atom(provability, (_code(relation),)),
    )


def specialization_formula(relation: str, provability: str = "bew") -> Formula:
    """``bew(forall_r) => ![Y]: bew(r(Y))``."""
    return Implies(
        Atom(provability, (_code(relation),)),
        ForAll("Y", Atom(provability, (Fn(relation, (Var("Y"),)),))),
    )


def reflection_formula(relation: str, provability: str = "bew") -> Formula:
    """Both directions at once: ``(![X]: bew(r(X))) <=> bew(forall_r)``."""
    return Iff(
        ForAll("X", Atom(provability, (Fn(relation, (Var("X"),)),))),
        Atom(provability, (_code(relation),)),
    )


def _single(cs: list[Clause]) -> Clause:
    if len(cs) != 1:
        raise AssertionError(f"expected one clause, got {len(cs)}")
    return cs[0]


def build_omega_clause(relation: str, namer: SkolemNamer | None = None, provability: str = "bew") -> Clause:
    """Clausified omega rule, ``~bew(r(skN)) | bew(forall_r)``.

    The universally quantified antecedent turns into a fresh Skolem
    constant.  Without ``namer`` a module-wide namer is used, so
    successive calls never reuse a constant.
    """
    return _single(clausify(omega_formula(relation, provability), namer or _default_namer))


def build_specialization_clause(relation: str, provability: str = "bew") -> Clause:
    """``~bew(forall_r) | bew(r(Y))``."""
    c = _single(clausify(specialization_formula(relation, provability), SkolemNamer()))
    # keep the customary variable name of the universal instance
    return c.substitute({v: Var("Y") for v in c.vars()})
