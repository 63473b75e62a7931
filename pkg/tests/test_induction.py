import random

import pytest

from resolvere.cnf import clausify
from resolvere.formulas import Atom, conj
from resolvere.induction import (
    InductionSchema,
    build_omega_clause,
    build_specialization_clause,
    check_expansion_equiv,
    expand,
    premises,
    schema_formula,
    specialization_formula,
)
from resolvere.oracle import BudgetExceeded, Interpretation, check_model
from resolvere.parser import parse_clause, parse_term
from resolvere.terms import equal_up_to_renaming, signature

STD = InductionSchema("p", parse_term("0"), parse_term("s(X)"))
EVEN = InductionSchema("even", parse_term("0"), parse_term("s(s(X))"))


def test_standard_expansion():
    e = expand(STD, 2)
    assert [str(t) for t in e.domain] == ["0", "s(0)", "s(s(0))"]
    assert e.conjunction == conj([Atom("p", (parse_term(t),)) for t in ("0", "s(0)", "s(s(0))")])


def test_even_numbers():
    assert [str(t) for t in expand(EVEN, 2).domain] == ["0", "s(s(0))", "s(s(s(s(0))))"]


def test_depth_zero():
    e = expand(STD, 0)
    assert e.domain == (parse_term("0"),)
    assert e.conjunction == Atom("p", (parse_term("0"),))
    assert check_expansion_equiv(STD, 0)


@pytest.mark.parametrize("depth", [2, 8])
def test_equivalence(depth):
    assert check_expansion_equiv(STD, depth)
    assert check_expansion_equiv(EVEN, depth)


def test_wrapped_in_provability():
    e = expand(STD, 1, wrap="bew")
    assert str(e.conjunction.left.args[0]) == "p(0)" and e.conjunction.left.predicate == "bew"
    assert check_expansion_equiv(STD, 5, wrap="bew")


def test_domain_growth():
    for k in range(21):
        d = expand(STD, k).domain
        assert len(d) == k + 1
        for i, t in enumerate(d):
            assert str(t) == "s(" * i + "0" + ")" * i


def test_randomized_names():
    r = random.Random(4)
    for _ in range(25):
        pred = "q" + str(r.randrange(100))
        f = "f" + str(r.randrange(100))
        base = parse_term("z" + str(r.randrange(100)))
        hole = r.choice(["X", "Y", "Hole"])
        nest = r.randint(1, 3)
        step = parse_term(f"{f}(" * nest + hole + ")" * nest)
        schema = InductionSchema(pred, base, step)
        for depth in range(13):
            assert check_expansion_equiv(schema, depth)


def test_budget():
    with pytest.raises(BudgetExceeded):
        check_expansion_equiv(STD, 21)


def test_schema_validation():
    with pytest.raises(ValueError):
        InductionSchema("p", parse_term("X"), parse_term("s(X)"))
    with pytest.raises(ValueError):
        InductionSchema("p", parse_term("0"), parse_term("s(0)"))
    with pytest.raises(ValueError):
        InductionSchema("p", parse_term("0"), parse_term("g(X, Y)"))
    with pytest.raises(ValueError):
        expand(STD, -1)


def test_premises_shape():
    assert str(premises(STD, 1).right.left.args[0]) == "0"


def test_schema_formula_clausifies():
    cs = clausify(schema_formula(STD))
    assert len(cs) == 2  # base-or-witness and step-or-witness


def test_omega_clause_shape():
    c = build_omega_clause("r")
    assert len(c) == 2
    neg, pos = c.literals
    assert not neg.positive and neg.predicate == "bew" and neg.args[0].functor == "r"
    assert not neg.args[0].args[0].args  # a Skolem constant
    assert pos.positive and str(pos) == "bew(forall_r)"


def test_omega_clause_other_relation():
    assert str(build_omega_clause("p").literals[1]) == "bew(forall_p)"


def test_omega_constants_are_fresh():
    a, b = build_omega_clause("r"), build_omega_clause("r")
    assert a.literals[0] != b.literals[0]


def test_specialization_clause():
    c = build_specialization_clause("r")
    assert str(c) == "~bew(forall_r) | bew(r(Y))"
    assert str(build_specialization_clause("p")) == "~bew(forall_p) | bew(p(Y))"
    [d] = clausify(specialization_formula("r"))
    assert equal_up_to_renaming(c, d)
    assert equal_up_to_renaming(c, parse_clause("~bew(forall_r) | bew(r(Y))"))


def test_both_directions_are_satisfiable():
    cs = [build_omega_clause("r"), build_specialization_clause("r")]
    _, preds = signature(cs)
    assert check_model(Interpretation.constant(preds, False), cs, 3)
