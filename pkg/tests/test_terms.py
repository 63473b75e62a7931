from hypothesis import given
from hypothesis import strategies as st

from gen import clauses, terms
from resolvere.parser import parse_clause, parse_term
from resolvere.terms import (
    Clause,
    Fn,
    Var,
    apply,
    compose,
    equal_up_to_renaming,
    is_idempotent,
    is_tautology,
    normalize_vars,
    rename_clause,
    signature,
    term_height,
    term_vars,
)


def test_tautology_complementary_pair():
    assert is_tautology(parse_clause("p(X) | ~p(X)"))


def test_tautology_needs_identical_args():
    assert not is_tautology(parse_clause("bew(X) | ~bew(not(X))"))


def test_empty_clause_is_not_tautology():
    assert not is_tautology(Clause(()))


def test_renaming_simple():
    assert equal_up_to_renaming(parse_clause("p(X)"), parse_clause("p(Y)"))


def test_renaming_keeps_sharing():
    assert not equal_up_to_renaming(parse_clause("p(X) | q(X)"), parse_clause("p(X) | q(Y)"))


def test_renaming_ground_unit():
    assert equal_up_to_renaming(parse_clause("b(n, forall_r)"), parse_clause("b(n, forall_r)"))
    assert not equal_up_to_renaming(parse_clause("b(n, forall_r)"), parse_clause("b(n1, forall_r)"))


def test_renaming_is_multiset():
    assert not equal_up_to_renaming(parse_clause("p(X) | p(X)"), parse_clause("p(X)"))
    assert equal_up_to_renaming(parse_clause("q(Y) | p(X)"), parse_clause("p(Z) | q(U)"))


def test_renaming_is_bijective():
    # X and Y may not both map onto Z
    assert not equal_up_to_renaming(parse_clause("r(X, Y)"), parse_clause("r(Z, Z)"))
    assert not equal_up_to_renaming(parse_clause("r(Z, Z)"), parse_clause("r(X, Y)"))


@given(clauses())
def test_renaming_reflexive(c):
    assert equal_up_to_renaming(c, c)


@given(clauses(), clauses())
def test_renaming_symmetric(a, b):
    assert equal_up_to_renaming(a, b) == equal_up_to_renaming(b, a)


@given(clauses())
def test_renaming_transitive_through_normal_form(c):
    n = normalize_vars(c)
    shifted = rename_clause(n, {v: v + "Q" for v in n.vars()})
    assert equal_up_to_renaming(c, n)
    assert equal_up_to_renaming(n, shifted)
    assert equal_up_to_renaming(c, shifted)


@given(clauses(), clauses(), clauses())
def test_renaming_transitive(a, b, c):
    if equal_up_to_renaming(a, b) and equal_up_to_renaming(b, c):
        assert equal_up_to_renaming(a, c)


@given(clauses())
def test_identity_substitution(c):
    assert c.substitute({}) == c
    assert c.substitute({v: Var(v) for v in c.vars()}) == c


@given(clauses(), st.dictionaries(st.sampled_from(["X", "Y", "Z"]), terms))
def test_substitution_keeps_shape(c, sigma):
    d = c.substitute(sigma)
    assert len(d) == len(c)
    assert [l.predicate for l in d] == [l.predicate for l in c]
    assert [l.positive for l in d] == [l.positive for l in c]


def test_normalize_vars_first_occurrence():
    c = normalize_vars(parse_clause("p(B) | r(A, B) | q(C)"))
    assert str(c) == "p(X) | r(Y, X) | q(Z)"


def test_apply_is_simultaneous():
    t = parse_term("g(X, Y)")
    assert str(apply({"X": Var("Y"), "Y": Var("X")}, t)) == "g(Y, X)"


def test_compose():
    s1 = {"X": parse_term("f(Y)")}
    s2 = {"Y": parse_term("a")}
    t = parse_term("g(X, Y)")
    assert apply(compose(s1, s2), t) == apply(s2, apply(s1, t))
    assert is_idempotent(compose(s1, s2))
    assert not is_idempotent({"X": parse_term("f(Y)"), "Y": parse_term("a")})


def test_term_helpers():
    t = parse_term("g(f(X), g(Y, X))")
    assert term_vars(t) == ["X", "Y"]
    assert term_height(t) == 2
    assert term_height(Fn("a")) == 0


def test_signature():
    functors, preds = signature([parse_clause("p(f(a)) | ~r(X, b)")])
    assert functors == {"f": 1, "a": 0, "b": 0}
    assert preds == {"p": 1, "r": 2}


def test_clause_weight_counts_symbols():
    assert parse_clause("~bew(not(r(Y)))").weight() == 4
    assert Clause(()).weight() == 0
