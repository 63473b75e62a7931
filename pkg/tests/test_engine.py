import dataclasses
import json

import pytest
from hypothesis import given

from gen import clauses, ground_terms, random_clause, rng
from resolvere.corpus import omega_clause, set_S
from resolvere.engine import (
    REFUTATION,
    RESOURCE_OUT,
    SATURATED,
    GuidedStep,
    InferenceError,
    ProofTrace,
    ReplayMismatch,
    SaturationConfig,
    _factor,
    _resolve,
    check_trace,
    factor,
    guided_replay,
    labelled_trace,
    prove_by_refutation,
    resolve,
    saturate,
    subsumes,
    trace_from_json,
    trace_to_json,
    verify_trace,
)
from resolvere.oracle import entails
from resolvere.parser import parse_clause, parse_formula
from resolvere.terms import Clause, Fn, Input, Resolvent, equal_up_to_renaming
from resolvere.unify import rename_apart


def C(text, cid=None, name=None):
    c = parse_clause(text)
    return Clause(c.literals, cid, Input(name) if name else None)


def S_plus_assumption():
    return set_S() + [C("bew(forall_r)", name="c38")]


# -- single inferences -------------------------------------------------------------


def test_resolve_assumption_with_provability():
    c = resolve(C("bew(forall_r)", 38), 0, C("~bew(X) | b(n, X)", 31), 0)
    assert str(c) == "b(n, forall_r)"
    assert c.provenance == Resolvent((38, 31), (0, 0), (("X", Fn("forall_r")),))


def test_resolve_against_consistency_clause():
    c = resolve(C("bew(not(r(Y)))", 40), 0, C("~bew(X) | ~bew(not(X))", 36), 1)
    assert equal_up_to_renaming(c, parse_clause("~bew(r(Y))"))
    assert dict(c.provenance.substitution)["X"] == parse_clause("r(Y)").literals[0].atom


def test_resolve_trivial():
    assert str(resolve(C("p(X)"), 0, C("~p(c) | q"), 0)) == "q"


def test_resolve_failures():
    with pytest.raises(InferenceError):
        resolve(C("p(X)"), 0, C("p(c)"), 0)  # same sign
    with pytest.raises(InferenceError):
        resolve(C("p(f(X))"), 0, C("~p(g(c, c))"), 0)  # clash
    with pytest.raises(InferenceError):
        resolve(C("p(X)"), 3, C("~p(c)"), 0)  # position


def test_resolve_renames_second_parent():
    c = resolve(C("p(X) | q(X)"), 0, C("~p(f(X)) | r(X)"), 0)
    assert equal_up_to_renaming(c, parse_clause("q(f(Y)) | r(Y)"))


def test_factor_examples():
    assert str(factor(C("p(X) | p(c)"), 0, 1)) == "p(c)"
    assert str(factor(C("p(X) | q(X) | p(c)"), 0, 2)) == "p(c) | q(c)"
    with pytest.raises(InferenceError):
        factor(C("p(f(X)) | p(g(X))"), 0, 1)


def test_subsumes_examples():
    assert subsumes(C("p(X)"), C("p(c) | q(c)"))
    assert not subsumes(C("p(c) | q(c)"), C("p(X)"))
    assert not subsumes(C("p(X) | p(Y)"), C("p(c)"))
    assert subsumes(C("p(X) | p(Y)"), C("p(c) | p(d)"))
    assert not subsumes(C("r(X, X)"), C("r(a, b)"))


# -- saturation ----------------------------------------------------------------------


def test_part_one_refutation():
    res = saturate(S_plus_assumption())
    assert res.status == REFUTATION
    assert res.iterations <= 50
    assert verify_trace(res.trace, S_plus_assumption())
    assert any(equal_up_to_renaming(c, parse_clause("b(n, forall_r)")) for c in res.trace.steps)


def test_omega_refutation():
    problem = set_S() + [omega_clause()]
    res = saturate(problem)
    assert res.status == REFUTATION
    assert any(equal_up_to_renaming(c, parse_clause("bew(forall_r)")) for c in res.trace.steps)
    assert verify_trace(res.trace, problem)


def test_saturated_without_opposing_literals():
    res = saturate([C("p(c)"), C("~q(c)")])
    assert res.status == SATURATED and res.trace is None
    assert len(res.clauses) == 2


def test_empty_input_saturates():
    assert saturate([]).status == SATURATED


def test_empty_input_clause_is_refutation():
    res = saturate([C("p"), Clause(())])
    assert res.status == REFUTATION and len(res.trace) == 1


def test_resource_out():
    # p(X) => p(f(X)) never saturates
    res = saturate([C("p(a)"), C("~p(X) | p(f(X))")], SaturationConfig(max_iterations=25))
    assert res.status == RESOURCE_OUT and res.reason == "max_iterations"
    res = saturate([C("p(a)"), C("~p(X) | p(f(X))")], SaturationConfig(max_clauses=10))
    assert res.status == RESOURCE_OUT and res.reason == "max_clauses"


def test_config_bounds_positive():
    with pytest.raises(ValueError):
        SaturationConfig(max_clauses=0)
    with pytest.raises(ValueError):
        SaturationConfig(timeout_ms=-1)


def test_prove_by_refutation_examples():
    assert prove_by_refutation(set_S(), parse_formula("~bew(forall_r)")).status == REFUTATION
    assert prove_by_refutation([C("p(c)")], parse_formula("p(c)")).status == REFUTATION
    assert prove_by_refutation([C("p(c)")], parse_formula("q(c)")).status == SATURATED


def test_needs_factoring():
    # {p(X) | p(Y)}, {~p(X) | ~p(Y)} is unsatisfiable only with factoring
    res = saturate([C("p(X) | p(Y)"), C("~p(X) | ~p(Y)")])
    assert res.status == REFUTATION
    assert verify_trace(res.trace, [C("p(X) | p(Y)"), C("~p(X) | ~p(Y)")])


def test_determinism():
    a = trace_to_json(saturate(S_plus_assumption()).trace, "s")
    b = trace_to_json(saturate(S_plus_assumption()).trace, "s")
    assert a == b


@pytest.mark.parametrize(
    "problem",
    [
        S_plus_assumption(),
        set_S() + [omega_clause()],
        set_S() + [C("~bew(forall_r)"), omega_clause()],
        set_S() + [C("~bew(forall_r)")],
    ],
)
def test_subsumption_never_flips_refutation(problem):
    on = saturate(problem)
    off = saturate(problem, SaturationConfig(forward_subsumption=False, timeout_ms=20_000))
    if on.status == REFUTATION:
        assert off.status != SATURATED
    if off.status == REFUTATION:
        assert on.status != SATURATED
        assert verify_trace(off.trace, problem)


# -- soundness -----------------------------------------------------------------------


def test_ground_steps_are_sound_random():
    r = rng(17)
    checked = 0
    while checked < 300:
        a, b = random_clause(r, r.randint(1, 3), True), random_clause(r, r.randint(1, 3), True)
        for i in range(len(a)):
            for j in range(len(b)):
                res = _resolve(a, i, b, j)
                if res is not None:
                    assert entails([a, b], Clause(res[0]))
                    checked += 1
        for i in range(len(a)):
            for j in range(len(a)):
                res = _factor(a, i, j)
                if res is not None:
                    assert entails([a], Clause(res[0]))


@given(clauses(ground_terms, 3), clauses(ground_terms, 3))
def test_ground_resolution_sound(a, b):
    for i in range(len(a)):
        for j in range(len(b)):
            res = _resolve(a, i, b, j)
            if res is not None:
                assert entails([a, b], Clause(res[0]))


@given(clauses(), clauses())
def test_verify_accepts_every_resolvent(a, b):
    a = Clause(a.literals, 1, Input("a"))
    b = Clause(b.literals, 2, Input("b"))
    for i in range(len(a)):
        for j in range(len(b)):
            try:
                c = resolve(a, i, b, j)
            except InferenceError:
                continue
            c = dataclasses.replace(c, id=3)
            assert check_trace(ProofTrace((a, b, c), 3), [a, b], refutation=False) is None


def _ground(c: Clause) -> Clause:
    k = Fn("k_lift")
    return c.substitute({v: k for v in c.vars()})


def test_lifting_of_replay_steps():
    problem = S_plus_assumption()
    res = saturate(problem)
    for trace in (res.trace, saturate(set_S() + [omega_clause()]).trace):
        by_id = {c.id: c for c in trace.steps}
        for c in trace.steps:
            prov = c.provenance
            if not isinstance(prov, Resolvent):
                continue
            a, b = rename_apart(by_id[prov.parents[0]], by_id[prov.parents[1]])
            sigma = dict(prov.substitution)
            ga, gb = _ground(a.substitute(sigma)), _ground(b.substitute(sigma))
            assert entails([ga, gb], _ground(c))


# -- trace checking -----------------------------------------------------------------


def _trace():
    problem = S_plus_assumption()
    return saturate(problem).trace, problem


def test_trace_topological():
    trace, _ = _trace()
    seen = set()
    for c in trace.steps:
        prov = c.provenance
        parents = prov.parents if isinstance(prov, Resolvent) else ()
        assert all(p in seen for p in parents)
        seen.add(c.id)


def test_tampered_parent_rejected():
    trace, problem = _trace()
    steps = list(trace.steps)
    k = next(i for i, c in enumerate(steps) if isinstance(c.provenance, Resolvent))
    p = steps[k].provenance
    other = next(c.id for c in steps if c.id not in p.parents and c.id < steps[k].id)
    steps[k] = dataclasses.replace(steps[k], provenance=dataclasses.replace(p, parents=(other, p.parents[1])))
    assert not verify_trace(ProofTrace(tuple(steps), trace.final), problem)


def test_non_empty_final_rejected_as_refutation():
    trace, problem = _trace()
    k = trace.steps[-2].id
    cut = ProofTrace(tuple(c for c in trace.steps if c.id <= k), k)
    assert check_trace(cut, problem, refutation=True) is not None
    assert check_trace(cut, problem, refutation=False) is None


def test_foreign_input_rejected():
    trace, problem = _trace()
    assert "not a problem clause" in check_trace(trace, problem[:-1])


def test_json_round_trip():
    trace, problem = _trace()
    text = trace_to_json(trace, "part1")
    doc = json.loads(text)
    assert doc["result"] == "refutation" and doc["final"] == trace.final
    assert doc["steps"][-1]["clause"] == "$false"
    back = trace_from_json(text)
    assert verify_trace(back, problem)
    assert trace_to_json(back, "part1").replace("step", "") == text.replace("step", "")


# -- guided replay -------------------------------------------------------------------


def test_guided_replay_records_checkable_steps():
    inputs = {"a": C("p(X) | q(X)"), "b": C("~p(c)"), "d": C("~q(c)")}
    steps = [
        GuidedStep("e", ("a", "b"), parse_clause("q(c)")),
        GuidedStep("f", ("e", "d"), Clause(())),
    ]
    table = guided_replay(inputs, steps)
    tr = labelled_trace(table, "f")
    assert [c.id for c in tr.steps] == [1, 2, 3, 4, 5]
    assert verify_trace(tr, list(inputs.values()))


def test_guided_replay_mismatch():
    inputs = {"a": C("p(X) | q(X)"), "b": C("~p(c)")}
    with pytest.raises(ReplayMismatch):
        guided_replay(inputs, [GuidedStep("e", ("a", "b"), parse_clause("q(d)"))])
    with pytest.raises(ReplayMismatch):
        guided_replay(inputs, [GuidedStep("e", ("a", "zz"), parse_clause("q(c)"))])


def test_guided_factor_step():
    table = guided_replay({"a": C("p(X) | p(c)")}, [GuidedStep("f", ("a",), parse_clause("p(c)"))])
    assert verify_trace(labelled_trace(table, "f"), [C("p(X) | p(c)")], refutation=False)
