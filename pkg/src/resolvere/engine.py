"""Binary resolution and factoring under a deterministic given-clause loop."""

from __future__ import annotations

import heapq
import json
import time
from collections import Counter
from dataclasses import dataclass, field

from .cnf import SkolemNamer, clausify, close, symbols
from .formulas import Atom, Formula, Not
from .terms import (
    Clause,
    Factor,
    Input,
    Resolvent,
    equal_up_to_renaming,
    freeze_subst,
    is_tautology,
    normalize_vars,
)
from .unify import match_into, rename_apart, unify_into

REFUTATION = "refutation"
SATURATED = "saturated"
RESOURCE_OUT = "resource_out"


class InferenceError(Exception):
    pass


@dataclass(frozen=True)
class SaturationConfig:
    max_clauses: int = 100_000
    max_iterations: int = 100_000
    timeout_ms: int = 10_000
    forward_subsumption: bool = True
    tautology_deletion: bool = True

    def __post_init__(self):
        for name in ("max_clauses", "max_iterations", "timeout_ms"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class ProofTrace:
    """Derivation steps in topological (id) order ending in ``final``."""

    steps: tuple[Clause, ...]
    final: int

    def step(self, cid: int) -> Clause:
        for c in self.steps:
            if c.id == cid:
                return c
        raise KeyError(cid)

    @property
    def final_clause(self) -> Clause:
        return self.step(self.final)

    def __len__(self):
        return len(self.steps)


@dataclass
class SaturationResult:
    status: str
    trace: ProofTrace | None = None
    reason: str = ""
    inputs: list[Clause] = field(default_factory=list)
    # every kept clause by id, inputs included
    derived: dict[int, Clause] = field(default_factory=dict)
    # processed + still-unprocessed clauses when the loop stopped
    clauses: list[Clause] = field(default_factory=list)
    iterations: int = 0
    elapsed: float = 0.0

    @property
    def is_refutation(self) -> bool:
        return self.status == REFUTATION

    def trace_for(self, cid: int) -> ProofTrace:
        return extract_trace(self.derived, cid)


# -- inference rules ---------------------------------------------------------


def _resolve(c1: Clause, i: int, c2: Clause, j: int):
    """Resolvent literals and unifier, or None."""
    a, b = rename_apart(c1, c2)
    if not (0 <= i < len(a) and 0 <= j < len(b)):
        return None
    l1, l2 = a.literals[i], b.literals[j]
    if l1.positive == l2.positive or l1.predicate != l2.predicate or len(l1.args) != len(l2.args):
        return None
    sigma = unify_into(list(zip(l1.args, l2.args)))
    if type(sigma) is not dict:
        return None
    lits = [lit.substitute(sigma) for k, lit in enumerate(a.literals) if k != i]
    lits += [lit.substitute(sigma) for k, lit in enumerate(b.literals) if k != j]
    return tuple(lits), sigma


def resolve(c1: Clause, i: int, c2: Clause, j: int) -> Clause:
    """Binary resolvent of literal ``i`` of ``c1`` with literal ``j`` of ``c2``.

    The parents are renamed apart first (``c2`` gets the fresh names).
    Variables of the result are renamed canonically; the recorded
    substitution refers to the renamed-apart parents.
    """
    res = _resolve(c1, i, c2, j)
    if res is None:
        raise InferenceError(f"cannot resolve literal {i} of [{c1}] with literal {j} of [{c2}]")
    lits, sigma = res
    prov = Resolvent((c1.id, c2.id), (i, j), freeze_subst(sigma))
    return normalize_vars(Clause(lits, None, prov))


def _factor(c: Clause, i: int, j: int):
    if i == j or not (0 <= i < len(c) and 0 <= j < len(c)):
        return None
    l1, l2 = c.literals[i], c.literals[j]
    if l1.positive != l2.positive or l1.predicate != l2.predicate or len(l1.args) != len(l2.args):
        return None
    sigma = unify_into(list(zip(l1.args, l2.args)))
    if type(sigma) is not dict:
        return None
    lits = tuple(lit.substitute(sigma) for k, lit in enumerate(c.literals) if k != j)
    return lits, sigma


def factor(c: Clause, i: int, j: int) -> Clause:
    """Merge literals ``i`` and ``j`` under their MGU; literal ``j`` is dropped."""
    res = _factor(c, i, j)
    if res is None:
        raise InferenceError(f"cannot factor literals {i} and {j} of [{c}]")
    lits, sigma = res
    return normalize_vars(Clause(lits, None, Factor(c.id, (i, j), freeze_subst(sigma))))


def _lit_key_counts(c: Clause) -> Counter:
    return Counter((lit.positive, lit.predicate) for lit in c.literals)


def subsumes(c1: Clause, c2: Clause) -> bool:
    """True iff c1·σ is a sub-multiset of ``c2`` for some σ."""
    a, b = c1.literals, c2.literals
    if len(a) > len(b):
        return False
    if _lit_key_counts(c1) - _lit_key_counts(c2):
        return False
    return _subsume_search(a, b, 0, [False] * len(b), {})


def _subsume_search(a, b, k, used, sigma) -> bool:
    if k == len(a):
        return True
    lit = a[k]
    for j, other in enumerate(b):
        if used[j] or other.positive != lit.positive or other.predicate != lit.predicate:
            continue
        trial = dict(sigma)
        if all(match_into(p, q, trial) for p, q in zip(lit.args, other.args)):
            used[j] = True
            if _subsume_search(a, b, k + 1, used, trial):
                return True
            used[j] = False
    return False


# -- saturation --------------------------------------------------------------


class _Kept:
    """A kept clause with the prefilter data used by subsumption."""

    __slots__ = ("clause", "keys", "size")

    def __init__(self, clause: Clause):
        self.clause = clause
        self.keys = _lit_key_counts(clause)
        self.size = len(clause)


def _subsumed_by_any(c: Clause, keys: Counter, pool) -> bool:
    n = len(c)
    for k in pool:
        if k.size <= n and not (k.keys - keys) and _subsume_search(k.clause.literals, c.literals, 0, [False] * n, {}):
            return True
    return False


def _generate(given: Clause, processed: list[Clause]):
    lits = given.literals
    for i in range(len(lits)):
        for j in range(i + 1, len(lits)):
            res = _factor(given, i, j)
            if res is not None:
                yield res[0], Factor(given.id, (i, j), freeze_subst(res[1]))
    for partner in processed:
        plits = partner.literals
        for i, li in enumerate(lits):
            for j, lj in enumerate(plits):
                if li.positive == lj.positive or li.predicate != lj.predicate:
                    continue
                res = _resolve(given, i, partner, j)
                if res is not None:
                    yield res[0], Resolvent((given.id, partner.id), (i, j), freeze_subst(res[1]))


def saturate(clauses: list[Clause], cfg: SaturationConfig | None = None) -> SaturationResult:
    """Given-clause saturation with binary resolution and factoring.

    The lightest unprocessed clause (symbol count, then lowest id) is
    selected, factored, and resolved against every processed clause
    including itself.  Stops at the empty clause, when nothing is left to
    select, or when a bound in ``cfg`` is hit.
    """
    cfg = cfg or SaturationConfig()
    start = time.perf_counter()
    deadline = start + cfg.timeout_ms / 1000.0
    derived: dict[int, Clause] = {}
    inputs: list[Clause] = []
    heap: list[tuple[int, int]] = []
    pending: dict[int, _Kept] = {}
    processed: list[Clause] = []
    processed_kept: list[_Kept] = []
    iterations = 0

    def finish(status, final=None, reason=""):
        trace = extract_trace(derived, final) if final is not None else None
        rest = processed + [pending[i].clause for i in sorted(pending)]
        return SaturationResult(
            status, trace, reason, inputs, derived, rest, iterations, time.perf_counter() - start
        )

    # literal tuples of kept clauses (after renaming); exact duplicates are
    # always dropped so that selection stays fair without subsumption
    seen: set = set()

    def keep(c: Clause) -> None:
        derived[c.id] = c
        seen.add(normalize_vars(c).literals)
        kept = _Kept(c)
        pending[c.id] = kept
        heapq.heappush(heap, (c.weight(), c.id))

    for k, c in enumerate(clauses):
        prov = c.provenance if isinstance(c.provenance, Input) else Input(f"input{k + 1}")
        c = Clause(c.literals, len(derived) + 1, prov)
        inputs.append(c)
        derived[c.id] = c
        if c.is_empty:
            return finish(REFUTATION, c.id)
    for c in inputs:
        if cfg.tautology_deletion and is_tautology(c):
            continue
        if cfg.forward_subsumption:
            keys = _lit_key_counts(c)
            if _subsumed_by_any(c, keys, pending.values()):
                continue
        keep(c)

    next_id = len(derived) + 1
    while heap:
        if iterations >= cfg.max_iterations:
            return finish(RESOURCE_OUT, reason="max_iterations")
        if time.perf_counter() > deadline:
            return finish(RESOURCE_OUT, reason="timeout")
        _, gid = heapq.heappop(heap)
        gk = pending.pop(gid)
        given = gk.clause
        if cfg.forward_subsumption and _subsumed_by_any(given, gk.keys, processed_kept):
            continue
        iterations += 1
        processed.append(given)
        processed_kept.append(gk)
        for lits, prov in _generate(given, processed):
            if not lits:
                c = Clause((), next_id, prov)
                derived[c.id] = c
                return finish(REFUTATION, c.id)
            c = normalize_vars(Clause(lits, None, prov))
            if c.literals in seen:
                continue
            if cfg.tautology_deletion and is_tautology(c):
                continue
            if cfg.forward_subsumption:
                keys = _lit_key_counts(c)
                if _subsumed_by_any(c, keys, processed_kept) or _subsumed_by_any(c, keys, pending.values()):
                    continue
            c = Clause(c.literals, next_id, prov)
            next_id += 1
            keep(c)
            if len(derived) > cfg.max_clauses:
                return finish(RESOURCE_OUT, reason="max_clauses")
    return finish(SATURATED)


def extract_trace(derived: dict[int, Clause], final: int) -> ProofTrace:
    """Ancestors of ``final``, sorted by id (which is topological)."""
    needed = set()
    todo = [final]
    while todo:
        cid = todo.pop()
        if cid in needed:
            continue
        needed.add(cid)
        prov = derived[cid].provenance
        if isinstance(prov, Resolvent):
            todo.extend(prov.parents)
        elif isinstance(prov, Factor):
            todo.append(prov.parent)
    return ProofTrace(tuple(derived[i] for i in sorted(needed)), final)


def prove_by_refutation(
    axioms: list[Clause], conjecture: Formula, cfg: SaturationConfig | None = None
) -> SaturationResult:
    """Saturate ``axioms`` plus the clausified negation of ``conjecture``."""
    avoid = symbols(conjecture)
    for c in axioms:
        for lit in c.literals:
            symbols(Atom(lit.predicate, lit.args), avoid)
    negated = clausify(Not(close(conjecture)), SkolemNamer(avoid))
    named = [Clause(c.literals, None, Input("negated_conjecture")) for c in negated]
    return saturate(list(axioms) + named, cfg)


# -- guided replay -----------------------------------------------------------


class ReplayMismatch(InferenceError):
    pass


@dataclass(frozen=True)
class GuidedStep:
    """Derive ``expected`` from the named parents (one parent = factoring)."""

    label: str
    parents: tuple[str, ...]
    expected: Clause


def _guided_candidates(a: Clause, b: Clause | None):
    if b is None:
        for i in range(len(a)):
            for j in range(len(a)):
                res = _factor(a, i, j)
                if res is not None:
                    yield res[0], Factor(a.id, (i, j), freeze_subst(res[1]))
        return
    for x, y in ((a, b), (b, a)):
        for i in range(len(x)):
            for j in range(len(y)):
                res = _resolve(x, i, y, j)
                if res is not None:
                    yield res[0], Resolvent((x.id, y.id), (i, j), freeze_subst(res[1]))


def guided_replay(inputs: dict[str, Clause], steps: list[GuidedStep]) -> dict[str, Clause]:
    """Replay a hand-written derivation with the engine's inference rules.

    ``inputs`` (in order) get ids 1..n.  For every step the first
    resolvent (or factor) of the named parents that equals the expected
    clause up to renaming is kept under the step's label.  Returns all
    labelled clauses; :func:`extract_trace` on them gives checkable traces.
    """
    table: dict[str, Clause] = {}
    for k, (label, c) in enumerate(inputs.items()):
        table[label] = Clause(c.literals, k + 1, c.provenance if isinstance(c.provenance, Input) else Input(label))
    next_id = len(table) + 1
    for st in steps:
        if st.label in table:
            raise ValueError(f"duplicate step label {st.label}")
        try:
            parents = [table[p] for p in st.parents]
        except KeyError as exc:
            raise ReplayMismatch(f"step {st.label}: unknown parent {exc.args[0]}") from None
        if len(parents) not in (1, 2):
            raise ValueError(f"step {st.label}: one or two parents expected")
        found = None
        for lits, prov in _guided_candidates(parents[0], parents[1] if len(parents) == 2 else None):
            c = normalize_vars(Clause(lits, next_id, prov))
            if equal_up_to_renaming(c, st.expected):
                found = c
                break
        if found is None:
            names = " and ".join(st.parents)
            raise ReplayMismatch(f"step {st.label}: [{st.expected}] is not derivable from {names} in one step")
        table[st.label] = found
        next_id += 1
    return table


def labelled_trace(table: dict[str, Clause], label: str) -> ProofTrace:
    return extract_trace({c.id: c for c in table.values()}, table[label].id)


# -- independent re-checking -------------------------------------------------


def check_trace(trace: ProofTrace, problem: list[Clause], refutation: bool = True) -> str | None:
    """Return None if every step re-derives, else a diagnostic naming the step."""
    seen: dict[int, Clause] = {}
    for c in trace.steps:
        if c.id is None or c.id in seen:
            return f"step {c.id}: missing or duplicate id"
        prov = c.provenance
        if isinstance(prov, Input):
            if not any(equal_up_to_renaming(c, p) for p in problem):
                return f"step {c.id}: input clause [{c}] is not a problem clause"
        elif isinstance(prov, Resolvent):
            p1, p2 = prov.parents
            if p1 not in seen or p2 not in seen:
                return f"step {c.id}: parents {p1}, {p2} do not precede it"
            res = _resolve(seen[p1], prov.positions[0], seen[p2], prov.positions[1])
            if res is None:
                return f"step {c.id}: parents do not resolve at positions {prov.positions}"
            if freeze_subst(res[1]) != prov.substitution:
                return f"step {c.id}: recorded substitution is not the MGU"
            if normalize_vars(Clause(res[0])).literals != c.literals:
                return f"step {c.id}: clause differs from the resolvent"
        elif isinstance(prov, Factor):
            if prov.parent not in seen:
                return f"step {c.id}: parent {prov.parent} does not precede it"
            res = _factor(seen[prov.parent], *prov.positions)
            if res is None:
                return f"step {c.id}: literals {prov.positions} do not factor"
            if freeze_subst(res[1]) != prov.substitution:
                return f"step {c.id}: recorded substitution is not the MGU"
            if normalize_vars(Clause(res[0])).literals != c.literals:
                return f"step {c.id}: clause differs from the factor"
        else:
            return f"step {c.id}: unknown provenance"
        seen[c.id] = c
    if trace.final not in seen:
        return f"final step {trace.final} is not in the trace"
    if refutation and not seen[trace.final].is_empty:
        return f"final step {trace.final} is not the empty clause"
    return None


def verify_trace(trace: ProofTrace, problem: list[Clause], refutation: bool = True) -> bool:
    return check_trace(trace, problem, refutation) is None


# -- JSON --------------------------------------------------------------------


def trace_to_dict(trace: ProofTrace | None, problem: str, result: str) -> dict:
    from .parser import clause_text

    steps = []
    for c in trace.steps if trace else ():
        prov = c.provenance
        if isinstance(prov, Resolvent):
            rule, parents, positions, subst = "resolve", list(prov.parents), list(prov.positions), prov.substitution
        elif isinstance(prov, Factor):
            rule, parents, positions, subst = "factor", [prov.parent], list(prov.positions), prov.substitution
        else:
            rule, parents, positions, subst = "input", [], [], ()
        steps.append(
            {
                "id": c.id,
                "rule": rule,
                "parents": parents,
                "positions": positions,
                "substitution": {name: str(t) for name, t in subst},
                "clause": clause_text(c),
            }
        )
    return {"problem": problem, "result": result, "steps": steps, "final": trace.final if trace else None}


def trace_to_json(trace: ProofTrace | None, problem: str, result: str = REFUTATION) -> str:
    return json.dumps(trace_to_dict(trace, problem, result), indent=2) + "\n"


def trace_from_dict(doc: dict) -> ProofTrace:
    from .parser import parse_clause, parse_term

    steps = []
    for s in doc["steps"]:
        lits = parse_clause(s["clause"]).literals
        subst = tuple(sorted((name, parse_term(text)) for name, text in s.get("substitution", {}).items()))
        rule = s["rule"]
        if rule == "input":
            prov = Input(f"step{s['id']}")
        elif rule == "resolve":
            prov = Resolvent(tuple(s["parents"]), tuple(s["positions"]), subst)
        elif rule == "factor":
            prov = Factor(s["parents"][0], tuple(s["positions"]), subst)
        else:
            raise ValueError(f"unknown rule {rule!r}")
        steps.append(Clause(lits, int(s["id"]), prov))
    return ProofTrace(tuple(steps), doc["final"])


def trace_from_json(text: str) -> ProofTrace:
    return trace_from_dict(json.loads(text))
