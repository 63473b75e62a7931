"""The provability clause set S, its replay, the omega contradiction and the ablation.

Two variants of S are shipped.  ``faithful`` is the clause list as printed,
with Skolem constants ``n`` and ``n1``.  ``rederived`` is what the clausifier
produces from the source formulas, with Skolem functions where the
existential sits under a universal.

Clauses are named ``c31`` .. ``c37``; the replayed steps continue that
numbering (``c38`` is the assumption ``bew(forall_r)``, ``c43`` the lemma
``~bew(forall_r)``, ``c48`` the omega clause).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .cnf import SkolemNamer, clausify_problem
from .engine import (
    REFUTATION,
    SATURATED,
    GuidedStep,
    ProofTrace,
    SaturationConfig,
    SaturationResult,
    check_trace,
    guided_replay,
    labelled_trace,
    prove_by_refutation,
    saturate,
)
from .formulas import Atom, Not
from .induction import build_omega_clause
from .oracle import Interpretation, check_model
from .parser import Problem, clause_text, parse_clause, parse_problem
from .terms import Clause, Fn, Input, equal_up_to_renaming, signature

FAITHFUL = "faithful"
REDERIVED = "rederived"
VARIANTS = (FAITHFUL, REDERIVED)

S_NAMES = ("c31", "c32", "c33", "c34", "c35", "c36", "c37")
ABLATED = ("c33", "c34")

_FILES = {FAITHFUL: "goedel_S_faithful.p", REDERIVED: "goedel_S_rederived.p"}
# clause names for the clausified source formulas, in file order
_REDERIVED_NAMES = {
    "provability_1": "c31",
    "provability_2": "c32",
    "no_deduction": "c33",
    "deduction": "c34",
    "instance": "c35",
    "consistency": "c36",
    "consistency_all": "c37",
}

ASSUMPTION = "bew(forall_r)"
LEMMA = "~bew(forall_r)"


def data_text(name: str) -> str:
    return resources.files("resolvere.data").joinpath(name).read_text(encoding="utf-8")


def _check_variant(v: str) -> None:
    if v not in VARIANTS:
        raise ValueError(f"unknown variant {v!r}; expected one of {', '.join(VARIANTS)}")


def load_problem(v: str = FAITHFUL) -> Problem:
    _check_variant(v)
    return parse_problem(data_text(_FILES[v]))


def set_S(v: str = FAITHFUL) -> list[Clause]:
    """The seven clauses of S, named c31..c37."""
    prob = load_problem(v)
    if v == FAITHFUL:
        return list(prob.clauses)
    clauses = clausify_problem(prob)
    return [Clause(c.literals, None, Input(_REDERIVED_NAMES[c.provenance.name])) for c in clauses]


def head_symbol_model(v: str = FAITHFUL) -> Interpretation:
    return load_problem(v).interpretation()


def skolem_namer(clauses: list[Clause]) -> SkolemNamer:
    """A namer avoiding every symbol of ``clauses``."""
    functors, preds = signature(clauses)
    return SkolemNamer(set(functors) | set(preds))


def omega_clause(v: str = FAITHFUL) -> Clause:
    """The omega clause for ``r`` with a Skolem constant fresh for S."""
    c = build_omega_clause("r", skolem_namer(set_S(v)))
    return Clause(c.literals, None, Input("c48"))


def omega_problem() -> Problem:
    return parse_problem(data_text("goedel_omega.p"))


def _named(text: str, name: str) -> Clause:
    return Clause(parse_clause(text).literals, None, Input(name))


# -- replay --------------------------------------------------------------------


def _expected(v: str) -> dict[str, str]:
    witness = "n" if v == FAITHFUL else "sk1(forall_r)"
    # the printed clause c34 has a fresh variable in r(.); the rederived one shares X
    instance = "Y" if v == FAITHFUL else witness
    return {
        "c39": f"b({witness}, forall_r)",
        "c40": f"bew(not(r({instance})))",
        "c41": f"~bew(r({instance}))",
        "c42": "bew(r(Y))",
        "c44": "~b(Y, forall_r)",
        "c45": "bew(r(X))",
        "c46": "~bew(not(forall_r))",
        "c49": "bew(forall_r)",
    }


def _steps(v: str, labels: list[tuple[str, tuple[str, ...]]]) -> list[GuidedStep]:
    exp = _expected(v)
    out = []
    for label, parents in labels:
        text = exp.get(label, "$false")
        out.append(GuidedStep(label, parents, parse_clause(text)))
    return out


PART1 = [
    ("c39", ("c38", "c31")),
    ("c40", ("c39", "c34")),
    ("c41", ("c40", "c36")),
    ("c42", ("c38", "c35")),
    ("empty", ("c41", "c42")),
]
PART2 = [
    ("c44", ("c43", "c32")),
    ("c45", ("c44", "c33")),
    ("c46", ("c45", "c37")),
]
OMEGA = [
    ("c44", ("c43", "c32")),
    ("c45", ("c44", "c33")),
    ("c49", ("c45", "c48")),
    ("empty", ("c43", "c49")),
]


@dataclass
class StepMatch:
    label: str
    parents: tuple[str, ...]
    expected: Clause
    derived: Clause
    # id of an equal-up-to-renaming clause kept by the unguided search, if any
    search_id: int | None


@dataclass
class PhaseReport:
    name: str
    inputs: list[Clause]
    search: SaturationResult
    expected_status: str
    search_problem: list[Clause]
    steps: list[StepMatch] = field(default_factory=list)
    traces: dict[str, ProofTrace] = field(default_factory=dict)
    diagnostics: dict[str, str | None] = field(default_factory=dict)

    @property
    def search_ok(self) -> bool:
        if self.search.status != self.expected_status:
            return False
        if self.search.trace is None:
            return True
        return check_trace(self.search.trace, self.search_problem) is None

    @property
    def traces_ok(self) -> bool:
        return all(d is None for d in self.diagnostics.values())

    @property
    def ok(self) -> bool:
        return self.search_ok and self.traces_ok

    def match(self, label: str) -> StepMatch:
        for s in self.steps:
            if s.label == label:
                return s
        raise KeyError(label)


@dataclass
class ReplayReport:
    variant: str
    phases: list[PhaseReport]

    @property
    def ok(self) -> bool:
        return all(p.ok for p in self.phases)

    def phase(self, name: str) -> PhaseReport:
        for p in self.phases:
            if p.name == name:
                return p
        raise KeyError(name)

    def text(self) -> str:
        lines = [f"variant: {self.variant}"]
        for p in self.phases:
            lines.append("")
            lines.append(f"{p.name}: replay from S + {_extra(p.inputs)}")
            r = p.search
            found = f"{r.status} after {r.iterations} iterations, {len(r.derived)} clauses kept"
            if r.trace is not None:
                found += f", proof of {len(r.trace)} steps " + ("verified" if p.search_ok else "REJECTED")
            lines.append(f"  search on S + {_extra(p.search_problem)}: {found} (expected {p.expected_status})")
            for s in p.steps:
                src = " + ".join(s.parents)
                hit = f"search #{s.search_id}" if s.search_id is not None else "not kept by search"
                name = "EMPTY CLAUSE" if s.label == "empty" else s.label
                lines.append(f"  {name:<12} = {src:<9} : {clause_text(s.derived):<28} #{s.derived.id:<3} {hit}")
            for label, diag in p.diagnostics.items():
                lines.append(f"  trace to {label}: " + ("verified" if diag is None else f"REJECTED ({diag})"))
        lines.append("")
        lines.append("replay: " + ("ok" if self.ok else "FAILED"))
        return "\n".join(lines) + "\n"


def _extra(clauses: list[Clause]) -> str:
    return ", ".join(
        f"{c.provenance.name} [{clause_text(c)}]" for c in clauses if c.provenance.name not in S_NAMES
    )


def _search_hit(res: SaturationResult, c: Clause) -> int | None:
    if c.is_empty:
        return res.trace.final if res.is_refutation else None
    for cid in sorted(res.derived):
        if equal_up_to_renaming(res.derived[cid], c):
            return cid
    return None


def _phase(
    name: str,
    inputs: list[Clause],
    labels,
    v: str,
    search: SaturationResult,
    search_problem: list[Clause],
    expected_status: str,
) -> PhaseReport:
    table = guided_replay({c.provenance.name: c for c in inputs}, _steps(v, labels))
    report = PhaseReport(name, inputs, search, expected_status, search_problem)
    for label, parents in labels:
        c = table[label]
        report.steps.append(StepMatch(label, parents, _steps(v, [(label, parents)])[0].expected, c, _search_hit(search, c)))
    final_labels = [lb for lb, _ in labels]
    # a trace for every sink of the replayed derivation
    used = {p for _, ps in labels for p in ps}
    problem = list(inputs)
    for label in final_labels:
        if label in used:
            continue
        tr = labelled_trace(table, label)
        report.traces[label] = tr
        report.diagnostics[label] = check_trace(tr, problem, refutation=tr.final_clause.is_empty)
    return report


def replay(v: str = FAITHFUL, cfg: SaturationConfig | None = None) -> ReplayReport:
    """Replay both parts of the undecidability derivation and the omega contradiction.

    Every phase runs an unguided given-clause search and, independently, a
    guided replay of the printed derivation step by step.  Raises
    :class:`~resolvere.engine.ReplayMismatch` if a printed step cannot be
    reproduced by a single resolution.
    """
    cfg = cfg or SaturationConfig()
    s = set_S(v)
    phases = []

    # part 1: refute S + bew(forall_r)
    c38 = _named(ASSUMPTION, "c38")
    search = prove_by_refutation(s, Not(Atom("bew", (Fn("forall_r"),))), cfg)
    phases.append(_phase("part 1", s + [c38], PART1, v, search, search.inputs, REFUTATION))

    # part 2: the lemma does not refute S, but yields the remaining clauses
    c43 = _named(LEMMA, "c43")
    search = saturate(s + [c43], cfg)
    phases.append(_phase("part 2", s + [c43], PART2, v, search, s + [c43], SATURATED))

    # omega: S + omega clause is refuted; the printed route goes through the lemma
    c48 = omega_clause(v)
    search = saturate(s + [c48], cfg)
    phases.append(_phase("omega", s + [c43, c48], OMEGA, v, search, s + [c48], REFUTATION))
    return ReplayReport(v, phases)


# -- ablation ------------------------------------------------------------------


@dataclass
class AblationResult:
    clauses: list[Clause]
    saturation: SaturationResult
    model_ok: bool
    depth: int

    @property
    def ok(self) -> bool:
        return not self.saturation.is_refutation and self.model_ok


def ablation_clauses(v: str = FAITHFUL) -> list[Clause]:
    """``(S - {c33, c34}) + {c43, omega clause}``."""
    kept = [c for c in set_S(v) if c.provenance.name not in ABLATED]
    return kept + [_named(LEMMA, "c43"), omega_clause(v)]


def ablation(v: str = FAITHFUL, depth: int = 3, cfg: SaturationConfig | None = None) -> AblationResult:
    """Saturate the ablated set and check the all-false model on it."""
    clauses = ablation_clauses(v)
    res = saturate(clauses, cfg or SaturationConfig(max_clauses=100_000))
    _, preds = signature(clauses)
    return AblationResult(clauses, res, check_model(Interpretation.constant(preds, False), clauses, depth), depth)


def ablation_text(result: AblationResult) -> str:
    r = result.saturation
    lines = [
        "clauses: " + ", ".join(f"{c.provenance.name} [{clause_text(c)}]" for c in result.clauses),
        f"saturation: {r.status}{' (' + r.reason + ')' if r.reason else ''} after {r.iterations} iterations, "
        f"{len(r.derived)} clauses kept, empty clause {'derived' if r.is_refutation else 'not derived'}",
        f"all-false model at depth {result.depth}: {'satisfies every instance' if result.model_ok else 'REJECTED'}",
        "ablation: " + ("ok" if result.ok else "FAILED"),
    ]
    return "\n".join(lines) + "\n"
