"""Most general unifiers (occurs check always on), matching and renaming apart."""

from __future__ import annotations

from .terms import Clause, Term, Var, apply, occurs, rename_clause

CLASH = "clash"
OCCURS = "occurs"


class UnificationError(Exception):
    def __init__(self, reason: str, left, right):
        super().__init__(f"{reason}: cannot unify {left} with {right}")
        self.reason = reason


def _bind(sigma: dict, name: str, t: Term) -> None:
    single = {name: t}
    for k, v in sigma.items():
        sigma[k] = apply(single, v)
    sigma[name] = t


def unify_into(pairs, sigma: dict | None = None):
    """Unify all ``(s, t)`` pairs.

    Returns the idempotent unifier as a new dict, or one of the failure
    reasons ``CLASH`` / ``OCCURS``.  ``sigma`` (idempotent) is extended, not
    mutated.
    """
    sigma = dict(sigma) if sigma else {}
    stack = list(pairs)
    while stack:
        s, t = stack.pop()
        s = apply(sigma, s)
        t = apply(sigma, t)
        if s == t:
            continue
        if type(s) is Var:
            if type(t) is Var:
                # smaller name becomes the key
                if t.name < s.name:
                    s, t = t, s
                _bind(sigma, s.name, t)
                continue
            if occurs(s.name, t):
                return OCCURS
            _bind(sigma, s.name, t)
        elif type(t) is Var:
            if occurs(t.name, s):
                return OCCURS
            _bind(sigma, t.name, s)
        else:
            if s.functor != t.functor or len(s.args) != len(t.args):
                return CLASH
            stack.extend(reversed(list(zip(s.args, t.args))))
    return sigma


def unify(s: Term, t: Term) -> dict | None:
    res = unify_into([(s, t)])
    return res if type(res) is dict else None


def mgu(s: Term, t: Term) -> dict[str, Term]:
    """Most general unifier of two terms; raises :class:`UnificationError`."""
    res = unify_into([(s, t)])
    if type(res) is not dict:
        raise UnificationError(res, s, t)
    return res


def match_into(pattern: Term, target: Term, sigma: dict) -> bool:
    """One-way matching: extend ``sigma`` so that pattern·sigma == target.

    Variables of ``target`` are rigid.  ``sigma`` is mutated; callers copy it
    when they need to backtrack.
    """
    if type(pattern) is Var:
        bound = sigma.get(pattern.name)
        if bound is None:
            sigma[pattern.name] = target
            return True
        return bound == target
    if type(target) is Var:
        return False
    if pattern.functor != target.functor or len(pattern.args) != len(target.args):
        return False
    for p, q in zip(pattern.args, target.args):
        if not match_into(p, q, sigma):
            return False
    return True


def fresh_name(base: str, used: set[str]) -> str:
    stem = base.rstrip("0123456789") or base
    k = 1
    while f"{stem}{k}" in used:
        k += 1
    return f"{stem}{k}"


def rename_apart(c1: Clause, c2: Clause) -> tuple[Clause, Clause]:
    """Rename the variables of ``c2`` that also occur in ``c1``.

    ``c1`` is returned unchanged; the renamed copy of ``c2`` shares no
    variable with it.
    """
    v1 = set(c1.vars())
    v2 = c2.vars()
    clashes = [v for v in v2 if v in v1]
    if not clashes:
        return c1, c2
    used = v1 | set(v2)
    mapping = {}
    for v in clashes:
        new = fresh_name(v, used)
        used.add(new)
        mapping[v] = new
    return c1, rename_clause(c2, mapping)

