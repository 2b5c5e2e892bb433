"""Classical answer-set semantics: closures, minimal models, stable models.

Interpretations are frozensets of literals over Lit_P.  The inconsistent
interpretation Lit_P is a model of every positive program by convention and is
returned as the unique answer set exactly when it is stable, i.e. when the
reduct by Lit_P admits no consistent model.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from .kernel import CapExceededError, Literal
from .syntax import (
    KIND_NORMAL,
    KIND_SIMPLE,
    KIND_STRONG,
    Program,
    gl_reduct,
)

DEFAULT_ENUM_CAP = 16  # literals


def is_consistent(literals: Iterable[Literal]) -> bool:
    literals = set(literals)
    return not any(l.negate() in literals for l in literals)


def _models_headed(interp: set, rule) -> bool:
    head_ok = any(l in interp for l in rule.head_literals())
    body_ok = all(item.literal in interp for item in rule.body_pos())
    return head_ok or not body_ok


def _models_constraint(interp: set, rule) -> bool:
    return not all(item.literal in interp for item in rule.body_pos())


def consistent_interpretations(program: Program):
    """All consistent subsets of Lit_P (3^n over the Herbrand base)."""
    options = [(None, Literal(a), Literal(a, True)) for a in program.herbrand]
    for pick in itertools.product(*options):
        yield frozenset(l for l in pick if l is not None)


def _check_cap(program: Program, enum_cap: int) -> None:
    if 2 * len(program.herbrand) > enum_cap:
        raise CapExceededError(
            "instance too large: %d literals exceeds enumeration cap %d"
            % (2 * len(program.herbrand), enum_cap))


def tp_fixpoint(program: Program) -> frozenset:
    """Least fixpoint of the immediate consequence operator of a simple program."""
    if program.mode != "literal" or program.kind not in ("definite", "simple"):
        raise ValueError("tp_fixpoint requires a simple program")
    if program.constraint_rules():
        raise ValueError("tp_fixpoint does not admit constraint rules")
    interp: set = set()
    changed = True
    while changed:
        changed = False
        for wr in program.rules:
            rule = wr.rule
            head = rule.head_literals()[0]
            if head not in interp and all(i.literal in interp for i in rule.body_pos()):
                interp.add(head)
                changed = True
    return frozenset(interp)


def _is_answer_set(program: Program, interp: frozenset) -> bool:
    """Stability of a consistent interpretation: minimal model of the reduct."""
    reduct = gl_reduct(program, interp)
    headed = [wr.rule for wr in reduct.rules if not wr.rule.is_constraint]
    constraints = [wr.rule for wr in reduct.rules if wr.rule.is_constraint]
    if not all(_models_headed(interp, r) for r in headed):
        return False
    if not all(_models_constraint(interp, r) for r in constraints):
        return False
    members = sorted(interp)
    for size in range(len(members)):
        for subset in itertools.combinations(members, size):
            candidate = set(subset)
            if all(_models_headed(candidate, r) for r in headed):
                return False
    return True


def answer_sets(program: Program, enum_cap: int = DEFAULT_ENUM_CAP) -> list:
    """All answer sets of a program of kind <= disjunctive (weights ignored).

    Returns consistent answer sets; if there are none and Lit_P is stable,
    returns [Lit_P].
    """
    if program.mode != "literal":
        raise ValueError("classical answer sets require a literal-mode program")
    _check_cap(program, enum_cap)
    found = [i for i in consistent_interpretations(program) if _is_answer_set(program, i)]
    if found:
        return sorted(found, key=lambda i: (len(i), sorted(map(str, i))))
    lit_p = frozenset(program.literals())
    reduct = gl_reduct(program, lit_p)
    headed = [wr.rule for wr in reduct.rules if not wr.rule.is_constraint]
    for interp in consistent_interpretations(program):
        if all(_models_headed(interp, r) for r in headed):
            return []
    return [lit_p]


def minimal_models(program: Program, enum_cap: int = DEFAULT_ENUM_CAP) -> list:
    """Subset-minimal consistent models of a positive program, or [Lit_P] if none."""
    if program.has_naf():
        raise ValueError("minimal_models requires a positive program")
    _check_cap(program, enum_cap)
    models = []
    for interp in consistent_interpretations(program):
        ok = all(
            _models_constraint(interp, wr.rule) if wr.rule.is_constraint
            else _models_headed(interp, wr.rule)
            for wr in program.rules)
        if ok:
            models.append(interp)
    minimal = [m for m in models if not any(o < m for o in models)]
    if minimal:
        return sorted(minimal, key=lambda i: (len(i), sorted(map(str, i))))
    return [frozenset(program.literals())]
