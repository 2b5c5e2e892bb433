"""The reduct-based PASP semantics used as comparison baseline.

Negation-as-failure is resolved through the classical reduct before weights
are consulted, so 'not l' acts as the Boolean condition "l is not derivable
with strictly positive certainty" (the Godel-negator behaviour the airport
example exposes).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .kernel import CapExceededError, Literal, Valuation, ZERO
from .syntax import Program, gl_reduct

DEFAULT_ENUM_CAP = 16


def poss_tp_fixpoint(program: Program) -> Valuation:
    """Least fixpoint of the weighted immediate consequence operator.

    Each simple rule contributes min(rule weight, body certainties) to its
    head; heads take the max over their rules.
    """
    if program.mode != "literal" or program.has_naf():
        raise ValueError("poss_tp_fixpoint requires a possibilistic simple program")
    if program.constraint_rules():
        raise ValueError("poss_tp_fixpoint does not admit constraint rules")
    if any(len(wr.rule.head_literals()) > 1 for wr in program.rules):
        raise ValueError("poss_tp_fixpoint does not admit disjunctive heads")
    values: dict = {}
    changed = True
    while changed:
        changed = False
        for wr in program.rules:
            head = wr.rule.head_literals()[0]
            derived = wr.weight
            for item in wr.rule.body_pos():
                derived = min(derived, values.get(item.literal, ZERO))
            if derived > values.get(head, ZERO):
                values[head] = derived
                changed = True
    return Valuation.of_literals(values)


def nicolas_answer_sets(program: Program, enum_cap: int = DEFAULT_ENUM_CAP) -> list:
    """Answer sets via guess-and-check over the reduct P^L.

    A consistent valuation V is an answer set iff the fixpoint of the reduct
    by V's support reproduces exactly that support.
    """
    if program.mode != "literal" or program.kind in ("strong_disjunctive",):
        raise ValueError("nicolas_answer_sets requires a normal program")
    if 2 * len(program.herbrand) > enum_cap:
        raise CapExceededError(
            "instance too large: %d literals exceeds enumeration cap %d"
            % (2 * len(program.herbrand), enum_cap))
    answers = []
    options = [(None, Literal(a), Literal(a, True)) for a in program.herbrand]
    for pick in itertools.product(*options):
        guess = frozenset(l for l in pick if l is not None)
        reduct = gl_reduct(program, guess)
        if reduct.constraint_rules():
            # constraint rules surviving the reduct must not fire under the guess
            violated = any(
                all(item.literal in guess for item in wr.rule.body_pos())
                for wr in reduct.constraint_rules())
            if violated:
                continue
            reduct = reduct.without_constraints()
        valuation = poss_tp_fixpoint(reduct)
        if frozenset(valuation.support()) == guess:
            answers.append(valuation)
    return sorted(answers, key=str)
