"""Strong possibilistic disjunction: heads read as the max of their literals'
necessities, inducing a choice among disjuncts.

Minimally specific models are found by enumerating choice functions (one head
literal per multi-literal head), solving each resulting single-head system,
and keeping the pointwise-maximal satisfying distributions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .kernel import (
    CapExceededError,
    Clause,
    ONE,
    PossibilityDistribution,
    Valuation,
    specificity_compare,
)
from .newsem import (
    DEFAULT_GUESS_CAP,
    NecessityConstraint,
    _guess_space,
    _rule_terms,
    least_specific_model,
    read_off_valuation,
)
from .syntax import Program, cert_plus

DEFAULT_CHOICE_CAP = 1_000_000


@dataclass(frozen=True)
class StrongConstraint:
    """max(N(l) for head literals) >= min(terms); empty head encodes bottom."""

    head_literals: tuple
    terms: tuple

    def __str__(self) -> str:
        head = ", ".join("N(%s)" % l for l in self.head_literals) or "N(#false)"
        parts = [("N(%s)" % t) if isinstance(t, Clause) else str(t) for t in self.terms]
        return "max(%s) >= min(%s)" % (head, ", ".join(parts) or "1")


def constraints_strong(program: Program, guess: Optional[Valuation] = None) -> list:
    """One max-head constraint per rule of a possibilistic disjunctive program."""
    if program.mode != "literal":
        raise ValueError("constraints_strong requires a literal-mode program")
    out = []
    for wr in program.rules:
        rule = wr.rule
        out.append(StrongConstraint(rule.head_literals(),
                                    _rule_terms(rule, wr.weight, guess)))
    return out


def satisfies_strong(pi: PossibilityDistribution, c: StrongConstraint) -> bool:
    bound = min((pi.necessity(t) if isinstance(t, Clause) else t for t in c.terms),
                default=ONE)
    if c.head_literals:
        head_value = max(pi.necessity(Clause.unit(l)) for l in c.head_literals)
    else:
        head_value = ONE - pi.max_value()
    return head_value >= bound


def min_specific_models(constraints, base: Sequence[str],
                        choice_cap: int = DEFAULT_CHOICE_CAP) -> list:
    """All minimally specific models reachable by head-literal choice functions.

    Every per-choice solution satisfies the original constraints; the final
    filter keeps the pointwise-maximal ones (an anti-chain).
    """
    constraints = tuple(constraints)
    options = [c.head_literals or (None,) for c in constraints]
    total = 1
    for opts in options:
        total *= len(opts)
    if total > choice_cap:
        raise CapExceededError(
            "instance too large: %d head choices exceeds cap %d" % (total, choice_cap))
    candidates = []
    for picks in itertools.product(*options):
        system = [
            NecessityConstraint(Clause.unit(pick) if pick is not None else None, c.terms)
            for pick, c in zip(picks, constraints)
        ]
        pi = least_specific_model(system, base)
        if pi not in candidates and all(satisfies_strong(pi, c) for c in constraints):
            candidates.append(pi)
    return [pi for pi in candidates
            if not any(specificity_compare(pi, other) == "lt" for other in candidates)]


def strong_answer_sets(program: Program, grid: Sequence[Fraction] = None,
                       guess_cap: int = DEFAULT_GUESS_CAP,
                       choice_cap: int = DEFAULT_CHOICE_CAP) -> list:
    """Stable grid-valued answer sets under strong disjunction."""
    return [v for v, _ in strong_answer_models(program, grid, guess_cap, choice_cap)]


def strong_answer_models(program: Program, grid: Sequence[Fraction] = None,
                         guess_cap: int = DEFAULT_GUESS_CAP,
                         choice_cap: int = DEFAULT_CHOICE_CAP) -> list:
    """(valuation, distribution) pairs for the stable guesses, deduplicated."""
    if program.mode != "literal":
        raise ValueError("strong_answer_sets requires a literal-mode program")
    grid = cert_plus(program) if grid is None else tuple(sorted(set(grid)))
    literals = program.literals()
    naf_literals = set(program.naf_literals())
    results = []
    seen = set()
    for guess in _guess_space(program, grid, guess_cap):
        constraints = constraints_strong(program, guess)
        for pi in min_specific_models(constraints, program.herbrand, choice_cap):
            valuation = read_off_valuation(pi, literals)
            if all(valuation.value(l) == guess.value(l) for l in naf_literals):
                if valuation not in seen:
                    seen.add(valuation)
                    results.append((valuation, pi))
    results.sort(key=lambda pair: str(pair[0]))
    return results
