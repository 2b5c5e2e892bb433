"""Weak (clausal) disjunction: heads are believed as whole clauses.

Two routes compute answer sets.  The semantic route guesses a distribution,
builds the induced constraints and checks the guess is a minimally specific
model of them.  The syntactic route reduces the program by a guessed head
valuation, runs the clausal immediate consequence operator to a fixpoint and
accepts when the fixpoint induces the guessed distribution.  Identity is
always at the distribution level: distinct valuations can induce one
distribution, so valuation equality would overcount.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .kernel import (
    CapExceededError,
    Clause,
    ONE,
    PossibilityDistribution,
    Valuation,
    ZERO,
    least_specific_from_valuation,
    world_space,
)
from .newsem import least_specific_model
from .syntax import Program, cert_plus, clausal_reduct

DEFAULT_GUESS_CAP = 2_000_000


@dataclass(frozen=True)
class WeakConstraint:
    """N(head clause) >= min(terms); head None encodes bottom."""

    head: Optional[Clause]
    terms: tuple  # Fraction constants and Clause necessity references

    def __str__(self) -> str:
        head = str(self.head) if self.head is not None else "#false"
        parts = [("N(%s)" % t) if isinstance(t, Clause) else str(t) for t in self.terms]
        return "N(%s) >= min(%s)" % (head, ", ".join(parts) or "1")


def _as_clausal(program: Program) -> Program:
    return program if program.mode == "clausal" else program.to_clausal()


def constraints_weak(program: Program,
                     piv: Optional[PossibilityDistribution] = None) -> list:
    """One clause constraint per rule; naf clauses become constants 1 - N_V(e)."""
    program = _as_clausal(program)
    out = []
    for wr in program.rules:
        rule = wr.rule
        terms = []
        for item in rule.body_pos():
            terms.append(item.clause)
        for item in rule.body_naf():
            if piv is None:
                raise ValueError("a guess distribution is required for naf rules")
            terms.append(ONE - piv.necessity(item.clause))
        terms.append(wr.weight)
        out.append(WeakConstraint(rule.head_clause(), tuple(terms)))
    return out


def least_specific_weak(constraints: Iterable[WeakConstraint],
                        base: Sequence[str]) -> PossibilityDistribution:
    """Unique least specific model once naf terms are resolved to constants."""
    return least_specific_model(constraints, base)


def tw_fixpoint(program: Program, entailment: str = "general") -> Valuation:
    """Least fixpoint of the clausal immediate consequence operator.

    A rule fires at the largest level at which it survives the lambda-cut and
    every body clause is entailed by the current valuation's cut.  With
    entailment="subset" body clauses are checked by the subset relation
    instead, which is complete for atom-only positive programs.
    """
    program = _as_clausal(program)
    if program.has_naf():
        raise ValueError("tw_fixpoint requires a positive clausal program")
    if program.constraint_rules():
        raise ValueError("tw_fixpoint does not admit constraint rules")
    if entailment not in ("general", "subset"):
        raise ValueError("entailment must be 'general' or 'subset'")
    space = world_space(program.herbrand) if entailment == "general" else None
    rules = [(wr.rule.head_clause(), tuple(i.clause for i in wr.rule.body_pos()), wr.weight)
             for wr in program.rules]
    values: dict = {}
    cut_cache: dict = {}

    def entailed_at(level: Fraction, goal: Clause) -> bool:
        cached = cut_cache.get(level)
        if cached is None:
            cut = [c for c, v in values.items() if v >= level]
            if entailment == "general":
                mask = space.full
                for c in cut:
                    mask &= space.clause_worlds(c)
                cached = mask
            else:
                cached = [frozenset(c.literals) for c in cut]
            cut_cache[level] = cached
        if entailment == "general":
            return cached & ~space.clause_worlds(goal) == 0
        goal_set = frozenset(goal.literals)
        return any(c <= goal_set for c in cached)

    changed = True
    while changed:
        changed = False
        for head, body, weight in rules:
            if values.get(head, ZERO) >= weight:
                continue
            candidates = [weight] + sorted(
                (v for v in set(values.values()) if v < weight), reverse=True)
            derived = ZERO
            for level in candidates:
                if level <= values.get(head, ZERO):
                    break
                if all(entailed_at(level, goal) for goal in body):
                    derived = level
                    break
            if derived > values.get(head, ZERO):
                values[head] = derived
                cut_cache.clear()
                changed = True
    return Valuation.of_clauses(values)


def _constraint_satisfied(pi: PossibilityDistribution, wr) -> bool:
    """A constraint rule's induced bound, checked against N(bottom) = 1 - max pi."""
    bound = wr.weight
    for item in wr.rule.body_pos():
        bound = min(bound, pi.necessity(item.clause))
    for item in wr.rule.body_naf():
        bound = min(bound, ONE - pi.necessity(item.clause))
    return ONE - pi.max_value() >= bound


def weak_answer_models(program: Program, grid: Sequence[Fraction] = None,
                       guess_cap: int = DEFAULT_GUESS_CAP) -> list:
    """(valuation, distribution) pairs of the weak answer sets on the grid.

    Syntactic route: enumerate head valuations, reduce, run the fixpoint, and
    accept when the fixpoint's induced distribution equals the guess's.
    Programs with constraint rules are solved on their constraint-free part
    and filtered by the constraint-rule bounds afterwards.
    """
    program = _as_clausal(program)
    grid = cert_plus(program) if grid is None else tuple(sorted(set(grid)))
    core = program.without_constraints()
    heads = core.heads()
    base = program.herbrand
    total = len(grid) ** len(heads)
    if total > guess_cap:
        raise CapExceededError(
            "instance too large: %d head guesses exceeds cap %d" % (total, guess_cap))
    results = []
    seen = set()
    for assignment in itertools.product(grid, repeat=len(heads)):
        guess = Valuation.of_clauses(dict(zip(heads, assignment)))
        pi_guess = least_specific_from_valuation(guess, base)
        if pi_guess in seen:
            continue
        seen.add(pi_guess)
        reduct = clausal_reduct(core, guess)
        fixpoint = tw_fixpoint(reduct)
        if least_specific_from_valuation(fixpoint, base) == pi_guess:
            results.append((fixpoint, pi_guess))
    kept = [(v, pi) for v, pi in results
            if all(_constraint_satisfied(pi, wr) for wr in program.constraint_rules())]
    kept.sort(key=lambda pair: str(pair[0]))
    return kept


def weak_answer_sets(program: Program, grid: Sequence[Fraction] = None,
                     guess_cap: int = DEFAULT_GUESS_CAP) -> list:
    """Answer-set valuations (restricted to head clauses) on the grid."""
    return [v for v, _ in weak_answer_models(program, grid, guess_cap)]


def semantic_answer_models(program: Program, grid: Sequence[Fraction] = None,
                           guess_cap: int = DEFAULT_GUESS_CAP) -> list:
    """The purely semantic route: pi_V must be minimally specific for its own
    constraint set.  Used to cross-validate the syntactic route."""
    program = _as_clausal(program)
    grid = cert_plus(program) if grid is None else tuple(sorted(set(grid)))
    core = program.without_constraints()
    heads = core.heads()
    base = program.herbrand
    total = len(grid) ** len(heads)
    if total > guess_cap:
        raise CapExceededError(
            "instance too large: %d head guesses exceeds cap %d" % (total, guess_cap))
    accepted = []
    seen = set()
    for assignment in itertools.product(grid, repeat=len(heads)):
        guess = Valuation.of_clauses(dict(zip(heads, assignment)))
        pi_guess = least_specific_from_valuation(guess, base)
        if pi_guess in seen:
            continue
        seen.add(pi_guess)
        solved = least_specific_weak(constraints_weak(core, pi_guess), base)
        if solved == pi_guess:
            accepted.append((guess, pi_guess))
    kept = [(v, pi) for v, pi in accepted
            if all(_constraint_satisfied(pi, wr) for wr in program.constraint_rules())]
    kept.sort(key=lambda pair: str(pair[0]))
    return kept


def _is_crisp(program: Program) -> bool:
    return all(wr.weight == ONE for wr in program.rules)


def crisp_weak_answer_sets(program: Program) -> list:
    """(valuation, consistent) pairs for weight-1 programs over the {0,1} grid."""
    program = _as_clausal(program)
    if not _is_crisp(program):
        raise ValueError("crisp_weak_answer_sets requires all weights 1")
    out = []
    for valuation, pi in weak_answer_models(program, grid=(ZERO, ONE)):
        if all(value in (ZERO, ONE) for value, _ in pi.strata):
            out.append((valuation, pi.is_normalized()))
    return out


def _consistent_models(program: Program, grid: Sequence[Fraction] = None) -> list:
    program = _as_clausal(program)
    if grid is None:
        grid = (ZERO, ONE) if _is_crisp(program) else cert_plus(program)
    return [(v, pi) for v, pi in weak_answer_models(program, grid) if pi.is_normalized()]


def brave_query(program: Program, goal: Clause, level: Fraction = ONE,
                grid: Sequence[Fraction] = None) -> bool:
    """Some consistent answer set entails the goal clause at the level."""
    return any(pi.necessity(goal) >= level
               for _, pi in _consistent_models(program, grid))


def cautious_query(program: Program, goal: Clause, level: Fraction = ONE,
                   grid: Sequence[Fraction] = None) -> bool:
    """Every consistent answer set entails the goal clause at the level."""
    return all(pi.necessity(goal) >= level
               for _, pi in _consistent_models(program, grid))
