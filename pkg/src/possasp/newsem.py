"""Rules as necessity constraints: the possibilistic semantics of simple and
normal programs, with negation-as-failure graded through a guessed valuation.

A constraint bounds the necessity of its head clause from below by the minimum
of its terms; a term is either an exact constant or a clause standing for that
clause's necessity under the distribution being solved for.  min({}) = 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .kernel import (
    CapExceededError,
    Clause,
    Literal,
    ONE,
    PossibilityDistribution,
    Valuation,
    ZERO,
    world_space,
)
from .syntax import KIND_STRONG, Program, cert_plus

DEFAULT_GUESS_CAP = 200_000


@dataclass(frozen=True)
class NecessityConstraint:
    """N(head) >= min(terms); head None encodes bottom (violated by every world)."""

    head: Optional[Clause]
    terms: tuple  # Fraction constants and Clause necessity references

    def __str__(self) -> str:
        head = str(self.head) if self.head is not None else "#false"
        parts = [("N(%s)" % t) if isinstance(t, Clause) else str(t) for t in self.terms]
        return "N(%s) >= min(%s)" % (head, ", ".join(parts) or "1")


def _rule_terms(rule, weight: Fraction, guess: Optional[Valuation]) -> tuple:
    terms = []
    for item in rule.body_pos():
        terms.append(item.clause)
    for item in rule.body_naf():
        if guess is None:
            raise ValueError("a valuation guess is required for naf rules")
        terms.append(ONE - guess.value(item.literal))
    terms.append(weight)
    return tuple(terms)


def constraints_for(program: Program, guess: Optional[Valuation] = None) -> list:
    """One necessity constraint per rule of a program of kind <= normal."""
    if program.mode != "literal" or program.kind == KIND_STRONG:
        raise ValueError("constraints_for requires a program of kind <= normal")
    out = []
    for wr in program.rules:
        rule = wr.rule
        heads = rule.head_literals()
        head = Clause.unit(heads[0]) if heads else None
        out.append(NecessityConstraint(head, _rule_terms(rule, wr.weight, guess)))
    return out


def _necessity_in(levels: dict, space, clause: Clause) -> Fraction:
    outside = ~space.clause_worlds(clause) & space.full
    best = ZERO
    for value, mask in levels.items():
        if value > best and mask & outside:
            best = value
    return ONE - best


def least_specific_model(constraints: Iterable[NecessityConstraint],
                         base: Sequence[str], cap: int = None) -> PossibilityDistribution:
    """Greatest distribution satisfying every constraint.

    Starts from the uniform-one distribution and repeatedly cuts the worlds
    violating a constraint's head down to 1 - min(terms), with necessity terms
    re-read from the current distribution, until a full pass changes nothing.
    All values live on the finite grid generated by the constants, so the
    descent terminates.
    """
    constraints = tuple(constraints)
    space = world_space(base, cap=cap)
    levels = {ONE: space.full}
    cut_masks = []
    for c in constraints:
        if c.head is None:
            cut_masks.append(space.full)
        else:
            cut_masks.append(~space.clause_worlds(c.head) & space.full)
    changed = True
    while changed:
        changed = False
        for c, violators in zip(constraints, cut_masks):
            bound = ONE
            for term in c.terms:
                value = _necessity_in(levels, space, term) if isinstance(term, Clause) else term
                if value < bound:
                    bound = value
            ceiling = ONE - bound
            moved = 0
            for value in [v for v in levels if v > ceiling]:
                grab = levels[value] & violators
                if grab:
                    levels[value] &= ~grab
                    if not levels[value]:
                        del levels[value]
                    moved |= grab
            if moved:
                levels[ceiling] = levels.get(ceiling, 0) | moved
                changed = True
    return PossibilityDistribution(space, levels.items())


def satisfies_constraint(pi: PossibilityDistribution, c: NecessityConstraint) -> bool:
    bound = min((pi.necessity(t) if isinstance(t, Clause) else t for t in c.terms),
                default=ONE)
    head_necessity = ONE - pi.max_value() if c.head is None else pi.necessity(c.head)
    return head_necessity >= bound


def read_off_valuation(pi: PossibilityDistribution, literals: Iterable[Literal]) -> Valuation:
    """V = {l^{N(l)}}: the literal valuation a distribution induces."""
    return Valuation.of_literals({l: pi.necessity(Clause.unit(l)) for l in literals})


@dataclass(frozen=True)
class SimpleResult:
    valuation: Valuation
    distribution: PossibilityDistribution
    consistent: bool


def simple_answer_set(program: Program) -> SimpleResult:
    """The unique answer set of a possibilistic simple program.

    The distribution is the least specific model of the program's constraints;
    the program is inconsistent when that distribution is not normalized.
    """
    if program.has_naf():
        raise ValueError("simple_answer_set requires a naf-free program")
    pi = least_specific_model(constraints_for(program), program.herbrand)
    valuation = read_off_valuation(pi, program.literals())
    return SimpleResult(valuation, pi, pi.is_normalized())


def _guess_space(program: Program, grid: Sequence[Fraction], guess_cap: int):
    naf_literals = program.naf_literals()
    total = len(grid) ** len(naf_literals)
    if total > guess_cap:
        raise CapExceededError(
            "instance too large: %d naf guesses exceeds cap %d" % (total, guess_cap))
    for values in itertools.product(grid, repeat=len(naf_literals)):
        yield Valuation.of_literals(dict(zip(naf_literals, values)))


def normal_answer_sets(program: Program, grid: Sequence[Fraction] = None,
                       guess_cap: int = DEFAULT_GUESS_CAP) -> list:
    """Stable grid-valued answer sets of a possibilistic normal program.

    Guesses range only over literals occurring behind naf; the remaining
    literals take the necessity values the solved distribution assigns, and a
    guess is stable when every literal's value equals its necessity.
    """
    if program.mode != "literal" or program.kind == KIND_STRONG:
        raise ValueError("normal_answer_sets requires a program of kind <= normal")
    grid = cert_plus(program) if grid is None else tuple(sorted(set(grid)))
    literals = program.literals()
    naf_literals = set(program.naf_literals())
    answers = []
    for guess in _guess_space(program, grid, guess_cap):
        pi = least_specific_model(constraints_for(program, guess), program.herbrand)
        valuation = read_off_valuation(pi, literals)
        if all(valuation.value(l) == guess.value(l) for l in naf_literals):
            if valuation not in answers:
                answers.append(valuation)
    return sorted(answers, key=str)


def answer_set_distribution(program: Program, valuation: Valuation) -> PossibilityDistribution:
    """Re-solve the constraints a stable valuation pins down (for reporting)."""
    pi = least_specific_model(constraints_for(program, valuation), program.herbrand)
    return pi


def crisp_answer_sets(program: Program) -> list:
    """Two-valued stable models of a weight-1 normal program, as literal sets.

    Only consistent (normalized-distribution) answer sets are reported.
    """
    if any(wr.weight != ONE for wr in program.rules):
        raise ValueError("crisp_answer_sets requires all weights 1")
    results = []
    for valuation in normal_answer_sets(program, grid=(ZERO, ONE)):
        if any(v != ONE for v in valuation.entries.values()):
            continue
        pi = answer_set_distribution(program, valuation)
        if not pi.is_normalized():
            continue
        results.append(frozenset(valuation.support()))
    return sorted(results, key=lambda i: (len(i), sorted(map(str, i))))
