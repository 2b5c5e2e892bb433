"""Reduction from exists-forall QBF (DNF matrix) to clausal programs, plus the
brute-force evaluator used as the acceptance oracle.

Text form: "exists p1 p2 forall q1 q2 : (p1 & q1) | (p2 & q2)"; either
variable list and the matrix may be empty.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable

from .kernel import CapExceededError, Clause, Literal, ONE, world_cap
from .syntax import BodyItem, Program, Rule, WeightedRule

SAT_ATOM = "sat"

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Qbf2:
    """exists X1 forall X2 . DNF, with each matrix term a conjunction of literals."""

    exists_vars: tuple
    forall_vars: tuple
    matrix: tuple  # terms; each term a tuple of Literals

    def __post_init__(self):
        overlap = set(self.exists_vars) & set(self.forall_vars)
        if overlap:
            raise ValueError("variable in both blocks: %s" % sorted(overlap)[0])
        known = set(self.exists_vars) | set(self.forall_vars)
        for term in self.matrix:
            if not term:
                raise ValueError("empty DNF term")
            for literal in term:
                if literal.atom not in known:
                    raise ValueError("matrix variable %r not quantified" % literal.atom)

    def __str__(self) -> str:
        terms = " | ".join("(%s)" % " & ".join(str(l) for l in t) for t in self.matrix)
        return "exists %s forall %s : %s" % (
            " ".join(self.exists_vars), " ".join(self.forall_vars), terms)


def parse_qbf(text: str) -> Qbf2:
    head, _, matrix_text = text.partition(":")
    match = re.match(r"\s*exists\b(?P<ex>[^:]*?)\bforall\b(?P<fa>[^:]*)$", head)
    if match is None:
        raise ValueError("expected 'exists <vars> forall <vars> : <dnf>'")

    def names(chunk):
        out = tuple(chunk.split())
        for name in out:
            if not _NAME_RE.match(name):
                raise ValueError("bad variable name %r" % name)
        return out

    terms = []
    for part in matrix_text.split("|"):
        part = part.strip().strip("()").strip()
        if not part:
            continue
        literals = []
        for token in part.split("&"):
            token = token.strip()
            negated = token.startswith("-")
            name = token[1:].strip() if negated else token
            if not _NAME_RE.match(name):
                raise ValueError("bad literal %r" % token)
            literals.append(Literal(name, negated))
        terms.append(tuple(literals))
    return Qbf2(names(match.group("ex")), names(match.group("fa")), tuple(terms))


def reduce_qbf(q: Qbf2) -> Program:
    """The clausal program whose consistent answer sets witness the QBF.

    Guess rules fix a truth value per existential variable, one fact per DNF
    term asserts (negated term or sat), and a constraint demands that sat be
    derivable.
    """
    if SAT_ATOM in q.exists_vars or SAT_ATOM in q.forall_vars:
        raise ValueError("atom %r collides with the reduction's fresh atom" % SAT_ATOM)
    rules = []
    for x in q.exists_vars:
        pos, neg = Literal(x), Literal(x, True)
        rules.append(Rule(Clause.unit(pos),
                          (BodyItem(Clause.unit(neg), naf=True),), "clausal"))
        rules.append(Rule(Clause.unit(neg),
                          (BodyItem(Clause.unit(pos), naf=True),), "clausal"))
    sat = Literal(SAT_ATOM)
    for term in q.matrix:
        clause = Clause([l.negate() for l in term] + [sat])
        rules.append(Rule(clause, (), "positive_clausal"))
    rules.append(Rule(None, (BodyItem(Clause.unit(sat), naf=True),), "constraint"))
    return Program.from_rules((WeightedRule(r, ONE) for r in rules), "clausal")


def eval_qbf(q: Qbf2, cap: int = None) -> bool:
    """Brute force: some X1 assignment makes the DNF hold for all X2 assignments."""
    limit = world_cap() if cap is None else cap
    if len(q.exists_vars) + len(q.forall_vars) > limit:
        raise CapExceededError(
            "instance too large: %d variables exceeds cap %d"
            % (len(q.exists_vars) + len(q.forall_vars), limit))

    def dnf_value(assignment: dict) -> bool:
        return any(all(assignment[l.atom] != l.negated for l in term)
                   for term in q.matrix)

    for outer in itertools.product((False, True), repeat=len(q.exists_vars)):
        fixed = dict(zip(q.exists_vars, outer))
        if all(dnf_value({**fixed, **dict(zip(q.forall_vars, inner))})
               for inner in itertools.product((False, True), repeat=len(q.forall_vars))):
            return True
    return False
