"""Surface language, program model, classification, reducts and the certainty grid.

Grammar (one statement per rule, '%' starts a line comment):

    statement  = [ weight ":" ] rule "."
    rule       = head [ ":-" body ] | ":-" body
    head       = literal { ";" literal } | literal { "|" literal }
    body       = item { "," item }
    item       = [ "not" ] ( literal | "(" literal { "|" literal } ")" )
    literal    = [ "-" ] IDENT
    weight     = decimal or p/q in (0,1], default 1

";" builds strong disjunction, "|" weak clauses; a program never mixes the two.
An empty head is a constraint rule (head bottom); an empty body is a fact
(body top); neither sentinel is parseable from source.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from .kernel import (
    ONE,
    ZERO,
    HALF,
    Clause,
    Literal,
    Valuation,
    certainty_str,
    valuation_necessity,
)

KIND_DEFINITE = "definite"
KIND_SIMPLE = "simple"
KIND_NORMAL = "normal"
KIND_STRONG = "strong_disjunctive"
KIND_POSITIVE_CLAUSAL = "positive_clausal"
KIND_CLAUSAL = "clausal"
KIND_CONSTRAINT = "constraint"

_LITERAL_ORDER = (KIND_DEFINITE, KIND_SIMPLE, KIND_NORMAL, KIND_STRONG)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__("line %d, col %d: %s" % (line, col, message))
        self.line = line
        self.col = col


@dataclass(frozen=True)
class BodyItem:
    """One body conjunct: a clause (unit in literal modes), possibly naf-prefixed."""

    clause: Clause
    naf: bool = False

    @property
    def literal(self) -> Literal:
        return self.clause.literals[0]

    def __str__(self) -> str:
        text = str(self.clause)
        if not self.clause.is_unit():
            text = "(%s)" % text
        return "not %s" % text if self.naf else text


@dataclass(frozen=True)
class Rule:
    """head is a literal tuple (literal mode), a Clause (clausal mode) or None (constraint)."""

    head: Union[tuple, Clause, None]
    body: tuple
    kind: str

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    @property
    def is_fact(self) -> bool:
        return not self.body

    def head_literals(self) -> tuple:
        if self.head is None:
            return ()
        if isinstance(self.head, Clause):
            raise TypeError("clausal rule has no literal head")
        return self.head

    def head_clause(self) -> Optional[Clause]:
        if self.head is None or isinstance(self.head, Clause):
            return self.head
        if len(self.head) != 1:
            raise TypeError("disjunctive literal head is not a single clause")
        return Clause.unit(self.head[0])

    def body_pos(self) -> tuple:
        return tuple(item for item in self.body if not item.naf)

    def body_naf(self) -> tuple:
        return tuple(item for item in self.body if item.naf)

    def has_naf(self) -> bool:
        return any(item.naf for item in self.body)

    def __str__(self) -> str:
        if self.head is None:
            head = ""
        elif isinstance(self.head, Clause):
            head = str(self.head)
        else:
            head = ";".join(str(l) for l in self.head)
        if not self.body:
            return head
        return "%s :- %s" % (head, ", ".join(str(i) for i in self.body)) if head \
            else ":- %s" % ", ".join(str(i) for i in self.body)


@dataclass(frozen=True)
class WeightedRule:
    rule: Rule
    weight: Fraction = ONE

    def __post_init__(self):
        if not ZERO < self.weight <= ONE:
            raise ValueError("rule weight %s outside (0,1]" % self.weight)

    def __str__(self) -> str:
        return "%s: %s" % (certainty_str(self.weight), self.rule)


def _classify_rule(head, body, mode: str) -> str:
    if head is None:
        return KIND_CONSTRAINT
    has_naf = any(item.naf for item in body)
    if mode == "clausal":
        return KIND_CLAUSAL if has_naf else KIND_POSITIVE_CLAUSAL
    if len(head) > 1:
        return KIND_STRONG
    if has_naf:
        return KIND_NORMAL
    lits = list(head) + [item.literal for item in body]
    if any(l.negated for l in lits):
        return KIND_SIMPLE
    return KIND_DEFINITE


def _effective_level(rule: Rule, mode: str) -> int:
    """Classification level a rule forces on its program (constraints by content)."""
    if mode == "clausal":
        return 1 if rule.has_naf() else 0
    if rule.kind == KIND_CONSTRAINT:
        if rule.has_naf():
            return _LITERAL_ORDER.index(KIND_NORMAL)
        if any(item.literal.negated for item in rule.body):
            return _LITERAL_ORDER.index(KIND_SIMPLE)
        return 0
    return _LITERAL_ORDER.index(rule.kind)


@dataclass(frozen=True)
class Program:
    rules: tuple
    mode: str  # "literal" | "clausal"
    kind: str
    herbrand: tuple
    weighted: bool = False

    @classmethod
    def from_rules(cls, rules: Iterable[WeightedRule], mode: str,
                   herbrand: Sequence[str] = None, weighted: bool = None) -> "Program":
        rules = tuple(rules)
        atoms = set()
        for wr in rules:
            rule = wr.rule
            if rule.head is not None:
                heads = rule.head.literals if isinstance(rule.head, Clause) else rule.head
                atoms.update(l.atom for l in heads)
            for item in rule.body:
                atoms.update(item.clause.atoms)
        base = tuple(sorted(atoms)) if herbrand is None else tuple(herbrand)
        levels = [_effective_level(wr.rule, mode) for wr in rules]
        top = max(levels, default=0)
        if mode == "clausal":
            kind = KIND_CLAUSAL if top else KIND_POSITIVE_CLAUSAL
        else:
            kind = _LITERAL_ORDER[top]
        if weighted is None:
            weighted = any(wr.weight != ONE for wr in rules)
        return cls(rules, mode, kind, base, weighted)

    def literals(self) -> tuple:
        """Lit_P: every atom of the Herbrand base and its classical negation."""
        out = []
        for atom in self.herbrand:
            out.append(Literal(atom))
            out.append(Literal(atom, True))
        return tuple(out)

    def heads(self) -> tuple:
        """Head clauses in first-appearance order (clausal programs)."""
        seen, out = set(), []
        for wr in self.rules:
            clause = wr.rule.head_clause() if wr.rule.head is not None else None
            if clause is not None and clause not in seen:
                seen.add(clause)
                out.append(clause)
        return tuple(out)

    def has_naf(self) -> bool:
        return any(wr.rule.has_naf() for wr in self.rules)

    def constraint_rules(self) -> tuple:
        return tuple(wr for wr in self.rules if wr.rule.is_constraint)

    def without_constraints(self) -> "Program":
        kept = tuple(wr for wr in self.rules if not wr.rule.is_constraint)
        return Program.from_rules(kept, self.mode, self.herbrand, self.weighted)

    def naf_literals(self) -> tuple:
        """Literals occurring behind naf (literal mode)."""
        seen, out = set(), []
        for wr in self.rules:
            for item in wr.rule.body_naf():
                lit = item.literal
                if lit not in seen:
                    seen.add(lit)
                    out.append(lit)
        return tuple(sorted(out))

    def to_clausal(self) -> "Program":
        """Reinterpret a literal-mode program clausally (heads become unit clauses)."""
        if self.mode == "clausal":
            return self
        if self.kind == KIND_STRONG:
            raise ValueError("strong-disjunctive heads have no clausal reading")
        converted = []
        for wr in self.rules:
            head = wr.rule.head_clause() if wr.rule.head is not None else None
            rule = Rule(head, wr.rule.body, _classify_rule(head, wr.rule.body, "clausal"))
            converted.append(WeightedRule(rule, wr.weight))
        return Program.from_rules(converted, "clausal", self.herbrand, self.weighted)

    def __str__(self) -> str:
        return program_to_text(self)


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>%[^\n]*)
  | (?P<nl>\n)
  | (?P<number>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>:-)
  | (?P<sym>[.:;,|()\-])
""", re.VERBOSE)

_RESERVED = {"not"}


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col


def _tokenize(text: str) -> list:
    tokens, line, col, pos = [], 1, 1, 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError("unexpected character %r" % text[pos], line, col)
        kind = match.lastgroup
        value = match.group()
        if kind == "nl":
            line += 1
            col = 1
        else:
            if kind not in ("ws", "comment"):
                name = value if kind in ("arrow", "sym") else kind
                tokens.append(_Token(name, value, line, col))
            col += len(value)
        pos = match.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.saw_strong = None  # first ';' token
        self.saw_weak = None  # first '|' token

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError("expected %r, found %r" % (kind, tok.text or "end of input"),
                             tok.line, tok.col)
        return tok

    def fail(self, message: str, tok: _Token = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def parse(self) -> Program:
        statements = []
        any_weight = False
        while self.peek().kind != "eof":
            weight, explicit = self.weight()
            any_weight = any_weight or explicit
            statements.append((weight, self.rule_core()))
            self.expect(".")
        if self.saw_strong and self.saw_weak:
            tok = max(self.saw_strong, self.saw_weak, key=lambda t: (t.line, t.col))
            raise ParseError("program mixes strong ';' and weak '|' disjunction",
                             tok.line, tok.col)
        mode = "clausal" if self.saw_weak else "literal"
        rules = []
        for weight, (head_lits, body) in statements:
            if head_lits is None:
                head = None
            elif mode == "clausal":
                head = Clause(head_lits)
            else:
                head = tuple(head_lits)
            if mode == "literal":
                for item in body:
                    if not item.clause.is_unit():
                        raise ParseError("internal: clause body in literal mode", 0, 0)
            rules.append(WeightedRule(Rule(head, body, _classify_rule(head, body, mode)),
                                      weight))
        return Program.from_rules(rules, mode, weighted=any_weight)

    def weight(self):
        tok = self.peek()
        if tok.kind == "number" and self.tokens[self.pos + 1].kind == ":":
            self.next()
            self.next()
            value = Fraction(tok.text)
            if not ZERO < value <= ONE:
                raise ParseError("weight %s outside (0,1]" % tok.text, tok.line, tok.col)
            return value, True
        return ONE, False

    def rule_core(self):
        if self.peek().kind == ":-":
            self.next()
            return None, self.body()
        head = self.head()
        if self.peek().kind == ":-":
            self.next()
            return head, self.body()
        return head, ()

    def head(self):
        literals = [self.literal()]
        sep = self.peek()
        if sep.kind in (";", "|"):
            if sep.kind == ";":
                self.saw_strong = self.saw_strong or sep
            else:
                self.saw_weak = self.saw_weak or sep
            while self.peek().kind == sep.kind:
                self.next()
                literals.append(self.literal())
            if self.peek().kind in (";", "|"):
                self.fail("cannot mix ';' and '|' in one head")
        return literals

    def body(self):
        items = [self.body_item()]
        while self.peek().kind == ",":
            self.next()
            items.append(self.body_item())
        return tuple(items)

    def body_item(self) -> BodyItem:
        naf = False
        if self.peek().kind == "ident" and self.peek().text == "not":
            self.next()
            naf = True
        if self.peek().kind == "(":
            self.next()
            literals = [self.literal()]
            while self.peek().kind == "|":
                self.saw_weak = self.saw_weak or self.peek()
                self.next()
                literals.append(self.literal())
            self.expect(")")
            return BodyItem(Clause(literals), naf)
        return BodyItem(Clause.unit(self.literal()), naf)

    def literal(self) -> Literal:
        negated = False
        if self.peek().kind == "-":
            self.next()
            negated = True
        tok = self.expect("ident")
        if tok.text in _RESERVED:
            self.fail("reserved word %r cannot name an atom" % tok.text, tok)
        return Literal(tok.text, negated)


def parse_program(text: str) -> Program:
    """Parse PASP source text into a classified Program."""
    return _Parser(text).parse()


def parse_clause(text: str) -> Clause:
    """Parse a bare clause such as 'a|b|-c' (query surface)."""
    parser = _Parser(text)
    literals = [parser.literal()]
    while parser.peek().kind == "|":
        parser.next()
        literals.append(parser.literal())
    if parser.peek().kind != "eof":
        parser.fail("trailing input after clause")
    return Clause(literals)


def program_to_text(program: Program) -> str:
    """Canonical source form; parse_program inverts it."""
    lines = []
    for wr in program.rules:
        prefix = "%s: " % certainty_str(wr.weight) if program.weighted else ""
        lines.append("%s%s." % (prefix, wr.rule))
    return "\n".join(lines)


def cert_plus(program: Program) -> tuple:
    """The finite certainty grid: weights, their complements, and {0, 1/2, 1}."""
    values = {ZERO, HALF, ONE}
    for wr in program.rules:
        values.add(wr.weight)
        values.add(ONE - wr.weight)
    return tuple(sorted(values))


def lambda_cut(program: Program, level: Fraction) -> tuple:
    """Unweighted rules whose weight reaches the level."""
    if not ZERO < level <= ONE:
        raise ValueError("cut level %s outside (0,1]" % level)
    return tuple(wr.rule for wr in program.rules if wr.weight >= level)


def gl_reduct(program: Program, interp: Iterable[Literal]) -> Program:
    """Gelfond-Lifschitz reduct by a literal set; weights ride along unchanged.

    Drops every rule whose naf literals intersect the interpretation and strips
    the naf items from the survivors (also the Nicolas reduct P^L of weighted
    normal programs).
    """
    if program.mode != "literal":
        raise ValueError("gl_reduct requires a literal-mode program")
    interp = set(interp)
    kept = []
    for wr in program.rules:
        rule = wr.rule
        if any(item.literal in interp for item in rule.body_naf()):
            continue
        body = rule.body_pos()
        kept.append(WeightedRule(Rule(rule.head, body,
                                      _classify_rule(rule.head, body, "literal")),
                                 wr.weight))
    return Program.from_rules(kept, "literal", program.herbrand, program.weighted)


def clausal_reduct(program: Program, valuation: Valuation) -> Program:
    """Reduct of a clausal program by a head-clause valuation guess.

    Each rule keeps weight min(rule weight, lambda_body) where lambda_body is
    the largest level at which no naf clause is entailed by the strict cut of
    the guess, i.e. 1 - max_i N_V(e_i); rules whose weight vanishes are dropped.
    """
    if program.mode != "clausal":
        raise ValueError("clausal_reduct requires a clausal-mode program")
    extra = set()
    for clause, _ in valuation.clause_items():
        extra.update(clause.atoms)
    base = tuple(sorted(set(program.herbrand) | extra))
    kept = []
    for wr in program.rules:
        rule = wr.rule
        lam_body = ONE
        for item in rule.body_naf():
            lam_body = min(lam_body, ONE - valuation_necessity(valuation, item.clause, base))
        weight = min(wr.weight, lam_body)
        if weight <= ZERO:
            continue
        body = rule.body_pos()
        kept.append(WeightedRule(Rule(rule.head, body,
                                      _classify_rule(rule.head, body, "clausal")),
                                 weight))
    return Program.from_rules(kept, "clausal", program.herbrand, program.weighted)
