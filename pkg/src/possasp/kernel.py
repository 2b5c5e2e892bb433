"""Possibility distributions over finite world sets and the measures they induce.

Worlds over an ordered atom base of size n are indexed by bitmask: world w
contains atom i iff bit i of w is set.  Sets of worlds are manipulated as
arbitrary-precision integers (bit w set iff world w belongs), which keeps the
2^n world semantics explicit while staying fast enough for desk-scale bases.
All certainty values are exact rationals; no floating point anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

DEFAULT_WORLD_CAP = 20

_world_cap = DEFAULT_WORLD_CAP


class UnknownAtomError(ValueError):
    """A clause mentions an atom outside the base it is evaluated against."""


class CapExceededError(RuntimeError):
    """A resource cap (world count, enumeration size) would be exceeded."""


def world_cap() -> int:
    return _world_cap


def set_world_cap(n: int) -> None:
    """Set the global ceiling on atoms per world enumeration (default 20)."""
    global _world_cap
    if n < 0:
        raise ValueError("world cap must be nonnegative")
    _world_cap = n


def certainty(value: Union[str, int, Fraction]) -> Fraction:
    """Parse an exact certainty from a decimal or p/q string (floats rejected)."""
    if isinstance(value, float):
        raise TypeError("certainties must be exact; got float %r" % value)
    frac = Fraction(value)
    if not ZERO <= frac <= ONE:
        raise ValueError("certainty %s outside [0,1]" % frac)
    return frac


def certainty_str(value: Fraction) -> str:
    """Render exactly: terminating decimal when possible, else p/q."""
    den = value.denominator
    while den % 2 == 0:
        den //= 2
    while den % 5 == 0:
        den //= 5
    if den != 1:
        return "%d/%d" % (value.numerator, value.denominator)
    if value.denominator == 1:
        return str(value.numerator)
    scaled, digits = value, 0
    while scaled.denominator != 1:
        scaled *= 10
        digits += 1
    text = str(scaled.numerator).rjust(digits + 1, "0")
    return "%s.%s" % (text[:-digits], text[-digits:])


@dataclass(frozen=True, order=True)
class Literal:
    """An atom or its classical negation; double negation collapses via negate()."""

    atom: str
    negated: bool = False

    def negate(self) -> "Literal":
        return Literal(self.atom, not self.negated)

    def __str__(self) -> str:
        return "-" + self.atom if self.negated else self.atom


class Clause:
    """A nonempty, duplicate-free disjunction of literals in canonical order.

    A clause containing both a and -a is flagged as a tautology but accepted.
    """

    __slots__ = ("literals", "is_tautology", "_hash")

    def __init__(self, literals: Iterable[Literal]):
        unique = sorted(set(literals))
        if not unique:
            raise ValueError("clause must contain at least one literal")
        object.__setattr__(self, "literals", tuple(unique))
        atoms_pos = {l.atom for l in unique if not l.negated}
        atoms_neg = {l.atom for l in unique if l.negated}
        object.__setattr__(self, "is_tautology", bool(atoms_pos & atoms_neg))
        object.__setattr__(self, "_hash", hash(self.literals))

    @classmethod
    def unit(cls, literal: Literal) -> "Clause":
        return cls((literal,))

    @property
    def atoms(self) -> frozenset:
        return frozenset(l.atom for l in self.literals)

    def is_unit(self) -> bool:
        return len(self.literals) == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Clause) and self.literals == other.literals

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Clause") -> bool:
        return self.literals < other.literals

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __str__(self) -> str:
        return "|".join(str(l) for l in self.literals)

    def __repr__(self) -> str:
        return "Clause(%s)" % str(self)


World = frozenset  # a world is the set of atoms it makes true


def negation_cnf(clause: Clause) -> tuple:
    """The negation of a clause as a CNF of unit clauses."""
    return tuple(Clause.unit(l.negate()) for l in clause.literals)


class WorldSpace:
    """The 2^n worlds over an ordered atom base, with cached clause masks."""

    __slots__ = ("base", "index", "n", "size", "full", "_atom_masks", "_clause_masks")

    def __init__(self, base: Sequence[str], cap: int = None):
        base = tuple(base)
        if len(set(base)) != len(base):
            raise ValueError("duplicate atoms in base")
        limit = _world_cap if cap is None else cap
        if len(base) > limit:
            raise CapExceededError(
                "instance too large: %d atoms exceeds world cap %d" % (len(base), limit)
            )
        self.base = base
        self.index = {a: i for i, a in enumerate(base)}
        self.n = len(base)
        self.size = 1 << self.n
        self.full = (1 << self.size) - 1
        self._atom_masks = {}
        self._clause_masks = {}

    def atom_worlds(self, i: int) -> int:
        """Bitmask of the worlds containing atom number i."""
        mask = self._atom_masks.get(i)
        if mask is None:
            half = 1 << i
            segment = ((1 << half) - 1) << half
            period = half << 1
            repeats = self.size // period
            unit = ((1 << (period * repeats)) - 1) // ((1 << period) - 1)
            mask = segment * unit
            self._atom_masks[i] = mask
        return mask

    def literal_worlds(self, literal: Literal) -> int:
        i = self.index.get(literal.atom)
        if i is None:
            raise UnknownAtomError("unknown atom %r" % literal.atom)
        mask = self.atom_worlds(i)
        return (~mask & self.full) if literal.negated else mask

    def clause_worlds(self, clause: Clause) -> int:
        """Bitmask of the worlds satisfying the clause."""
        mask = self._clause_masks.get(clause)
        if mask is None:
            mask = 0
            for literal in clause.literals:
                mask |= self.literal_worlds(literal)
            self._clause_masks[clause] = mask
        return mask

    def cnf_worlds(self, clauses: Iterable[Clause]) -> int:
        mask = self.full
        for clause in clauses:
            mask &= self.clause_worlds(clause)
        return mask

    def world_mask(self, atoms: Iterable[str]) -> int:
        w = 0
        for a in atoms:
            i = self.index.get(a)
            if i is None:
                raise UnknownAtomError("unknown atom %r" % a)
            w |= 1 << i
        return w

    def world_atoms(self, w: int) -> World:
        return frozenset(a for i, a in enumerate(self.base) if (w >> i) & 1)

    def worlds(self) -> Iterator[int]:
        return iter(range(self.size))


_SPACES: dict = {}


def world_space(base: Sequence[str], cap: int = None) -> WorldSpace:
    """Shared WorldSpace per base so clause-mask caches persist across calls."""
    base = tuple(base)
    space = _SPACES.get(base)
    if space is None:
        space = WorldSpace(base, cap=cap)
        _SPACES[base] = space
    else:
        limit = _world_cap if cap is None else cap
        if space.n > limit:
            raise CapExceededError(
                "instance too large: %d atoms exceeds world cap %d" % (space.n, limit)
            )
    return space


class PossibilityDistribution:
    """An exact map from the worlds of a base to [0,1].

    Stored as strata: distinct values in descending order, each with the
    bitmask of worlds holding that value; the strata partition the world set.
    `table` materialises the conventional 2^n array view.
    """

    __slots__ = ("space", "strata")

    def __init__(self, space: WorldSpace, strata: Iterable):
        collected: dict = {}
        covered = 0
        for value, mask in strata:
            if not ZERO <= value <= ONE:
                raise ValueError("distribution value %s outside [0,1]" % value)
            mask &= space.full
            if mask == 0:
                continue
            if mask & covered:
                raise ValueError("overlapping strata")
            covered |= mask
            collected[value] = collected.get(value, 0) | mask
        if covered != space.full:
            raise ValueError("strata do not cover the world set")
        self.space = space
        self.strata = tuple(sorted(collected.items(), key=lambda kv: kv[0], reverse=True))

    @classmethod
    def uniform(cls, space: WorldSpace, value: Fraction = ONE) -> "PossibilityDistribution":
        return cls(space, ((value, space.full),))

    @classmethod
    def from_table(cls, base: Sequence[str], values: Sequence[Fraction],
                   cap: int = None) -> "PossibilityDistribution":
        space = world_space(base, cap=cap)
        if len(values) != space.size:
            raise ValueError("expected %d table entries, got %d" % (space.size, len(values)))
        levels: dict = {}
        for w, value in enumerate(values):
            levels[value] = levels.get(value, 0) | (1 << w)
        return cls(space, levels.items())

    @property
    def table(self) -> tuple:
        out = [ZERO] * self.space.size
        for value, mask in self.strata:
            w = mask
            while w:
                low = w & -w
                out[low.bit_length() - 1] = value
                w ^= low
        return tuple(out)

    def value_at(self, world: int) -> Fraction:
        bit = 1 << world
        for value, mask in self.strata:
            if mask & bit:
                return value
        raise IndexError("world %d outside space" % world)

    def max_value(self) -> Fraction:
        return self.strata[0][0]

    def is_normalized(self) -> bool:
        return self.max_value() == ONE

    def is_vacuous(self) -> bool:
        return self.max_value() == ZERO

    def possibility_of_mask(self, mask: int) -> Fraction:
        """Max of the distribution over a world set; 0 on the empty set."""
        for value, stratum in self.strata:
            if stratum & mask:
                return value
        return ZERO

    def possibility(self, formula: Iterable[Clause]) -> Fraction:
        return self.possibility_of_mask(self.space.cnf_worlds(formula))

    def necessity(self, clause: Clause) -> Fraction:
        outside = ~self.space.clause_worlds(clause) & self.space.full
        return ONE - self.possibility_of_mask(outside)

    def _level_map(self) -> dict:
        return dict(self.strata)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PossibilityDistribution)
                and self.space.base == other.space.base
                and self.strata == other.strata)

    def __hash__(self) -> int:
        return hash((self.space.base, self.strata))

    def __repr__(self) -> str:
        parts = ", ".join("%s:%x" % (certainty_str(v), m) for v, m in self.strata)
        return "PossibilityDistribution[%s]{%s}" % (",".join(self.space.base), parts)


def satisfies(world: Iterable[str], clause: Clause, base: Sequence[str]) -> bool:
    """Propositional satisfaction: some literal of the clause holds in the world."""
    atoms = set(world)
    known = set(base)
    bad = atoms - known
    if bad:
        raise UnknownAtomError("unknown atom %r" % sorted(bad)[0])
    for literal in clause.literals:
        if literal.atom not in known:
            raise UnknownAtomError("unknown atom %r" % literal.atom)
        if (literal.atom in atoms) != literal.negated:
            return True
    return False


def possibility(pi: PossibilityDistribution, formula: Iterable[Clause]) -> Fraction:
    return pi.possibility(formula)


def necessity(pi: PossibilityDistribution, clause: Clause) -> Fraction:
    return pi.necessity(clause)


def specificity_compare(pi1: PossibilityDistribution, pi2: PossibilityDistribution) -> str:
    """Pointwise order: 'gt' iff pi1 > pi2 (pi1 strictly less specific), etc."""
    if pi1.space.base != pi2.space.base:
        raise ValueError("distributions over different bases")
    if pi1.strata == pi2.strata:
        return "eq"
    levels1, levels2 = pi1._level_map(), pi2._level_map()
    values = sorted(set(levels1) | set(levels2), reverse=True)
    cum1 = cum2 = 0
    ge = le = True
    for v in values:
        cum1 |= levels1.get(v, 0)
        cum2 |= levels2.get(v, 0)
        if cum2 & ~cum1:
            ge = False
        if cum1 & ~cum2:
            le = False
    if ge:
        return "gt"
    if le:
        return "lt"
    return "incomparable"


KeyedEntries = Mapping  # valuation entries: Literal/Clause -> Fraction


class Valuation:
    """A map from literals (literal mode) or head clauses (clausal mode) to certainties.

    Zero-valued entries are never stored; absence means 0.
    """

    __slots__ = ("mode", "entries", "_hash")

    def __init__(self, entries: KeyedEntries, mode: str):
        if mode not in ("literal", "clausal"):
            raise ValueError("mode must be 'literal' or 'clausal'")
        kept = {}
        for key, value in entries.items():
            if mode == "literal" and not isinstance(key, Literal):
                raise TypeError("literal-mode valuation got key %r" % (key,))
            if mode == "clausal" and not isinstance(key, Clause):
                raise TypeError("clausal-mode valuation got key %r" % (key,))
            if not ZERO <= value <= ONE:
                raise ValueError("valuation value %s outside [0,1]" % value)
            if value > ZERO:
                kept[key] = value
        self.mode = mode
        self.entries = dict(sorted(kept.items(), key=lambda kv: self._key_order(kv[0])))
        self._hash = hash((mode, tuple(self.entries.items())))

    @staticmethod
    def _key_order(key):
        if isinstance(key, Literal):
            return (key.atom, key.negated)
        return tuple((l.atom, l.negated) for l in key.literals)

    @classmethod
    def of_literals(cls, entries: KeyedEntries) -> "Valuation":
        return cls(entries, "literal")

    @classmethod
    def of_clauses(cls, entries: KeyedEntries) -> "Valuation":
        return cls(entries, "clausal")

    @classmethod
    def empty(cls, mode: str = "literal") -> "Valuation":
        return cls({}, mode)

    def value(self, key) -> Fraction:
        return self.entries.get(key, ZERO)

    def cut(self, level: Fraction) -> tuple:
        """V^level: keys with value >= level."""
        return tuple(k for k, v in self.entries.items() if v >= level)

    def strict_cut(self, level: Fraction) -> tuple:
        """V^{>level}: keys with value > level."""
        return tuple(k for k, v in self.entries.items() if v > level)

    def values_used(self) -> tuple:
        return tuple(sorted(set(self.entries.values())))

    def clause_items(self) -> tuple:
        """Entries with literal keys lifted to unit clauses."""
        if self.mode == "clausal":
            return tuple(self.entries.items())
        return tuple((Clause.unit(k), v) for k, v in self.entries.items())

    def support(self) -> tuple:
        return tuple(self.entries)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Valuation) and self.mode == other.mode
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        def fmt(key, value):
            text = str(key)
            if isinstance(key, Clause) and not key.is_unit():
                text = "(%s)" % text
            return "%s^%s" % (text, certainty_str(value))

        return "{%s}" % ", ".join(fmt(k, v) for k, v in self.entries.items())

    __repr__ = __str__


def least_specific_from_valuation(valuation: Valuation, base: Sequence[str],
                                  cap: int = None) -> PossibilityDistribution:
    """The greatest distribution satisfying N(e) >= value for every entry.

    pi(w) = min over entries violated by w of (1 - value), else 1.
    """
    space = world_space(base, cap=cap)
    by_weight: dict = {}
    for clause, value in valuation.clause_items():
        by_weight.setdefault(value, []).append(clause)
    strata = []
    assigned = 0
    for value in sorted(by_weight, reverse=True):
        violated = 0
        for clause in by_weight[value]:
            violated |= ~space.clause_worlds(clause) & space.full
        fresh = violated & ~assigned
        if fresh:
            strata.append((ONE - value, fresh))
            assigned |= fresh
    strata.append((ONE, space.full & ~assigned))
    return PossibilityDistribution(space, strata)


def valuation_necessity(valuation: Valuation, clause: Clause, base: Sequence[str],
                        cap: int = None) -> Fraction:
    """N_V: necessity of a clause under the distribution a valuation induces."""
    return least_specific_from_valuation(valuation, base, cap=cap).necessity(clause)


def entails(valuation: Valuation, clause: Clause, level: Fraction,
            base: Sequence[str], cap: int = None) -> bool:
    """V |= clause^level iff the induced necessity reaches the level."""
    return valuation_necessity(valuation, clause, base, cap=cap) >= level


def clause_entailment(clauses: Iterable[Clause], goal: Clause, cap: int = None) -> bool:
    """Truth-table entailment over the combined atom set of premises and goal."""
    clauses = tuple(clauses)
    atoms = sorted(set(itertools.chain(goal.atoms, *(c.atoms for c in clauses))))
    space = world_space(atoms, cap=cap)
    models = space.cnf_worlds(clauses)
    return models & ~space.clause_worlds(goal) == 0
