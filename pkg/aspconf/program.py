"""
Object model of extended disjunctive programs.

A program is a set of rules ``L1 ; ... ; Ll :- Ll+1, ..., Lm, not Lm+1, ..., not Ln``
over literals that may be classically negated (``-p(a)``). Rules with
variables stand for all their ground instances over a universe of
constants; the helpers here ground them on demand, decide rule
satisfaction, build the reduct of a ground program and compare rules modulo
variable renaming.

All values are immutable and hashable.
"""

import itertools
import logging
import math
from dataclasses import dataclass

from aspconf.exceptions import ArityConflict, EmptyUniverse, NonGroundRule, ResourceCap

logger = logging.getLogger(__name__)

RESERVED_PREFIX = "__"

# permutations tried when renaming variables canonically
_MAX_CANONICAL_ORDERINGS = 5040


@dataclass(frozen=True, order=True)
class Term:
    name: str
    is_variable: bool = False

    @classmethod
    def parse(cls, name):
        """
        Build a term following the lexical convention: uppercase-initial
        names are variables, everything else is a constant.
        """
        return cls(name, name[:1].isupper())

    @property
    def kind(self):
        return "variable" if self.is_variable else "constant"

    def __str__(self):
        return self.name


def const(name):
    return Term(name, False)


def var(name):
    return Term(name, True)


@dataclass(frozen=True, order=True)
class Atom:
    predicate: str
    args: tuple = ()

    @property
    def arity(self):
        return len(self.args)

    @property
    def is_ground(self):
        return not any(t.is_variable for t in self.args)

    def substitute(self, theta):
        if not theta or self.is_ground:
            return self
        return Atom(
            self.predicate,
            tuple(theta.get(t.name, t) if t.is_variable else t for t in self.args),
        )

    def __str__(self):
        if not self.args:
            return self.predicate
        return "{0}({1})".format(self.predicate, ",".join(t.name for t in self.args))


@dataclass(frozen=True, order=True)
class Literal:
    atom: Atom
    negated: bool = False

    @classmethod
    def of(cls, predicate, *args, negated=False):
        """
        Shorthand constructor, ``Literal.of("ill", "X", "aids")``.
        """
        return cls(Atom(predicate, tuple(Term.parse(a) for a in args)), negated)

    @property
    def predicate(self):
        return self.atom.predicate

    @property
    def args(self):
        return self.atom.args

    @property
    def arity(self):
        return self.atom.arity

    @property
    def is_ground(self):
        return self.atom.is_ground

    @property
    def is_reserved(self):
        return self.atom.predicate.startswith(RESERVED_PREFIX)

    def variables(self):
        return frozenset(t.name for t in self.atom.args if t.is_variable)

    def constants(self):
        return frozenset(t.name for t in self.atom.args if not t.is_variable)

    def complement(self):
        return Literal(self.atom, not self.negated)

    def substitute(self, theta):
        atom = self.atom.substitute(theta)
        if atom is self.atom:
            return self
        return Literal(atom, self.negated)

    def rename(self, mapping):
        return self.substitute({old: var(new) for old, new in mapping.items()})

    def canonical(self):
        """
        The variant of this literal whose variables are ``V1, V2, ...`` in
        order of first occurrence.
        """
        mapping = {}
        for t in self.atom.args:
            if t.is_variable and t.name not in mapping:
                mapping[t.name] = "V{0}".format(len(mapping) + 1)
        return self.rename(mapping)

    def __str__(self):
        return ("-" if self.negated else "") + str(self.atom)


@dataclass(frozen=True)
class BodyElem:
    literal: Literal
    naf: bool = False

    def substitute(self, theta):
        literal = self.literal.substitute(theta)
        if literal is self.literal:
            return self
        return BodyElem(literal, self.naf)

    @property
    def sort_key(self):
        return (self.naf, self.literal)

    def __str__(self):
        return ("not " if self.naf else "") + str(self.literal)


@dataclass(frozen=True)
class Rule:
    head: frozenset = frozenset()
    body: frozenset = frozenset()

    def __post_init__(self):
        # heads and bodies are sets
        object.__setattr__(self, "head", frozenset(self.head))
        object.__setattr__(self, "body", frozenset(self.body))

    @classmethod
    def fact(cls, literal):
        return cls(frozenset([literal]))

    @classmethod
    def make(cls, head=(), pos=(), naf=()):
        body = [BodyElem(l) for l in pos] + [BodyElem(l, True) for l in naf]
        return cls(frozenset(head), frozenset(body))

    @property
    def positive_body(self):
        return frozenset(b.literal for b in self.body if not b.naf)

    @property
    def naf_body(self):
        return frozenset(b.literal for b in self.body if b.naf)

    @property
    def is_fact(self):
        return len(self.head) == 1 and not self.body

    @property
    def is_constraint(self):
        return not self.head

    @property
    def literal(self):
        """The literal a fact is identified with."""
        if not self.is_fact:
            raise ValueError("not a fact: {0}".format(self))
        return next(iter(self.head))

    @property
    def is_ground(self):
        return all(l.is_ground for l in self.literals())

    def literals(self):
        yield from self.head
        for b in self.body:
            yield b.literal

    def variables(self):
        names = set()
        for l in self.literals():
            names.update(l.variables())
        return frozenset(names)

    def constants(self):
        names = set()
        for l in self.literals():
            names.update(l.constants())
        return frozenset(names)

    def substitute(self, theta):
        return Rule(
            frozenset(l.substitute(theta) for l in self.head),
            frozenset(b.substitute(theta) for b in self.body),
        )

    def rename(self, mapping):
        return self.substitute({old: var(new) for old, new in mapping.items()})

    def canonical(self):
        """
        A fixed representative of this rule's renaming class, with variables
        named ``V1, V2, ...``. Two rules are variants iff their canonical
        forms are equal.

        :raises ResourceCap: interchangeable variables allow more than 5040
            orderings
        """
        names = sorted(self.variables())
        if not names:
            return self
        groups = self._occurrence_groups(names)
        best_key, best = None, None
        for ordering in _orderings(groups):
            candidate = self.rename(
                {v: "V{0}".format(i) for i, v in enumerate(ordering, 1)}
            )
            key = str(candidate)
            if best_key is None or key < best_key:
                best_key, best = key, candidate
        return best

    def _occurrence_groups(self, names):
        signature = {v: [] for v in names}
        tagged = [("h", l) for l in self.head] + [
            ("n" if b.naf else "p", b.literal) for b in self.body
        ]
        for role, l in tagged:
            for index, t in enumerate(l.args):
                if t.is_variable:
                    signature[t.name].append((role, l.negated, l.predicate, index))
        grouped = {}
        for v in names:
            grouped.setdefault(tuple(sorted(signature[v])), []).append(v)
        return [grouped[key] for key in sorted(grouped)]

    @property
    def sort_key(self):
        return (0 if self.is_fact else 1, str(self))

    def __str__(self):
        head = " ; ".join(str(l) for l in sorted(self.head))
        body = ", ".join(str(b) for b in sorted(self.body, key=lambda b: b.sort_key))
        if not self.body:
            return head + "."
        if not self.head:
            return ":- " + body + "."
        return head + " :- " + body + "."


def _orderings(groups):
    count = math.prod(math.factorial(len(g)) for g in groups)
    if count > _MAX_CANONICAL_ORDERINGS:
        raise ResourceCap("canonical variable orderings", _MAX_CANONICAL_ORDERINGS, count)
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        yield [v for g in choice for v in g]


def _coerce_rule(item):
    if isinstance(item, Rule):
        return item
    if isinstance(item, Literal):
        return Rule.fact(item)
    raise TypeError("expected Rule or Literal, got {0!r}".format(item))


class Program:
    """
    A finite set of rules. Literals passed in are stored as facts.

    :param rules: rules or literals
    :raises ArityConflict: if a predicate occurs with two arities
    """

    def __init__(self, rules=()):
        self.rules = frozenset(_coerce_rule(r) for r in rules)
        self._arities = _collect_arities(self.rules)
        self._sorted = None

    def __iter__(self):
        if self._sorted is None:
            self._sorted = tuple(sorted(self.rules, key=lambda r: r.sort_key))
        return iter(self._sorted)

    def __len__(self):
        return len(self.rules)

    def __bool__(self):
        return bool(self.rules)

    def __contains__(self, rule):
        return _coerce_rule(rule) in self.rules

    def __eq__(self, other):
        if not isinstance(other, Program):
            return NotImplemented
        return self.rules == other.rules

    def __hash__(self):
        return hash(self.rules)

    def __or__(self, other):
        return self.union(other)

    def __repr__(self):
        return "<Program: {0} rules>".format(len(self.rules))

    def __str__(self):
        return "\n".join(str(r) for r in self)

    def union(self, *others):
        rules = set(self.rules)
        for other in others:
            rules.update(_coerce_rule(r) for r in other)
        return Program(rules)

    def predicates(self):
        """Mapping of predicate symbol to arity."""
        return dict(self._arities)

    def constants(self):
        names = set()
        for r in self.rules:
            names.update(r.constants())
        return frozenset(names)

    def literals(self):
        found = set()
        for r in self.rules:
            found.update(r.literals())
        return frozenset(found)

    def facts(self):
        return frozenset(r.literal for r in self.rules if r.is_fact)

    @property
    def is_ground(self):
        return all(r.is_ground for r in self.rules)

    def canonical_rules(self):
        return frozenset(r.canonical() for r in self.rules)

    def contains_variant(self, rule):
        return _coerce_rule(rule).canonical() in self.canonical_rules()


def _collect_arities(rules):
    arities = {}
    for r in rules:
        for l in r.literals():
            seen = arities.setdefault(l.predicate, l.arity)
            if seen != l.arity:
                raise ArityConflict(
                    "predicate {0} used with arities {1} and {2}".format(
                        l.predicate, seen, l.arity
                    ),
                    token=l.predicate,
                )
    return arities


def constants_of(*programs):
    """The union of the constants occurring in ``programs``, sorted."""
    names = set()
    for p in programs:
        names.update(p.constants())
    return tuple(sorted(names))


class Interpretation:
    """
    A set of ground literals. A set containing a complementary pair collapses
    to the contradictory set, the set of all literals, which is kept
    symbolic and never materialized.
    """

    def __init__(self, literals=(), contradictory=False):
        literals = frozenset(literals)
        if not contradictory:
            contradictory = any(l.complement() in literals for l in literals if l.negated)
        self.contradictory = contradictory
        self.literals = frozenset() if contradictory else literals

    @classmethod
    def contradictory_set(cls):
        return cls(contradictory=True)

    @property
    def is_consistent(self):
        return not self.contradictory

    def __contains__(self, literal):
        return self.contradictory or literal in self.literals

    def __iter__(self):
        return iter(sorted(self.literals))

    def __eq__(self, other):
        if not isinstance(other, Interpretation):
            return NotImplemented
        return (self.contradictory, self.literals) == (other.contradictory, other.literals)

    def __hash__(self):
        return hash((self.contradictory, self.literals))

    def issubset(self, other):
        if other.contradictory:
            return True
        return not self.contradictory and self.literals <= other.literals

    @property
    def sort_key(self):
        return (self.contradictory, tuple(sorted(self.literals)))

    def __repr__(self):
        return "<Interpretation: {0}>".format(self)

    def __str__(self):
        if self.contradictory:
            return "<contradictory>"
        return "{" + ", ".join(str(l) for l in self) + "}"


def free_vars(r):
    """Every variable name occurring in the head or body of ``r``."""
    return r.variables()


def instances(rule, universe):
    """
    Yield the ground instances of ``rule`` over the constants in ``universe``.

    :raises EmptyUniverse: if the rule has variables and ``universe`` is empty
    """
    names = sorted(rule.variables())
    if not names:
        yield rule
        return
    universe = sorted(set(universe))
    if not universe:
        raise EmptyUniverse("cannot ground {0} over an empty universe".format(rule))
    constants = [const(c) for c in universe]
    for values in itertools.product(constants, repeat=len(names)):
        yield rule.substitute(dict(zip(names, values)))


def literal_instances(literal, universe):
    for r in instances(Rule.fact(literal), universe):
        yield r.literal


def ground(p, universe, limit=None):
    """
    Replace every rule with variables by all its ground instances.

    :param p: the program
    :type p: Program
    :param universe: constant names
    :param limit: optional cap on the number of ground rules
    :raises EmptyUniverse: variables present and ``universe`` empty
    :raises ResourceCap: more than ``limit`` ground rules
    """
    out = set()
    for r in p.rules:
        for g in instances(r, universe):
            out.add(g)
            if limit is not None and len(out) > limit:
                raise ResourceCap("ground rules", limit, len(out))
    return Program(out)


def satisfies(s, r):
    """
    Whether the interpretation ``s`` satisfies the ground rule ``r``: the
    body is false in ``s`` or some head literal is in ``s``.
    """
    if not r.is_ground:
        raise NonGroundRule(r)
    body_holds = all(l in s for l in r.positive_body) and not any(
        l in s for l in r.naf_body
    )
    return not body_holds or any(l in s for l in r.head)


def reduct(p, s):
    """
    The NAF-free program obtained from the ground program ``p``: rules whose
    NAF part meets ``s`` are dropped, the NAF part of the others removed.
    """
    rules = []
    for r in p.rules:
        if not r.is_ground:
            raise NonGroundRule(r)
        if any(l in s for l in r.naf_body):
            continue
        rules.append(Rule(r.head, frozenset(b for b in r.body if not b.naf)))
    return Program(rules)


def unify(a, b):
    """
    Most general unifier of two literals as a mapping from variable name to
    term, or ``None``. Both literals share one variable namespace.
    """
    if (a.predicate, a.arity, a.negated) != (b.predicate, b.arity, b.negated):
        return None
    theta = {}

    def walk(t):
        while t.is_variable and t.name in theta:
            t = theta[t.name]
        return t

    for x, y in zip(a.args, b.args):
        x, y = walk(x), walk(y)
        if x == y:
            continue
        if x.is_variable:
            theta[x.name] = y
        elif y.is_variable:
            theta[y.name] = x
        else:
            return None
    return {name: walk(t) for name, t in theta.items()}


def rename_apart(literal, suffix="'"):
    return literal.rename({v: v + suffix for v in literal.variables()})


def overlaps(a, b):
    """Whether two literals share a ground instance, variables taken apart."""
    return unify(a, rename_apart(b)) is not None


def variants_equal(r1, r2):
    """Whether a variable renaming maps ``r1`` onto ``r2``."""
    return _coerce_rule(r1).canonical() == _coerce_rule(r2).canonical()


def set_minus_modulo_inst(s, t, universe):
    """
    ``s \\ t`` computed on ground instantiations, returned as ground rules.
    """
    removed = ground(Program(t), universe).rules
    return set(ground(Program(s), universe).rules - removed)
