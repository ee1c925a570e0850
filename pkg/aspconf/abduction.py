"""
Extended abduction through update programs.

An abductive program pairs a program ``K`` with abducibles ``A``. Abducible
rules are first replaced by naming atoms (the normal form), then every
abducible literal ``L`` gets a binary choice between ``L`` and a fresh atom
``L-bar``, together with an update atom recording whether ``L`` was inserted
into or deleted from ``K``. Answer sets of the update program that are
minimal on their update atoms correspond to minimal change sets ``(E, F)``.
"""

import logging

from aspconf import config
from aspconf.exceptions import NonLiteralAbducible, UnknownUpdateAtom
from aspconf.program import (
    Atom,
    BodyElem,
    Literal,
    Program,
    Rule,
    constants_of,
    ground,
    instances,
    literal_instances,
    var,
)
from aspconf.solver import AnswerSetResult

logger = logging.getLogger(__name__)

NAME_PREFIX = "__n_"
# (positive literal, classically negated literal)
BAR_PREFIXES = ("__no_", "__noneg_")
INSERT_PREFIXES = ("__ins_", "__insneg_")
DELETE_PREFIXES = ("__del_", "__delneg_")

RULE_GRANULARITY = "rule"
INSTANCE_GRANULARITY = "instance"


def _encode(prefixes, literal):
    return Literal(Atom(prefixes[literal.negated] + literal.predicate, literal.args))


def _coerce_rule(item):
    return Rule.fact(item) if isinstance(item, Literal) else item


class AbductiveProgram:
    """
    A program ``k`` with abducibles ``a``. Members of ``a`` that are not
    literals are the abducible rules.
    """

    def __init__(self, k, a):
        self.k = k if isinstance(k, Program) else Program(k)
        self.a = a if isinstance(a, Program) else Program(a)

    @property
    def abducible_rules(self):
        return frozenset(r for r in self.a.rules if not r.is_fact)

    @property
    def abducible_literals(self):
        return frozenset(r.literal for r in self.a.rules if r.is_fact)

    @property
    def is_normal(self):
        return not self.abducible_rules

    def __eq__(self, other):
        if not isinstance(other, AbductiveProgram):
            return NotImplemented
        return (self.k, self.a) == (other.k, other.a)

    def __hash__(self):
        return hash((self.k, self.a))

    def __repr__(self):
        return "<AbductiveProgram: {0} rules, {1} abducibles>".format(
            len(self.k), len(self.a)
        )


class NameMap:
    """
    The naming of abducible rules. Each rule ``R`` gets a fresh atom
    ``__n_<i>``; with instance granularity the atom carries the sorted free
    variables of ``R``. Literals are their own names.
    """

    def __init__(self, granularity=RULE_GRANULARITY):
        if granularity not in (RULE_GRANULARITY, INSTANCE_GRANULARITY):
            raise ValueError("unknown naming granularity {0!r}".format(granularity))
        self.granularity = granularity
        self._names = {}
        self._rules = {}

    def add(self, rule):
        key = rule.canonical()
        if key in self._names:
            return self._names[key]
        args = ()
        if self.granularity == INSTANCE_GRANULARITY:
            args = tuple(var(v) for v in sorted(rule.variables()))
        name = Literal(Atom("{0}{1}".format(NAME_PREFIX, len(self._names) + 1), args))
        self._names[key] = name
        self._rules[name.predicate] = rule
        return name

    def name(self, item):
        item = _coerce_rule(item)
        if item.is_fact:
            return item.literal
        return self._names[item.canonical()]

    def is_name(self, literal):
        return literal.predicate in self._rules

    def rule_for(self, literal):
        """
        The member of the original program named by the ground or non-ground
        ``literal``: an abducible rule (or its instance) for a naming atom,
        the fact ``literal.`` otherwise.
        """
        rule = self._rules.get(literal.predicate)
        if rule is None:
            return Rule.fact(literal)
        if self.granularity == INSTANCE_GRANULARITY and literal.args:
            names = sorted(rule.variables())
            return rule.substitute(dict(zip(names, literal.args)))
        return rule

    def items(self):
        return [(self._rules[n.predicate], n) for n in self._names.values()]

    def __len__(self):
        return len(self._names)

    def __contains__(self, rule):
        return _coerce_rule(rule).canonical() in self._names


def normal_form(ap, granularity=None):
    """
    Replace abducible rules by naming atoms.

    Each abducible rule gets its name appended to the body and is kept in
    ``K``; the name becomes a fact when the rule belonged to ``K`` and an
    abducible in place of the rule.

    :return: the normal-form abductive program and its :class:`NameMap`
    """
    names = NameMap(granularity or config.RULE_NAMING)
    abducible_rules = sorted(ap.abducible_rules, key=lambda r: r.sort_key)
    for r in abducible_rules:
        names.add(r)

    named = {r.canonical() for r in abducible_rules}
    in_k = ap.k.canonical_rules()
    k_rules = [r for r in ap.k if r.canonical() not in named]
    for r in abducible_rules:
        n = names.name(r)
        k_rules.append(Rule(r.head, r.body | {BodyElem(n)}))
        if r.canonical() in in_k:
            k_rules.append(Rule.fact(n))
    a_rules = [Rule.fact(l) for l in ap.abducible_literals]
    a_rules.extend(Rule.fact(names.name(r)) for r in abducible_rules)
    return AbductiveProgram(Program(k_rules), Program(a_rules)), names


class UpdateProgram:
    """
    An update program with its insertion atoms ``ua_plus``, deletion atoms
    ``ua_minus``, the ``bar_map`` from each ground abducible to its
    complementary choice atom, and the ``provenance`` of each update atom
    (the ground abducible literal it stands for).
    """

    def __init__(self, rules, ua_plus, ua_minus, bar_map, provenance, universe):
        self.rules = rules
        self.ua_plus = frozenset(ua_plus)
        self.ua_minus = frozenset(ua_minus)
        self.bar_map = dict(bar_map)
        self.provenance = dict(provenance)
        self.universe = tuple(universe)

    @property
    def update_atoms(self):
        return self.ua_plus | self.ua_minus

    @property
    def abducibles(self):
        return sorted(self.bar_map)

    def __repr__(self):
        return "<UpdateProgram: {0} rules, {1} insertions, {2} deletions>".format(
            len(self.rules), len(self.ua_plus), len(self.ua_minus)
        )


def update_program(ap_n, universe=None):
    """
    Build the update program of an abductive program in normal form. The
    abducibles are instantiated over ``universe`` (by default the constants
    of the abductive program) first.

    :raises NonLiteralAbducible: an abducible is a rule
    """
    for r in ap_n.a:
        if not r.is_fact:
            raise NonLiteralAbducible(r)
    if universe is None:
        universe = constants_of(ap_n.k, ap_n.a)

    abducibles = sorted(
        {l for r in ap_n.a for l in literal_instances(r.literal, universe)}
    )
    abducible_set = set(abducibles)

    # K \ A on ground instances
    rules = []
    in_k = set()
    for r in ap_n.k:
        if not r.is_fact:
            rules.append(r)
            continue
        found = list(literal_instances(r.literal, universe))
        hit = [l for l in found if l in abducible_set]
        if not hit:
            rules.append(r)
            continue
        in_k.update(hit)
        rules.extend(Rule.fact(l) for l in found if l not in abducible_set)

    ua_plus, ua_minus, bar_map, provenance = set(), set(), {}, {}
    for l in abducibles:
        bar = _encode(BAR_PREFIXES, l)
        bar_map[l] = bar
        rules.append(Rule.make([l], naf=[bar]))
        rules.append(Rule.make([bar], naf=[l]))
        if l in in_k:
            atom = _encode(DELETE_PREFIXES, l)
            rules.append(Rule.make([atom], naf=[l]))
            ua_minus.add(atom)
        else:
            atom = _encode(INSERT_PREFIXES, l)
            rules.append(Rule.make([atom], pos=[l]))
            ua_plus.add(atom)
        provenance[atom] = l

    logger.info(
        "update program: {0} abducibles, {1} insertable, {2} deletable".format(
            len(abducibles), len(ua_plus), len(ua_minus)
        )
    )
    return UpdateProgram(Program(rules), ua_plus, ua_minus, bar_map, provenance, universe)


def u_minimal(results, ua):
    """
    Keep the answer sets whose update atoms are not a strict superset of
    another answer set's update atoms.
    """
    ua = frozenset(ua)

    def key(s):
        return ua if s.contradictory else frozenset(l for l in s.literals if l in ua)

    keyed = [(s, key(s)) for s in results]
    minimal = []
    for k in sorted({k for _, k in keyed}, key=len):
        if not any(m < k for m in minimal):
            minimal.append(k)
    minimal = set(minimal)
    return AnswerSetResult([s for s, k in keyed if k in minimal])


class ChangeSet:
    """
    A pair of insertions ``e`` and deletions ``f``. Members are rules; literals
    are stored as facts. Membership is compared modulo variable renaming.
    """

    def __init__(self, e=(), f=()):
        self.e = frozenset(_coerce_rule(r) for r in e)
        self.f = frozenset(_coerce_rule(r) for r in f)
        self._e_key = frozenset(r.canonical() for r in self.e)
        self._f_key = frozenset(r.canonical() for r in self.f)
        if self._e_key & self._f_key:
            raise ValueError("a rule cannot be both inserted and deleted")

    @property
    def size(self):
        return len(self.e) + len(self.f)

    @property
    def is_empty(self):
        return not self.e and not self.f

    def issubset(self, other):
        return self._e_key <= other._e_key and self._f_key <= other._f_key

    def __le__(self, other):
        return self.issubset(other)

    def __lt__(self, other):
        return self.issubset(other) and self != other

    def __eq__(self, other):
        if not isinstance(other, ChangeSet):
            return NotImplemented
        return (self._e_key, self._f_key) == (other._e_key, other._f_key)

    def __hash__(self):
        return hash((self._e_key, self._f_key))

    def insertions(self):
        return sorted(self.e, key=lambda r: r.sort_key)

    def deletions(self):
        return sorted(self.f, key=lambda r: r.sort_key)

    @property
    def sort_key(self):
        return (
            self.size,
            tuple(r.sort_key for r in self.deletions()),
            tuple(r.sort_key for r in self.insertions()),
        )

    def __repr__(self):
        return "<ChangeSet: {0}>".format(self)

    def __str__(self):
        return "E = {{{0}}}, F = {{{1}}}".format(
            " ".join(str(r) for r in self.insertions()),
            " ".join(str(r) for r in self.deletions()),
        )


def extract_changeset(s, up, nm):
    """
    Read the change set off an answer set: deletion atoms name the members
    of ``F``, insertion atoms the members of ``E``, mapped back to original
    rules through ``nm``.

    :raises UnknownUpdateAtom: an update atom without provenance in ``up``
    """
    literals = up.update_atoms if s.contradictory else s.literals
    e, f = set(), set()
    for l in literals:
        if l in up.ua_plus:
            e.add(nm.rule_for(up.provenance[l]))
        elif l in up.ua_minus:
            f.add(nm.rule_for(up.provenance[l]))
        elif l.predicate.startswith(INSERT_PREFIXES + DELETE_PREFIXES):
            raise UnknownUpdateAtom(l)
    return ChangeSet(e, f)


def apply_changeset(k, cs, universe=None):
    """
    ``(K \\ F) u E``. A member of ``K`` that is a variant of a deleted rule
    is removed whole; a member sharing only some ground instances with the
    deletions is replaced by its remaining instances.
    """
    if universe is None:
        universe = constants_of(k, Program(cs.e), Program(cs.f))
    deleted = {r.canonical() for r in cs.f}
    ground_deleted = None
    rules = []
    for r in k:
        if r.canonical() in deleted:
            continue
        if not cs.f:
            rules.append(r)
            continue
        if ground_deleted is None:
            ground_deleted = ground(Program(cs.f), universe).rules
        found = set(instances(r, universe))
        if found & ground_deleted:
            rules.extend(found - ground_deleted)
        else:
            rules.append(r)
    rules.extend(cs.e)
    return Program(rules)


def is_abducible(cs, ap, universe):
    """
    Whether ``E`` is drawn from ``A \\ K`` and ``F`` from ``A n K``, compared
    on ground instances, and ``E`` and ``F`` are disjoint.
    """
    a = ground(ap.a, universe).rules
    k = ground(ap.k, universe).rules
    e = ground(Program(cs.e), universe).rules
    f = ground(Program(cs.f), universe).rules
    return e <= a - k and f <= a & k and not e & f
