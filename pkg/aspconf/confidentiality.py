"""
Confidentiality-preserving publishing.

Given a knowledge base ``K``, invariant prior knowledge and a policy, find
every subset-minimal change ``(E, F)`` such that no policy element can be
derived credulously from ``(K \\ F) u E`` together with the prior knowledge.

The search runs as extended abduction: each policy conjunction ``C_i``
becomes a rule ``__obs_neg_i :- C_i``, a collector ``__obs_pos`` holds when
none of them does, and the goal ``:- not __obs_pos`` keeps only answer sets
in which the policy is blocked. Answer sets of the update program with the
goal yield candidate change sets; a candidate is accepted when the
published program blocks the policy in *every* answer set, and the
accepted candidates are reduced to the minimal ones.
"""

import itertools
import logging

from aspconf import config
from aspconf.abduction import (
    AbductiveProgram,
    ChangeSet,
    apply_changeset,
    extract_changeset,
    is_abducible,
    normal_form,
    update_program,
)
from aspconf.exceptions import EmptyPolicy, EmptyUniverse, InconsistentInput, ResourceCap
from aspconf.formula import Formula
from aspconf.program import Atom, Literal, Program, Rule, const, constants_of, overlaps
from aspconf.solver import Query, Solver, responses

logger = logging.getLogger(__name__)

OBS_NEG_PREFIX = "__obs_neg_"
OBS_POS = "__obs_pos"

DELETE_ONLY = "delete_only"
DELETE_INSERT = "delete_insert"
MODES = (DELETE_ONLY, DELETE_INSERT)

GOAL_UNREACHABLE = "goal unreachable"
FILTER_REJECTED = "all candidates failed the skeptical filter"


def _as_formula(element):
    if isinstance(element, Formula):
        return element
    if isinstance(element, Query):
        return Formula(*element.sorted_conjuncts())
    return Formula(*element)


def _conjunction_key(conjuncts):
    # renaming class of a conjunction
    return Rule(frozenset(), frozenset(conjuncts)).canonical().body


def formula_text(formula):
    return " | ".join(str(Query(c)) for c in formula.dnf())


class Policy:
    """
    An ordered list of policy elements, each a :class:`~aspconf.formula.Formula`
    in disjunctive normal form. Plain iterables of literals are accepted as
    conjunctions.
    """

    def __init__(self, elements=()):
        self.elements = [_as_formula(e) for e in elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __bool__(self):
        return bool(self.elements)

    def constants(self):
        names = set()
        for e in self.elements:
            names.update(e.constants())
        return frozenset(names)

    def __repr__(self):
        return "<Policy: {0} elements>".format(len(self.elements))

    def __str__(self):
        return "\n".join(formula_text(e) + "." for e in self.elements)


class ConfidentialitySetup:
    """
    The inputs of a publishing run: knowledge base ``k``, prior knowledge
    ``prior`` and ``policy``. ``extra_constants`` enlarge the universe.
    """

    def __init__(self, k, prior=None, policy=None, extra_constants=()):
        self.k = k
        self.prior = prior if prior is not None else Program()
        self.policy = policy if policy is not None else Policy()
        self.extra_constants = tuple(extra_constants)

    def universe(self):
        """Constants of K, prior and policy plus the extra constants."""
        names = set(constants_of(self.k, self.prior))
        names.update(self.policy.constants())
        names.update(self.extra_constants)
        return tuple(sorted(names))

    def conjunctions(self, universe=None):
        return normalize_policy(self.policy, universe or self.universe())


def normalize_policy(p, universe):
    """
    Split every policy element into its disjuncts. Disjuncts sharing a
    variable are instantiated over ``universe`` first. Conjunctions equal up
    to variable renaming are kept once.

    :return: list of :class:`~aspconf.solver.Query`
    :raises EmptyUniverse: shared variables but no constants
    """
    out, seen = [], set()
    for element in p:
        disjuncts = _as_formula(element).dnf()
        if len(disjuncts) > 1:
            occurrences = {}
            for d in disjuncts:
                for name in set().union(*(b.literal.variables() for b in d)):
                    occurrences[name] = occurrences.get(name, 0) + 1
            shared = sorted(v for v, n in occurrences.items() if n > 1)
            if shared:
                constants = [const(c) for c in sorted(set(universe))]
                if not constants:
                    raise EmptyUniverse(
                        "cannot ground shared policy variables over an empty universe"
                    )
                expanded = []
                for values in itertools.product(constants, repeat=len(shared)):
                    theta = dict(zip(shared, values))
                    for d in disjuncts:
                        expanded.append(frozenset(b.substitute(theta) for b in d))
                disjuncts = expanded
        for d in disjuncts:
            key = _conjunction_key(d)
            if key not in seen:
                seen.add(key)
                out.append(Query(d))
    return out


class PtrProgram:
    """
    The policy transformation: one rule ``neg_obs[i] :- C_i`` per policy
    conjunction, the collector ``pos_obs :- not neg_obs[0], ...`` and the
    ``goal`` constraint ``:- not pos_obs``.
    """

    def __init__(self, rules, neg_obs, pos_obs, goal, conjunctions):
        self.rules = rules
        self.neg_obs = tuple(neg_obs)
        self.pos_obs = pos_obs
        self.goal = goal
        self.conjunctions = tuple(conjunctions)

    @property
    def blocked(self):
        """The constraint ``:- pos_obs``, consistent iff the policy leaks somewhere."""
        return Rule.make(pos=[self.pos_obs])

    def __repr__(self):
        return "<PtrProgram: {0} observations>".format(len(self.neg_obs))


def ptr_cred(policy):
    """
    :param policy: policy conjunctions, see :func:`normalize_policy`
    :raises EmptyPolicy: no conjunction given
    """
    conjunctions = [c if isinstance(c, Query) else Query(c) for c in policy]
    if not conjunctions:
        raise EmptyPolicy("the policy has no elements")
    neg_obs = [
        Literal(Atom("{0}{1}".format(OBS_NEG_PREFIX, i))) for i in range(1, len(conjunctions) + 1)
    ]
    pos_obs = Literal(Atom(OBS_POS))
    rules = [Rule(frozenset([o]), c.conjuncts) for o, c in zip(neg_obs, conjunctions)]
    rules.append(Rule.make([pos_obs], naf=neg_obs))
    goal = Rule.make(naf=[pos_obs])
    return PtrProgram(Program(rules), neg_obs, pos_obs, goal, conjunctions)


def abducibles_deletion(k):
    return k


def _dedupe(literals):
    out, seen = [], set()
    for l in literals:
        key = l.canonical()
        if key not in seen:
            seen.add(key)
            out.append(l)
    return out


def dependency_layers(k, prior, ptr):
    """
    The literals the policy observations depend on, layer by layer. The
    first layer holds the bodies of the observation rules; each next layer
    holds the body literals of every rule whose head shares an instance with
    a literal of the previous layer. Iteration stops when a layer adds
    nothing new. Internal atoms are left out.
    """
    rules = list(k) + list(prior) + list(ptr.rules)
    neg_obs = set(ptr.neg_obs)
    first = [
        b.literal
        for r in ptr.rules
        if r.head & neg_obs
        for b in sorted(r.body, key=lambda b: b.sort_key)
        if not b.literal.is_reserved
    ]
    layers = [_dedupe(first)]
    seen = {l.canonical() for l in layers[0]}
    while True:
        previous = layers[-1]
        layer = _dedupe(
            b.literal
            for r in rules
            if any(overlaps(h, l) for h in r.head for l in previous)
            for b in sorted(r.body, key=lambda b: b.sort_key)
            if not b.literal.is_reserved
        )
        new = {l.canonical() for l in layer} - seen
        if not new:
            return layers
        seen.update(new)
        layers.append(layer)


def dependency_abducibles(k, prior, ptr):
    """
    The dependency literals of the policy, as facts, plus every member of
    ``k`` whose head shares an instance with one of them.
    """
    dependent = _dedupe(l for layer in dependency_layers(k, prior, ptr) for l in layer)
    rules = [Rule.fact(l) for l in dependent]
    rules.extend(
        r for r in k if any(overlaps(h, l) for h in r.head for l in dependent)
    )
    return Program(rules)


def is_skeptical_solution(k, cs, prior, ptr, universe=None, solver=None):
    """
    Whether the policy is blocked in every answer set of the changed
    program: ``(K \\ F) u E``, prior, the transformation and ``:- __obs_pos``
    together are inconsistent.
    """
    solver = solver or Solver()
    changed = apply_changeset(k, cs, universe)
    program = changed.union(prior, ptr.rules, [ptr.blocked])
    if universe is None:
        universe = constants_of(program)
    return not solver.is_consistent(program, universe)


class VerificationReport:
    """
    Outcome of checking a published program: whether it is consistent with
    the prior knowledge and the credulous responses to each policy
    conjunction.
    """

    def __init__(self, consistent, responses):
        self.consistent = consistent
        self.responses = list(responses)

    @property
    def passed(self):
        return self.consistent and not any(found for _, found in self.responses)

    @property
    def leaks(self):
        return [
            (q, sorted(found, key=lambda i: i.sort_key))
            for q, found in self.responses
            if found
        ]

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return "<VerificationReport: {0}>".format("pass" if self.passed else "fail")


def verify(k_pub, prior, policy, universe=None, solver=None):
    """
    Check that no policy conjunction has a credulous response in
    ``k_pub`` together with ``prior``, and that the two are consistent.

    :param policy: a :class:`Policy` or a list of conjunctions
    :param universe: defaults to the constants of ``k_pub``, ``prior`` and
        the policy
    """
    solver = solver or Solver()
    if universe is None:
        names = set(constants_of(k_pub, prior))
        for element in policy:
            names.update(_as_formula(element).constants())
        universe = tuple(sorted(names))
    conjunctions = normalize_policy(policy, universe)
    combined = k_pub | prior
    models = [s for s in solver.iter_answer_sets(combined, universe) if s.is_consistent]
    if not models:
        return VerificationReport(False, [(q, frozenset()) for q in conjunctions])
    return VerificationReport(
        True, [(q, responses(q, models, universe)) for q in conjunctions]
    )


class Transformation:
    """
    The intermediate programs of a publishing run: policy conjunctions, the
    policy transformation, the dependency layers (deletion and insertion
    only), the abducibles, the normal form with its names and the update
    program.
    """

    def __init__(self, setup, mode, granularity=None):
        if mode not in MODES:
            raise ValueError("unknown mode {0!r}".format(mode))
        self.mode = mode
        self.universe = setup.universe()
        self.conjunctions = normalize_policy(setup.policy, self.universe)
        self.ptr = ptr_cred(self.conjunctions)
        self.layers = None
        if mode == DELETE_ONLY:
            self.abducibles = abducibles_deletion(setup.k)
        else:
            self.layers = dependency_layers(setup.k, setup.prior, self.ptr)
            self.abducibles = dependency_abducibles(setup.k, setup.prior, self.ptr)
        self.normal_form, self.names = normal_form(
            AbductiveProgram(setup.k, self.abducibles), granularity
        )
        self.update = update_program(self.normal_form, self.universe)
        self.program = self.update.rules.union(
            setup.prior, self.ptr.rules, [self.ptr.goal]
        )

    def items(self):
        """The insertable and deletable members, as change-set members."""
        e = {self.names.rule_for(self.update.provenance[a]) for a in self.update.ua_plus}
        f = {self.names.rule_for(self.update.provenance[a]) for a in self.update.ua_minus}
        return sorted(e, key=lambda r: r.sort_key), sorted(f, key=lambda r: r.sort_key)


def transform(setup, mode=DELETE_ONLY, granularity=None):
    return Transformation(setup, mode, granularity)


class PublishSolution:
    """
    A change set, the program it publishes, the verification report and the
    update atoms witnessing it.
    """

    def __init__(self, changeset, k_pub, report, witness=()):
        self.changeset = changeset
        self.k_pub = k_pub
        self.report = report
        self.witness = tuple(sorted(witness))

    @property
    def verified(self):
        return self.report.passed

    def __repr__(self):
        return "<PublishSolution: {0}>".format(self.changeset)


class PublishResult(list):
    """
    The solutions of a publishing run in canonical order. When empty,
    ``reason`` tells whether the goal was unreachable or every candidate
    failed the skeptical filter. ``stats`` counts answer sets, distinct
    candidates, candidates dropped for leaving the abducibles, filter
    checks and the checks spent reducing accepted change sets to minimal
    ones.
    """

    def __init__(self, solutions=(), reason=None, stats=None, transformation=None):
        super().__init__(solutions)
        self.reason = reason
        self.stats = dict(stats or {})
        self.transformation = transformation


def publish(setup, mode=DELETE_ONLY, solver=None, granularity=None):
    """
    All minimal confidentiality-preserving change sets of ``setup``.

    Every answer set of the transformed program gives a candidate. Unlike
    :func:`~aspconf.abduction.u_minimal`, candidates with larger witnesses
    are kept: the update program forces ``+L`` for every derived insertable
    ``L``, so inserting ``p(b)`` next to ``r :- p(b)`` is only witnessed
    together with ``+r``. Each candidate passing the filter is reduced to its
    minimal passing subsets instead.

    :param mode: ``delete_only`` or ``delete_insert``
    :raises InconsistentInput: K together with prior is inconsistent
    :raises EmptyPolicy: the policy has no elements
    """
    solver = solver or Solver()
    universe = setup.universe()
    k, prior = setup.k, setup.prior
    if not solver.is_consistent(k | prior, universe):
        raise InconsistentInput("the knowledge base is inconsistent with the prior knowledge")

    t = transform(setup, mode, granularity)
    update = t.update
    ap = AbductiveProgram(k, t.abducibles)

    candidates = {}
    count = 0
    not_abducible = 0
    for s in solver.iter_answer_sets(t.program, universe):
        if s.contradictory:
            continue
        count += 1
        witness = frozenset(l for l in s.literals if l in update.update_atoms)
        if witness in candidates:
            continue
        cs = extract_changeset(s, update, t.names)
        if not is_abducible(cs, ap, universe):
            logger.error("ignoring change set outside the abducibles: {0}".format(cs))
            not_abducible += 1
            continue
        candidates[witness] = cs
    stats = {
        "answer_sets": count,
        "candidates": len(candidates),
        "not_abducible": not_abducible,
        "filter_checks": 0,
        "reduction_checks": 0,
    }
    logger.info("publish: {0} answer sets, {1} candidates".format(count, len(candidates)))
    if not candidates:
        return PublishResult([], GOAL_UNREACHABLE, stats, t)

    checked = {}

    def passes(cs, counter="filter_checks"):
        if cs not in checked:
            stats[counter] += 1
            checked[cs] = is_skeptical_solution(
                k, cs, prior, t.ptr, universe, solver
            ) and solver.is_consistent(apply_changeset(k, cs, universe) | prior, universe)
        return checked[cs]

    # no U-minimal selection: a minimal change set may only be witnessed
    # inside a larger witness, so every passing candidate is reduced
    accepted = [
        (witness, cs)
        for witness, cs in sorted(
            candidates.items(), key=lambda kv: (len(kv[0]), kv[1].sort_key)
        )
        if passes(cs)
    ]

    reduced = [
        (witness, sub)
        for witness, cs in accepted
        for sub in _minimal_subsets(cs, lambda c: passes(c, "reduction_checks"))
    ]

    final = {}
    for witness, cs in sorted(reduced, key=lambda wc: wc[1].sort_key):
        if cs in final or any(other < cs for other in final):
            continue
        final[cs] = witness

    solutions = []
    for cs, witness in final.items():
        k_pub = apply_changeset(k, cs, universe)
        report = verify(k_pub, prior, t.conjunctions, universe, solver)
        if not report.passed:
            logger.warning("dropping unverified candidate {0}".format(cs))
            continue
        members = {r.canonical() for r in cs.e | cs.f}
        witness = [
            a
            for a in witness
            if t.names.rule_for(update.provenance[a]).canonical() in members
        ]
        solutions.append(PublishSolution(cs, k_pub, report, witness))
    logger.info(
        "publish: {0} solutions after {1} filter and {2} reduction checks".format(
            len(solutions), stats["filter_checks"], stats["reduction_checks"]
        )
    )
    return PublishResult(solutions, None if solutions else FILTER_REJECTED, stats, t)


def _members(cs):
    return [("e", r) for r in cs.insertions()] + [("f", r) for r in cs.deletions()]


def _changeset(members):
    return ChangeSet(
        [r for kind, r in members if kind == "e"], [r for kind, r in members if kind == "f"]
    )


def _minimal_subsets(cs, passes):
    """
    The ⊆-minimal sub-change-sets of ``cs`` that pass, smallest first. Not
    every passing sub-change-set has an answer set of the update program
    behind it. Above ``config.AUDIT_MAX_SUBSETS`` only redundant insertions
    are dropped.
    """
    members = _members(cs)
    if 2 ** len(members) > config.AUDIT_MAX_SUBSETS:
        logger.warning("change set too large to reduce exactly: {0}".format(cs))
        return [_drop_redundant_insertions(cs, passes)]
    found = []
    for size in range(len(members)):
        for combo in itertools.combinations(members, size):
            sub = _changeset(combo)
            if any(m.issubset(sub) for m in found):
                continue
            if passes(sub):
                found.append(sub)
    return found or [cs]


def _drop_redundant_insertions(cs, passes):
    for rule in cs.insertions():
        trial = ChangeSet(cs.e - {rule}, cs.f)
        if passes(trial):
            cs = trial
    return cs


def minimality_audit(setup, solution, universe=None, solver=None):
    """
    Brute-force check that no proper sub-change-set of ``solution`` already
    preserves confidentiality.

    :raises ResourceCap: more than ``config.AUDIT_MAX_SUBSETS`` sub-change-sets
    """
    cs = solution.changeset
    members = _members(cs)
    if 2 ** len(members) > config.AUDIT_MAX_SUBSETS:
        raise ResourceCap("audit sub-change-sets", config.AUDIT_MAX_SUBSETS, 2 ** len(members))
    universe = universe or setup.universe()
    conjunctions = setup.conjunctions(universe)
    for size in range(len(members)):
        for combo in itertools.combinations(members, size):
            sub = _changeset(combo)
            k_pub = apply_changeset(setup.k, sub, universe)
            if verify(k_pub, setup.prior, conjunctions, universe, solver).passed:
                return False
    return True


def brute_force_publish(setup, mode=DELETE_ONLY, universe=None, solver=None, granularity=None):
    """
    The minimal verified change sets over the mode's insertable and deletable
    members, by exhaustive search in order of size.

    :raises ResourceCap: more than ``config.ORACLE_MAX_ABDUCIBLES`` members
    """
    t = transform(setup, mode, granularity)
    universe = universe or t.universe
    inserts, deletes = t.items()
    members = [("e", r) for r in inserts] + [("f", r) for r in deletes]
    if len(members) > config.ORACLE_MAX_ABDUCIBLES:
        raise ResourceCap("oracle abducibles", config.ORACLE_MAX_ABDUCIBLES, len(members))
    found = []
    for size in range(len(members) + 1):
        for combo in itertools.combinations(members, size):
            cs = _changeset(combo)
            if any(m.issubset(cs) for m in found):
                continue
            k_pub = apply_changeset(setup.k, cs, universe)
            if verify(k_pub, setup.prior, t.conjunctions, universe, solver).passed:
                found.append(cs)
    return sorted(found, key=lambda cs: cs.sort_key)
