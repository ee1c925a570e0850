"""
Answer set computation for extended disjunctive programs.

Consistent answer sets are enumerated by guess and check. A SAT solver
proposes supported models of the ground program (every true literal has a
rule whose body holds and whose other head literals are false, and no
complementary pair is true); each proposal ``S`` is kept iff it is a minimal
model of the reduct ``P^S``. Proposals are excluded with blocking clauses
until none remain.

The contradictory set is never materialized. It is the answer set of ``P``
iff the NAF-free part of ``P`` contains no constraint and has no consistent
model, which only matters when no consistent answer set exists.
"""

import itertools
import logging
import os
import time

from pysat.formula import IDPool
from pysat.solvers import Solver as SatSolver

from aspconf import config
from aspconf.exceptions import EmptyUniverse, InconsistentProgram, NonGroundRule, ResourceCap
from aspconf.program import (
    BodyElem,
    Interpretation,
    Literal,
    Rule,
    constants_of,
    const,
    ground,
    reduct,
    satisfies,
)

logger = logging.getLogger(__name__)


class AnswerSetResult:
    """
    The answer sets of a program in canonical order: consistent sets sorted
    by their literals, the contradictory set last.
    """

    def __init__(self, answer_sets=(), branches=None):
        self.answer_sets = tuple(sorted(set(answer_sets), key=lambda s: s.sort_key))
        self.branches = branches

    def __iter__(self):
        return iter(self.answer_sets)

    def __len__(self):
        return len(self.answer_sets)

    def __getitem__(self, index):
        return self.answer_sets[index]

    def __eq__(self, other):
        if not isinstance(other, AnswerSetResult):
            return NotImplemented
        return self.answer_sets == other.answer_sets

    def __hash__(self):
        return hash(self.answer_sets)

    def __repr__(self):
        return "<AnswerSetResult: {0}>".format(", ".join(str(s) for s in self))

    @property
    def consistent(self):
        return tuple(s for s in self.answer_sets if s.is_consistent)

    @property
    def has_contradictory(self):
        return any(s.contradictory for s in self.answer_sets)


def _as_body_elem(item):
    if isinstance(item, BodyElem):
        return item
    if isinstance(item, Literal):
        return BodyElem(item)
    raise TypeError("expected BodyElem or Literal, got {0!r}".format(item))


class Query:
    """
    A conjunction of literals and NAF-literals. ``free_vars`` lists the
    variables in order of first occurrence in the canonical conjunct order.
    """

    def __init__(self, conjuncts):
        self.conjuncts = frozenset(_as_body_elem(c) for c in conjuncts)
        names = []
        for b in self.sorted_conjuncts():
            for t in b.literal.args:
                if t.is_variable and t.name not in names:
                    names.append(t.name)
        self.free_vars = tuple(names)

    def sorted_conjuncts(self):
        return sorted(self.conjuncts, key=lambda b: b.sort_key)

    @property
    def is_ground(self):
        return not self.free_vars

    def constants(self):
        names = set()
        for b in self.conjuncts:
            names.update(b.literal.constants())
        return frozenset(names)

    def substitute(self, theta):
        return Query(b.substitute(theta) for b in self.conjuncts)

    def satisfied_by(self, s):
        return all(
            (b.literal not in s) if b.naf else (b.literal in s) for b in self.conjuncts
        )

    def __eq__(self, other):
        if not isinstance(other, Query):
            return NotImplemented
        return self.conjuncts == other.conjuncts

    def __hash__(self):
        return hash(self.conjuncts)

    @property
    def sort_key(self):
        return tuple(b.sort_key for b in self.sorted_conjuncts())

    def __repr__(self):
        return "<Query: {0}>".format(self)

    def __str__(self):
        return ", ".join(str(b) for b in self.sorted_conjuncts())


class _GroundProgram:
    """
    A ground program with literals numbered ``1..size`` for the SAT solver.
    """

    def __init__(self, program):
        self.pool = IDPool()
        for l in sorted(program.literals()):
            self.pool.id(l)
        self.size = self.pool.top
        self.rules = [
            (
                tuple(self.pool.id(l) for l in sorted(r.head)),
                tuple(self.pool.id(l) for l in sorted(r.positive_body)),
                tuple(self.pool.id(l) for l in sorted(r.naf_body)),
            )
            for r in program
        ]

    def literal(self, v):
        return self.pool.obj(v)

    def complementary_pairs(self):
        for v in range(1, self.size + 1):
            l = self.literal(v)
            if l.negated and l.complement() in self.pool.obj2id:
                yield v, self.pool.id(l.complement())

    def possible(self):
        """Literals derivable when every NAF-literal is assumed true."""
        found = set()
        changed = True
        while changed:
            changed = False
            for head, pos, _ in self.rules:
                if all(b in found for b in pos) and not all(h in found for h in head):
                    found.update(head)
                    changed = True
        return found


def _least_model(rules):
    model = set()
    changed = True
    while changed:
        changed = False
        for head, pos in rules:
            if head not in model and all(b in model for b in pos):
                model.add(head)
                changed = True
    return model


class Solver:
    """
    Answer set solver with configurable resource caps. Caps left as ``None``
    are read from :mod:`aspconf.config` at call time.
    """

    def __init__(
        self,
        max_ground_rules=None,
        max_ground_literals=None,
        max_branches=None,
        backend=None,
    ):
        self._max_ground_rules = max_ground_rules
        self._max_ground_literals = max_ground_literals
        self._max_branches = max_branches
        self._backend = backend

    @property
    def max_ground_rules(self):
        return self._max_ground_rules or config.MAX_GROUND_RULES

    @property
    def max_ground_literals(self):
        return self._max_ground_literals or config.MAX_GROUND_LITERALS

    @property
    def max_branches(self):
        return self._max_branches or config.MAX_BRANCHES

    @property
    def backend(self):
        return self._backend or config.SAT_BACKEND

    def ground(self, p, universe=None):
        if universe is None:
            universe = constants_of(p)
        return ground(p, universe, limit=self.max_ground_rules)

    def answer_sets(self, p, universe=None):
        """
        All answer sets of ``p`` grounded over ``universe`` (by default the
        constants of ``p``).

        :raises ResourceCap: ground rule, ground literal or branch cap exceeded
        """
        counter = []
        found = list(self.iter_answer_sets(p, universe, counter))
        return AnswerSetResult(found, branches=counter[0] if counter else None)

    def iter_answer_sets(self, p, universe=None, counter=None):
        """
        Yield answer sets as they are found, consistent ones first. Stopping
        the iteration early releases the SAT solver.
        """
        start = time.time()
        g = self.ground(p, universe)
        gp = _GroundProgram(g)
        if gp.size > self.max_ground_literals:
            raise ResourceCap("ground literals", self.max_ground_literals, gp.size)

        count = 0
        branches = 0
        for s, branches in self._consistent_answer_sets(gp):
            count += 1
            yield s
        if counter is not None:
            counter.append(branches)
        if not count and self._contradictory_is_answer_set(gp):
            count += 1
            yield Interpretation.contradictory_set()

        tte = time.time() - start
        if os.environ.get("ASPCONF_SOLVER_DEBUG", False) and tte > float(
            os.environ.get("ASPCONF_SLOW_SOLVES", 0)
        ):
            logger.debug(
                "solve: {0} ground rules, {1} literals, {2} answer sets, "
                "{3} candidates\ntook: {4:.2g}s".format(
                    len(g), gp.size, count, branches, tte
                )
            )

    def _consistent_answer_sets(self, gp):
        possible = gp.possible()
        clauses = [[-v] for v in range(1, gp.size + 1) if v not in possible]
        active = []
        for head, pos, naf in gp.rules:
            if not all(b in possible for b in pos):
                continue
            naf = tuple(x for x in naf if x in possible)
            clause = [-b for b in pos] + list(naf) + list(head)
            if not clause:
                return
            active.append((head, pos, naf))
            clauses.append(clause)
        for v, u in gp.complementary_pairs():
            clauses.append([-v, -u])

        supports = {}
        for index, (head, pos, naf) in enumerate(active):
            for a in head:
                s = gp.pool.id(("support", index, a))
                clauses.extend([-s, b] for b in pos)
                clauses.extend([-s, -x] for x in naf)
                clauses.extend([-s, -o] for o in head if o != a)
                supports.setdefault(a, []).append(s)
        for a in sorted(possible):
            clauses.append([-a] + supports.get(a, []))

        branches = 0
        with SatSolver(name=self.backend, bootstrap_with=clauses) as sat:
            while sat.solve():
                branches += 1
                if branches > self.max_branches:
                    raise ResourceCap("candidate branches", self.max_branches, branches)
                true = frozenset(v for v in sat.get_model() or () if 0 < v <= gp.size)
                if self._is_minimal(active, true):
                    yield Interpretation(gp.literal(v) for v in true), branches
                if not gp.size:
                    break
                sat.add_clause([-v if v in true else v for v in range(1, gp.size + 1)])

    def _is_minimal(self, active, true):
        """Whether ``true`` is a minimal model of the reduct it induces."""
        if not true:
            return True
        horn = []
        clauses = []
        disjunctive = False
        for head, pos, naf in active:
            if any(x in true for x in naf) or not all(b in true for b in pos):
                continue
            heads = [h for h in head if h in true]
            if not heads:
                return False
            disjunctive = disjunctive or len(heads) > 1
            horn.append((heads[0], pos))
            clauses.append([-b for b in pos] + heads)
        if not disjunctive:
            return _least_model(horn) == true
        clauses.append([-v for v in true])
        with SatSolver(name=self.backend, bootstrap_with=clauses) as sat:
            return not sat.solve()

    def _contradictory_is_answer_set(self, gp):
        naf_free = [(head, pos) for head, pos, naf in gp.rules if not naf]
        if any(not head for head, _ in naf_free):
            return False
        clauses = [[-b for b in pos] + list(head) for head, pos in naf_free]
        clauses.extend([-v, -u] for v, u in gp.complementary_pairs())
        if not clauses:
            return False
        with SatSolver(name=self.backend, bootstrap_with=clauses) as sat:
            return not sat.solve()

    def brute_force_answer_sets(self, p, universe=None):
        """
        Answer sets by exhaustive search over all subsets of the head literals
        of ``ground(p)``, following the definitions literally. A literal in no
        head belongs to no minimal model of a reduct, and a consistent model
        stays a model when cut down to the head literals.

        :raises ResourceCap: more than ``config.ORACLE_MAX_LITERALS`` head
            literals
        """
        g = self.ground(p, universe)
        literals = sorted({l for r in g.rules for l in r.head})
        if len(literals) > config.ORACLE_MAX_LITERALS:
            raise ResourceCap("oracle literals", config.ORACLE_MAX_LITERALS, len(literals))

        def is_model(program, s):
            return all(satisfies(s, r) for r in program.rules)

        def consistent_subsets(items, below=None):
            top = len(items) if below is None else below
            for size in range(top + 1):
                for combo in itertools.combinations(items, size):
                    s = Interpretation(combo)
                    if s.is_consistent:
                        yield s

        found = []
        for s in consistent_subsets(literals):
            red = reduct(g, s)
            if not is_model(red, s):
                continue
            members = sorted(s.literals)
            smaller = consistent_subsets(members, below=len(members) - 1)
            if not any(is_model(red, t) for t in smaller):
                found.append(s)

        if not found:
            everything = Interpretation.contradictory_set()
            red = reduct(g, everything)
            if is_model(red, everything) and not any(
                is_model(red, t) for t in consistent_subsets(literals)
            ):
                found.append(everything)
        return AnswerSetResult(found)

    def is_consistent(self, p, universe=None):
        """Whether ``p`` has an answer set other than the contradictory set."""
        for s in self.iter_answer_sets(p, universe):
            return s.is_consistent
        return False

    def entails(self, p, r, universe=None):
        """
        Whether every answer set of ``p`` satisfies the ground rule (or
        contains the ground literal) ``r``.
        """
        if isinstance(r, Literal):
            r = Rule.fact(r)
        if not r.is_ground:
            raise NonGroundRule(r)
        return all(satisfies(s, r) for s in self.iter_answer_sets(p, universe))

    def cred(self, p, q, universe=None):
        """
        Credulous responses: the ground instances of the query ``q`` over the
        universe that hold in some answer set of ``p``.

        :param q: a :class:`Query` or a single literal
        :raises InconsistentProgram: ``p`` has no consistent answer set
        """
        if universe is None:
            universe = constants_of(p)
        models = [s for s in self.iter_answer_sets(p, universe) if s.is_consistent]
        if not models:
            raise InconsistentProgram("credulous responses need a consistent program")
        return responses(q, models, universe)


def responses(q, models, universe):
    """
    The ground instances of ``q`` over ``universe`` that hold in at least one
    of ``models``.

    :raises EmptyUniverse: ``q`` has variables and ``universe`` is empty
    """
    if not isinstance(q, Query):
        q = Query([q])
    if q.is_ground:
        candidates = [q]
    else:
        constants = [const(c) for c in sorted(set(universe))]
        if not constants:
            raise EmptyUniverse("cannot instantiate query {0} over an empty universe".format(q))
        candidates = (
            q.substitute(dict(zip(q.free_vars, values)))
            for values in itertools.product(constants, repeat=len(q.free_vars))
        )
    return frozenset(
        inst for inst in candidates if any(inst.satisfied_by(s) for s in models)
    )


def least_model(p, universe=None):
    """
    The least model of a NAF-free, disjunction-free, constraint-free program,
    computed by iterating the immediate-consequence operator.
    """
    g = ground(p, constants_of(p) if universe is None else universe)
    rules = []
    for r in g:
        if r.naf_body or len(r.head) != 1:
            raise ValueError("least_model needs definite rules, got {0}".format(r))
        rules.append((next(iter(r.head)), r.positive_body))
    return Interpretation(_least_model(rules))


def answer_sets(p, universe=None):
    return Solver().answer_sets(p, universe)


def brute_force_answer_sets(p, universe=None):
    return Solver().brute_force_answer_sets(p, universe)


def is_consistent(p, universe=None):
    return Solver().is_consistent(p, universe)


def entails(p, r, universe=None):
    return Solver().entails(p, r, universe)


def cred(p, q, universe=None):
    return Solver().cred(p, q, universe)
