import os

from hypothesis import settings
from hypothesis import strategies as st

from aspconf import (
    BodyElem,
    Literal,
    Policy,
    Program,
    Rule,
    SourceProgram,
    parse_policy,
    parse_program,
)

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")

CONSTANTS = ("a", "b")
PREDICATES = {"p": 1, "q": 1, "r": 0}


def fixture_path(name):
    return os.path.join(FIXTURES, name)


def load_program(name, origin="kb"):
    return parse_program(SourceProgram.from_path(fixture_path(name), origin))


def load_policy(name):
    return parse_policy(SourceProgram.from_path(fixture_path(name), "policy"))


def scaled(n):
    """``n`` examples, times ten under ``--exhaustive``."""
    return n * max(1, settings.default.max_examples // 100)


@st.composite
def literals(draw, variables=True, negation=True):
    """Literals over ``PREDICATES`` and ``CONSTANTS``, optionally with ``X``."""
    predicate = draw(st.sampled_from(sorted(PREDICATES)))
    terms = st.sampled_from(CONSTANTS + (("X",) if variables else ()))
    args = [draw(terms) for _ in range(PREDICATES[predicate])]
    negated = draw(st.booleans()) if negation else False
    return Literal.of(predicate, *args, negated=negated)


@st.composite
def rules(draw, variables=True, negation=True, naf=True, disjunction=True, constraints=True):
    lit = literals(variables=variables, negation=negation)
    min_head = 0 if constraints else 1
    head = draw(st.lists(lit, min_size=min_head, max_size=2 if disjunction else 1))
    pos = draw(st.lists(lit, max_size=2))
    nafs = draw(st.lists(lit, max_size=2)) if naf else []
    if not head and not pos and not nafs:
        head = [draw(lit)]
    return Rule.make(head, pos, nafs)


def programs(max_rules=5, min_rules=1, **kwargs):
    return st.lists(rules(**kwargs), min_size=min_rules, max_size=max_rules).map(Program)


def horn_programs(max_rules=5, min_rules=1):
    """NAF-free, disjunction-free programs without classical negation or constraints."""
    return programs(
        max_rules,
        min_rules,
        negation=False,
        naf=False,
        disjunction=False,
        constraints=False,
    )


@st.composite
def conjunctions(draw, naf=True, negation=True):
    lit = literals(negation=negation)
    elems = [BodyElem(l) for l in draw(st.lists(lit, min_size=1, max_size=2))]
    if naf:
        elems.extend(BodyElem(l, True) for l in draw(st.lists(lit, max_size=1)))
    return elems


def policies(max_elements=2, naf=True, negation=True):
    return st.lists(
        conjunctions(naf=naf, negation=negation), min_size=1, max_size=max_elements
    ).map(Policy)
