from pytest import raises

from aspconf import (
    Formula,
    Literal,
    Program,
    Query,
    Rule,
    SourceProgram,
    parse_policy,
    parse_program,
    parse_query,
    serialize,
)
from aspconf.exceptions import ArityConflict, InternalAtomLeak, ParseError, ReservedPredicate
from aspconf.program import BodyElem

from .utils import fixture_path, load_program


def lit(predicate, *args, negated=False):
    return Literal.of(predicate, *args, negated=negated)


def test_parse_disjunctive_rule():
    p = parse_program("ill(X,aids) ; ill(X,flu) :- treat(X,medi1), not treat(X,medi2).")
    assert list(p) == [
        Rule.make(
            [lit("ill", "X", "aids"), lit("ill", "X", "flu")],
            pos=[lit("treat", "X", "medi1")],
            naf=[lit("treat", "X", "medi2")],
        )
    ]


def test_parse_negative_fact():
    assert list(parse_program("-ill(pete,flu).")) == [
        Rule.fact(lit("ill", "pete", "flu", negated=True))
    ]


def test_parse_constraint_and_propositional_atoms():
    p = parse_program(":- not goal, p.\nq ; r.")
    assert Rule.make(pos=[lit("p")], naf=[lit("goal")]) in p
    assert Rule.make([lit("q"), lit("r")]) in p


def test_parse_comments_and_numbers():
    p = parse_program("% a comment\nage(pete,42). % trailing\n")
    assert p.facts() == {lit("age", "pete", "42")}


def test_parse_empty_program():
    assert parse_program("") == Program()
    assert parse_program("% nothing here\n") == Program()


def test_parse_source_program_from_path():
    src = SourceProgram.from_path(fixture_path("k.lp"))
    assert src.origin == "kb"
    assert len(parse_program(src)) == 3


def test_source_program_origin_is_checked():
    with raises(ValueError):
        SourceProgram("p.", "database")


def test_syntax_error_has_position():
    with raises(ParseError) as e:
        parse_program("p(a).\nq(b) :- .\n")
    assert e.value.line == 2
    assert e.value.column is not None
    assert "line 2" in str(e.value)


def test_missing_dot_is_unexpected_end():
    with raises(ParseError) as e:
        parse_program("p(a)")
    assert "end of input" in str(e.value)


def test_unexpected_character():
    with raises(ParseError) as e:
        parse_program("p(a) & q.")
    assert e.value.token == "&"


def test_reserved_predicate_rejected():
    with raises(ReservedPredicate) as e:
        parse_program("__obs_pos :- p.")
    assert e.value.line == 1
    assert isinstance(e.value, ParseError)


def test_reserved_predicate_allowed_on_request():
    p = parse_program("__n_1.\np :- __n_1.", allow_reserved=True)
    assert lit("__n_1") in p.facts()


def test_arity_conflict():
    with raises(ArityConflict) as e:
        parse_program("p(a).\nq :- p(a,b).")
    assert e.value.line == 2
    assert e.value.token == "p"


def test_parse_policy():
    policy = parse_policy(SourceProgram("ill(X,aids).\n-able_to_work(X).", "policy"))
    assert len(policy) == 2
    assert [e.dnf() for e in policy] == [
        [frozenset([BodyElem(lit("ill", "X", "aids"))])],
        [frozenset([BodyElem(lit("able_to_work", "X", negated=True))])],
    ]


def test_parse_policy_disjunction():
    policy = parse_policy("p(X), not q(X) | r.")
    (element,) = policy
    assert element.dnf() == [
        frozenset([BodyElem(lit("p", "X")), BodyElem(lit("q", "X"), True)]),
        frozenset([BodyElem(lit("r"))]),
    ]


def test_policy_elements_are_combined_formulas():
    (element,) = parse_policy("p(X), not q(X) | r | s.")
    expected = Formula(lit("p", "X"), BodyElem(lit("q", "X"), True)) | Formula(lit("r"))
    assert element == expected | Formula(lit("s"))
    assert element.connector == Formula.OR
    assert len(element) == 3


def test_policy_rejects_rules():
    with raises(ParseError) as e:
        parse_policy("p :- q.")
    assert "not allowed in policy" in str(e.value)


def test_parse_query():
    assert parse_query("ill(X,aids)") == Query([lit("ill", "X", "aids")])
    assert parse_query("treat(X,medi1), not treat(X,medi2).") == Query(
        [BodyElem(lit("treat", "X", "medi1")), BodyElem(lit("treat", "X", "medi2"), True)]
    )
    with raises(ParseError):
        parse_query("p :- q")


def test_serialize_canonical_order(kb):
    assert serialize(kb) == (
        "ill(mary,aids).\n"
        "treat(pete,medi1).\n"
        "ill(X,aids) ; ill(X,flu) :- treat(X,medi1), not treat(X,medi2).\n"
    )


def test_serialize_round_trip_on_fixtures():
    for name in ("k.lp", "k_prime.lp", "prior.lp", "choice.lp", "inconsistent.lp"):
        p = load_program(name)
        text = serialize(p)
        assert parse_program(text) == p
        assert serialize(parse_program(text)) == text


def test_serialize_publishable_rejects_internal_atoms():
    p = parse_program("__n_1.\np :- __n_1.", allow_reserved=True)
    assert "__n_1." in serialize(p)
    with raises(InternalAtomLeak) as e:
        serialize(p, publishable=True)
    assert e.value.literal == lit("__n_1")
